//! Independent ground truth (Rees ideal by elimination, fiber ideal by
//! contraction, `G_d` via Fitting heights) and the check suite comparing it
//! with the constructed candidates.

mod checks;
mod closed_form;
mod ground_truth;

pub use closed_form::{fiber_hilbert_closed_form, ClosedFormSeries};
pub use ground_truth::{fiber_ideal, rees_by_elimination, rees_ideal_of};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::blowup::{BlowupError, BlowupInstance};
use crate::groebner::{Budget, GbError, IdealHandle};
use crate::polyring::Polynomial;

pub const REPORT_FORMAT: u32 = 1;
pub const DEFAULT_RESIDUAL_TRIALS: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Timeout,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Timeout => "timeout",
            Status::Skipped => "skipped",
        })
    }
}

/// Acceptance tier of a parameter pair; `Required < Extended`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Required,
    Extended,
}

impl Tier {
    /// `(3,5)`, `(4,5)`, `(5,5)` are required; everything else is extended.
    pub fn of(d: usize, n: usize) -> Tier {
        match (d, n) {
            (3, 5) | (4, 5) | (5, 5) => Tier::Required,
            _ => Tier::Extended,
        }
    }

    /// Parameter pairs swept by default at this tier.
    pub fn grid(self) -> Vec<(usize, usize)> {
        let mut g = vec![(3, 5), (4, 5), (5, 5)];
        if self == Tier::Extended {
            g.extend([(3, 7), (4, 7)]);
        }
        g
    }
}

impl FromStr for Tier {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "required" => Ok(Tier::Required),
            "extended" => Ok(Tier::Extended),
            other => Err(format!("unknown tier `{other}` (expected required or extended)")),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Required => "required",
            Tier::Extended => "extended",
        })
    }
}

/// Selectable groups of checks, listed in execution order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckGroup {
    Gd,
    Content,
    Main,
    Ladder,
    Height,
    Multiplicity,
    Hilbert,
    Annihilator,
    Radical,
    Residual,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 10] = [
        CheckGroup::Gd,
        CheckGroup::Content,
        CheckGroup::Main,
        CheckGroup::Ladder,
        CheckGroup::Height,
        CheckGroup::Multiplicity,
        CheckGroup::Hilbert,
        CheckGroup::Annihilator,
        CheckGroup::Radical,
        CheckGroup::Residual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckGroup::Gd => "gd",
            CheckGroup::Content => "content",
            CheckGroup::Main => "main",
            CheckGroup::Ladder => "ladder",
            CheckGroup::Height => "height",
            CheckGroup::Multiplicity => "multiplicity",
            CheckGroup::Hilbert => "hilbert",
            CheckGroup::Annihilator => "annihilator",
            CheckGroup::Radical => "radical",
            CheckGroup::Residual => "residual",
        }
    }
}

impl FromStr for CheckGroup {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        CheckGroup::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`; known: {}", CheckGroup::ALL.map(|g| g.name()).join(", ")))
    }
}

impl fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub required: bool,
    pub certificate: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub format: u32,
    pub instance: String,
    pub d: usize,
    pub n: usize,
    pub char: u32,
    pub seed: u64,
    pub tier: Tier,
    pub checks: Vec<CheckRecord>,
}

impl VerificationReport {
    /// True iff every required, non-skipped record passed.
    pub fn required_ok(&self) -> bool {
        self.checks.iter().all(|c| !c.required || matches!(c.status, Status::Pass | Status::Skipped))
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    /// Aligned plain-text table, one line per record.
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        let mut out = format!("instance {} (tier {})\n", self.instance, self.tier);
        out.push_str(&format!("{:<width$}  {:<7}  {:<8}  detail\n", "check", "status", "required"));
        for c in &self.checks {
            out.push_str(&format!(
                "{:<width$}  {:<7}  {:<8}  {}\n",
                c.name,
                c.status.to_string(),
                if c.required { "yes" } else { "no" },
                summary(&c.certificate)
            ));
        }
        out
    }
}

fn summary(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 100 {
        format!("{}…", s.chars().take(99).collect::<String>())
    } else {
        s
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub checks: BTreeSet<CheckGroup>,
    pub budget: Budget,
    pub tier: Tier,
    pub residual_trials: u32,
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            checks: CheckGroup::ALL.into_iter().collect(),
            budget: Budget::from_env(),
            tier: Tier::Required,
            residual_trials: DEFAULT_RESIDUAL_TRIALS,
            timings: false,
        }
    }
}

impl VerifyConfig {
    pub fn with_checks(mut self, checks: impl IntoIterator<Item = CheckGroup>) -> Self {
        self.checks = checks.into_iter().collect();
        self
    }
}

/// Outcome of one check body before it is wrapped into a record.
pub(crate) struct Outcome {
    status: Status,
    certificate: Value,
}

impl Outcome {
    fn new(pass: bool, certificate: Value) -> Self {
        Self { status: if pass { Status::Pass } else { Status::Fail }, certificate }
    }

    fn skipped(reason: &str) -> Self {
        Self { status: Status::Skipped, certificate: json!({ "reason": reason }) }
    }
}

/// Result of comparing two ideals: `None` when equal, otherwise a witness.
pub(crate) fn inequality_witness(lhs: &IdealHandle, rhs: &IdealHandle) -> Result<Option<Value>, GbError> {
    if let Some(w) = witness_not_contained(rhs, lhs)? {
        return Ok(Some(json!({ "lhs_not_in_rhs": w })));
    }
    if let Some(w) = witness_not_contained(lhs, rhs)? {
        return Ok(Some(json!({ "rhs_not_in_lhs": w })));
    }
    Ok(None)
}

/// A generator of `sub` outside `sup`, with its nonzero normal form.
pub(crate) fn witness_not_contained(sup: &IdealHandle, sub: &IdealHandle) -> Result<Option<Value>, GbError> {
    Ok(match sup.first_non_member(sub)? {
        Some(g) => {
            let nf = sup.normal_form(g, Default::default())?;
            Some(json!({ "element": g.to_string(), "normal_form": nf.to_string() }))
        }
        None => None,
    })
}

/// Runs the selected checks on one instance, caching the shared ground truth.
pub struct Verifier<'a> {
    inst: &'a BlowupInstance,
    config: VerifyConfig,
    pub(crate) l: IdealHandle,
    pub(crate) id_b: IdealHandle,
    pub(crate) cphi: IdealHandle,
    pub(crate) candidate_rees: IdealHandle,
    pub(crate) candidate_fiber: IdealHandle,
    rees: OnceLock<Result<IdealHandle, GbError>>,
    fiber: OnceLock<Result<IdealHandle, GbError>>,
    l_colon_m: OnceLock<Result<IdealHandle, GbError>>,
}

impl<'a> Verifier<'a> {
    pub fn new(inst: &'a BlowupInstance, config: VerifyConfig) -> Self {
        let b = config.budget;
        Self {
            inst,
            l: inst.symmetric_ideal().clone().with_budget(b),
            id_b: inst.minors_ideal().clone().with_budget(b),
            cphi: inst.content().clone().with_budget(b),
            candidate_rees: inst.candidate_rees().clone().with_budget(b),
            candidate_fiber: inst.candidate_fiber().clone().with_budget(b),
            config,
            rees: OnceLock::new(),
            fiber: OnceLock::new(),
            l_colon_m: OnceLock::new(),
        }
    }

    pub fn instance(&self) -> &BlowupInstance {
        self.inst
    }

    pub fn budget(&self) -> Budget {
        self.config.budget
    }

    /// `𝒥` by elimination.
    pub fn rees(&self) -> Result<IdealHandle, GbError> {
        self.rees.get_or_init(|| rees_by_elimination(self.inst, self.config.budget)).clone()
    }

    /// `I(X)` from `𝒥`.
    pub fn fiber(&self) -> Result<IdealHandle, GbError> {
        self.fiber.get_or_init(|| fiber_ideal(&self.rees()?, self.inst.rings())).clone()
    }

    /// `ℒ :_S 𝔪`.
    pub(crate) fn l_colon_m(&self) -> Result<IdealHandle, GbError> {
        self.l_colon_m
            .get_or_init(|| {
                let rings = self.inst.rings();
                let m = IdealHandle::new(&rings.s, (0..self.inst.d()).map(|j| Polynomial::variable(&rings.s, j)).collect())?;
                self.l.quotient(&m)
            })
            .clone()
    }

    pub(crate) fn t_ideal_s(&self) -> IdealHandle {
        let rings = self.inst.rings();
        let d = self.inst.d();
        IdealHandle::new(&rings.s, (0..self.inst.n()).map(|i| Polynomial::variable(&rings.s, d + i)).collect())
            .expect("variables of S")
            .with_budget(self.config.budget)
    }

    pub(crate) fn t_ideal_t(&self) -> IdealHandle {
        let rings = self.inst.rings();
        IdealHandle::new(&rings.t, (0..self.inst.n()).map(|i| Polynomial::variable(&rings.t, i)).collect())
            .expect("variables of T")
            .with_budget(self.config.budget)
    }

    /// Runs every selected group in dependency order and returns the report
    /// with records sorted by name.
    pub fn run(&self) -> VerificationReport {
        let pres = self.inst.presentation();
        let required = Tier::of(pres.d(), pres.n()) <= self.config.tier;
        let mut records: Vec<CheckRecord> = Vec::new();
        let mut push = |name: String, outcome: Outcome, ms: Option<u64>| {
            records.push(CheckRecord {
                name,
                status: outcome.status,
                required,
                certificate: outcome.certificate,
                wall_ms: if self.config.timings { ms } else { None },
            });
        };

        let started = Instant::now();
        let gd = self.check_gd();
        let gd_ms = started.elapsed().as_millis() as u64;
        let gd_passed = gd.status == Status::Pass;
        if self.config.checks.contains(&CheckGroup::Gd) {
            push("gd".into(), gd, Some(gd_ms));
        }

        for group in CheckGroup::ALL.into_iter().filter(|g| *g != CheckGroup::Gd) {
            if !self.config.checks.contains(&group) {
                continue;
            }
            let started = Instant::now();
            let results: Vec<(String, Outcome)> = if group != CheckGroup::Content && !gd_passed {
                self.record_names(group).into_iter().map(|n| (n, Outcome::skipped("G_d not verified"))).collect()
            } else {
                self.run_group(group)
            };
            let ms = started.elapsed().as_millis() as u64;
            for (name, outcome) in results {
                push(name, outcome, Some(ms));
            }
        }
        records.sort_by(|a, b| a.name.cmp(&b.name));
        VerificationReport {
            format: REPORT_FORMAT,
            instance: pres.id(),
            d: pres.d(),
            n: pres.n(),
            char: pres.characteristic(),
            seed: pres.seed(),
            tier: Tier::of(pres.d(), pres.n()),
            checks: records,
        }
    }

    fn record_names(&self, group: CheckGroup) -> Vec<String> {
        match group {
            CheckGroup::Main => ["main.a", "main.b", "main.c", "main.d"].map(String::from).to_vec(),
            CheckGroup::Ladder => ["ladder.fiber", "ladder.fiber_type", "ladder.rees"].map(String::from).to_vec(),
            CheckGroup::Radical => ["radical.fiber", "radical.rees"].map(String::from).to_vec(),
            g => vec![g.name().to_string()],
        }
    }

    fn run_group(&self, group: CheckGroup) -> Vec<(String, Outcome)> {
        let wrap = |r: Result<Outcome, BlowupError>| match r {
            Ok(o) => o,
            Err(e) if e.is_timeout() => Outcome { status: Status::Timeout, certificate: json!({ "error": e.to_string() }) },
            Err(e) => Outcome { status: Status::Fail, certificate: json!({ "error": e.to_string() }) },
        };
        match group {
            CheckGroup::Gd => vec![("gd".into(), self.check_gd())],
            CheckGroup::Content => vec![("content".into(), wrap(self.check_content()))],
            CheckGroup::Main => self
                .check_main_equations()
                .into_iter()
                .map(|(n, r)| (n, wrap(r)))
                .collect(),
            CheckGroup::Ladder => self.check_ladder().into_iter().map(|(n, r)| (n, wrap(r))).collect(),
            CheckGroup::Height => vec![("height".into(), wrap(self.check_height()))],
            CheckGroup::Multiplicity => vec![("multiplicity".into(), wrap(self.check_multiplicity()))],
            CheckGroup::Hilbert => vec![("hilbert".into(), wrap(self.check_hilbert_series()))],
            CheckGroup::Annihilator => vec![("annihilator".into(), wrap(self.check_annihilator()))],
            CheckGroup::Radical => self.check_expected_radical().into_iter().map(|(n, r)| (n, wrap(r))).collect(),
            CheckGroup::Residual => {
                vec![("residual".into(), wrap(self.check_residual_multiplicity(self.config.residual_trials)))]
            }
        }
    }
}

/// Convenience: verify one instance with `config`.
pub fn verify_instance(inst: &BlowupInstance, config: VerifyConfig) -> VerificationReport {
    Verifier::new(inst, config).run()
}
