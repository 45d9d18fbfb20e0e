use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{fiber_hilbert_closed_form, inequality_witness, witness_not_contained, Outcome, Status, Verifier};
use crate::blowup::{
    content_ideal, expected_fiber_multiplicity, fitting_heights, monomial_count_restatement, monomials_of_degree,
    BlowupError, ContentMethod,
};
use crate::groebner::{GbError, IdealHandle};
use crate::polyring::{Monomial, Polynomial};

/// Stream offset separating the residual-intersection draws from instance draws.
const RESIDUAL_STREAM: u64 = 1 << 32;
/// Powers tried before falling back to the Rabinowitsch test.
const RADICAL_POWERS: u32 = 4;

pub(crate) type CheckResult = Result<Outcome, BlowupError>;

fn lift(r: Result<IdealHandle, GbError>) -> Result<IdealHandle, BlowupError> {
    r.map_err(BlowupError::from)
}

fn equality(lhs: &IdealHandle, rhs: &IdealHandle, mut cert: Value) -> CheckResult {
    let witness = inequality_witness(lhs, rhs)?;
    cert["lhs_generators"] = json!(lhs.generators().len());
    cert["rhs_generators"] = json!(rhs.generators().len());
    let pass = witness.is_none();
    if let Some(w) = witness {
        cert["witness"] = w;
    }
    Ok(Outcome::new(pass, cert))
}

/// Asserts `chain[0] ⊆ chain[1] ⊆ ...`, reporting the first broken link.
fn chain(links: &[(&str, &IdealHandle)]) -> CheckResult {
    for pair in links.windows(2) {
        let (small_name, small) = pair[0];
        let (big_name, big) = pair[1];
        if let Some(w) = witness_not_contained(big, small)? {
            return Ok(Outcome::new(false, json!({ "broken": format!("{small_name} ⊆ {big_name}"), "witness": w })));
        }
    }
    let names: Vec<&str> = links.iter().map(|(n, _)| *n).collect();
    Ok(Outcome::new(true, json!({ "chain": names.join(" ⊆ ") })))
}

/// How `f ∈ √I` was certified, if it was.
fn radical_membership(ideal: &IdealHandle, f: &Polynomial) -> Result<Option<&'static str>, GbError> {
    if ideal.contains(f)? {
        return Ok(Some("member"));
    }
    let mut power = f.clone();
    for _ in 1..RADICAL_POWERS {
        power = &power * f;
        if ideal.contains(&power)? {
            return Ok(Some("power"));
        }
    }
    Ok(if ideal.radical_contains(f)? { Some("rabinowitsch") } else { None })
}

fn radical_outcome(radical_of: &IdealHandle, target: &IdealHandle) -> CheckResult {
    let mut counts = json!({ "member": 0, "power": 0, "rabinowitsch": 0 });
    for f in target.generators() {
        match radical_membership(radical_of, f)? {
            Some(how) => counts[how] = json!(counts[how].as_u64().unwrap_or(0) + 1),
            None => {
                return Ok(Outcome::new(false, json!({ "not_in_radical": f.to_string() })));
            }
        }
    }
    if let Some(w) = witness_not_contained(target, radical_of)? {
        return Ok(Outcome::new(false, json!({ "not_contained": w })));
    }
    Ok(Outcome::new(true, json!({ "certified_by": counts })))
}

impl Verifier<'_> {
    /// `ht I_{n-i}(φ) >= i + 1` for `1 <= i <= d - 1`.
    pub(crate) fn check_gd(&self) -> Outcome {
        match fitting_heights(self.instance().presentation()) {
            Ok(heights) => {
                let violated: Vec<usize> = heights.iter().filter(|h| !h.holds()).map(|h| h.i).collect();
                let mut cert = json!({ "heights": heights });
                if !violated.is_empty() {
                    cert["violated"] = json!(violated);
                }
                Outcome::new(violated.is_empty(), cert)
            }
            Err(e) => Outcome {
                status: if e.is_timeout() { Status::Timeout } else { Status::Fail },
                certificate: json!({ "error": e.to_string() }),
            },
        }
    }

    /// Records `main.a` .. `main.d`.
    pub(crate) fn check_main_equations(&self) -> Vec<(String, CheckResult)> {
        let c_zero = self.cphi.is_zero();
        let a = (|| {
            let rees = lift(self.rees())?;
            let mut out = equality(&rees, &self.candidate_rees, json!({ "c_phi_zero": c_zero }))?;
            out.certificate["expected_form"] = json!(c_zero && out.status == Status::Pass);
            Ok(out)
        })();
        let b = (|| {
            let fiber = lift(self.fiber())?;
            equality(&fiber, &self.candidate_fiber, json!({ "fiber_zero": fiber.is_zero() }))
        })();
        let c = (|| {
            let rees = lift(self.rees())?;
            let colon = lift(self.l_colon_m())?.quotient(&self.t_ideal_s())?;
            equality(&rees, &colon, json!({ "rhs": "L : (x)(T)" }))
        })();
        let d = (|| {
            let fiber = lift(self.fiber())?;
            let colon = self.id_b.quotient(&self.t_ideal_t())?;
            equality(&fiber, &colon, json!({ "rhs": "I_d(B) : (T)" }))
        })();
        vec![("main.a".into(), a), ("main.b".into(), b), ("main.c".into(), c), ("main.d".into(), d)]
    }

    /// Containment chains and the fiber-type identity.
    pub(crate) fn check_ladder(&self) -> Vec<(String, CheckResult)> {
        let rings = self.instance().rings();
        let rees = (|| {
            let j = lift(self.rees())?;
            let lm = lift(self.l_colon_m())?;
            let l_plus = self.l.sum(&self.id_b.map_to_ring(&rings.s)?)?;
            chain(&[("L", &self.l), ("L + I_d(B)S", &l_plus), ("L : m", &lm), ("J", &j)])
        })();
        let fiber = (|| {
            let x = lift(self.fiber())?;
            let colon = self.id_b.quotient(&self.t_ideal_t())?;
            chain(&[("I_d(B) + C", &self.candidate_fiber), ("I_d(B) : (T)", &colon), ("I(X)", &x)])
        })();
        let fiber_type = (|| {
            let j = lift(self.rees())?;
            let x = lift(self.fiber())?;
            let rhs = self.l.sum(&x.map_to_ring(&rings.s)?)?;
            equality(&j, &rhs, json!({ "rhs": "L + I(X)S" }))
        })();
        vec![("ladder.fiber".into(), fiber), ("ladder.fiber_type".into(), fiber_type), ("ladder.rees".into(), rees)]
    }

    /// `ht I_d(B) = n - d`.
    pub(crate) fn check_height(&self) -> CheckResult {
        let (d, n) = (self.instance().d(), self.instance().n());
        let height = if self.id_b.is_zero() { 0 } else { self.id_b.dim_height()?.1 };
        let expected = n.saturating_sub(d);
        Ok(Outcome::new(height == expected, json!({ "height": height, "expected": expected })))
    }

    /// `dim A = d` and `e(A)` equal to the binomial sum and its monomial count.
    pub(crate) fn check_multiplicity(&self) -> CheckResult {
        let (d, n) = (self.instance().d(), self.instance().n());
        let fiber = lift(self.fiber())?;
        let h = fiber.hilbert()?;
        let expected = expected_fiber_multiplicity(d, n);
        let restated = monomial_count_restatement(d, n);
        let pass = h.dim == d && h.multiplicity as i128 == expected && restated == expected;
        Ok(Outcome::new(
            pass,
            json!({
                "computed": h.multiplicity,
                "expected": expected,
                "monomial_count": restated,
                "dim": h.dim,
                "numerator": h.numerator,
            }),
        ))
    }

    /// GB Hilbert series of `T/(I_d(B) + C(φ))` against the closed form to degree `2d`.
    pub(crate) fn check_hilbert_series(&self) -> CheckResult {
        let (d, n) = (self.instance().d(), self.instance().n());
        if d >= n {
            return Ok(Outcome::skipped("closed form requires d < n"));
        }
        let h = self.candidate_fiber.hilbert()?;
        let computed = h.series(2 * d);
        let closed = fiber_hilbert_closed_form(d, n, 2 * d);
        let expected = expected_fiber_multiplicity(d, n);
        let pass = computed == closed.series
            && closed.negative_terms.is_empty()
            && closed.multiplicity == expected
            && h.multiplicity as i128 == expected;
        let mut cert = json!({
            "computed": computed.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "closed_form": closed.series.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "multiplicity": h.multiplicity,
            "closed_form_multiplicity": closed.multiplicity.to_string(),
            "dim": h.dim,
        });
        if !closed.negative_terms.is_empty() {
            cert["negative_degree_terms"] =
                json!(closed.negative_terms.iter().map(|(k, c)| format!("{c}*z^{k}")).collect::<Vec<_>>());
        }
        Ok(Outcome::new(pass, cert))
    }

    /// Smallest `N` with `m^N·𝒥 ⊆ ℒ`, against the bound `1` (d odd) or `(n-d+1)/2` (d even).
    pub(crate) fn check_annihilator(&self) -> CheckResult {
        let inst = self.instance();
        let (d, n) = (inst.d(), inst.n());
        let rings = inst.rings();
        let bound = if d % 2 == 1 { 1 } else { n.saturating_sub(d).div_ceil(2) } as u32;
        let j = lift(self.rees())?;
        let mut minimal = None;
        'power: for power in 0..=bound {
            for exps in monomials_of_degree(d, power) {
                let mut full = exps.clone();
                full.resize(rings.s.nvars(), 0);
                let m = Monomial::from_exponents(&full).expect("bounded degree");
                for q in j.generators() {
                    if !self.l.contains(&q.mul_term(1, &m)?)? {
                        continue 'power;
                    }
                }
            }
            minimal = Some(power);
            break;
        }
        Ok(Outcome::new(minimal.is_some(), json!({ "minimal_exponent": minimal, "bound": bound })))
    }

    /// `I(X) = √I_d(B)` and `𝒥 = √(ℒ + I_d(B)S)`.
    pub(crate) fn check_expected_radical(&self) -> Vec<(String, CheckResult)> {
        let rings = self.instance().rings();
        let fiber = (|| {
            let x = lift(self.fiber())?;
            radical_outcome(&self.id_b, &x)
        })();
        let rees = (|| {
            let j = lift(self.rees())?;
            let l_plus = self.l.sum(&self.id_b.map_to_ring(&rings.s)?)?;
            radical_outcome(&l_plus, &j)
        })();
        vec![("radical.fiber".into(), fiber), ("radical.rees".into(), rees)]
    }

    /// `e(R/((f_1..f_{d-1}) : I))` for random combinations `f` of the generators.
    pub(crate) fn check_residual_multiplicity(&self, trials: u32) -> CheckResult {
        let inst = self.instance();
        let (d, n) = (inst.d(), inst.n());
        let r = &inst.rings().r;
        let p = r.characteristic();
        let ideal = inst.ideal().with_budget(self.budget());
        let expected = expected_fiber_multiplicity(d, n);
        let mut degenerate = Vec::new();
        for trial in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(inst.presentation().seed());
            rng.set_stream(RESIDUAL_STREAM + trial as u64);
            let combos: Vec<Polynomial> = (0..d - 1)
                .map(|_| {
                    inst.generators().iter().fold(Polynomial::zero(r), |acc, g| {
                        &acc + &g.scale(rng.gen_range(0..p) as i64)
                    })
                })
                .collect();
            let a = IdealHandle::new(r, combos)?.with_budget(self.budget());
            let residual = a.quotient(&ideal)?;
            let (dim, height) = match residual.dim_height() {
                Ok(v) => v,
                Err(GbError::UnitIdeal) => (0, d + 1),
                Err(e) => return Err(e.into()),
            };
            if height != d - 1 {
                degenerate.push(json!({ "trial": trial, "height": height }));
                continue;
            }
            let h = residual.hilbert()?;
            let pass = dim == 1 && h.multiplicity as i128 == expected;
            return Ok(Outcome::new(
                pass,
                json!({
                    "trial": trial,
                    "dim": dim,
                    "computed": h.multiplicity,
                    "expected": expected,
                    "degenerate_trials": degenerate,
                }),
            ));
        }
        Ok(Outcome::new(false, json!({ "error": "all trials degenerate", "degenerate_trials": degenerate })))
    }

    /// The three constructions of `C(φ)` agree; `c_T(F_i) = T_i·C(φ)`,
    /// `c_T(F_{n+j}) = C(φ)`; generators have degree `d-1`; for `n = d+1`,
    /// `C(φ) = (Δ_i/T_i)` for every `i`.
    pub(crate) fn check_content(&self) -> CheckResult {
        let inst = self.instance();
        let (d, n) = (inst.d(), inst.n());
        let rings = inst.rings();
        let c = &self.cphi;
        let mut methods = vec![ContentMethod::Content];
        methods.extend((1..=n).map(|i| ContentMethod::FM { i }));
        methods.extend((1..=d).map(|j| ContentMethod::HM { j }));
        for method in &methods {
            let other = content_ideal(inst, *method)?.with_budget(self.budget());
            if let Some(w) = inequality_witness(c, &other)? {
                return Ok(Outcome::new(false, json!({ "method": format!("{method:?}"), "witness": w })));
            }
        }
        for i in 1..=n + d {
            let ci = IdealHandle::new(&rings.t, inst.f_content(i)?)?.with_budget(self.budget());
            let expected = if i <= n {
                let t = Polynomial::variable(&rings.t, i - 1);
                IdealHandle::new(&rings.t, c.generators().iter().map(|g| g * &t).collect())?
            } else {
                c.clone()
            };
            if let Some(w) = inequality_witness(&ci, &expected)? {
                return Ok(Outcome::new(false, json!({ "f_index": i, "witness": w })));
            }
        }
        let degrees: Vec<u32> = c.generators().iter().filter_map(|g| g.total_degree()).collect();
        if degrees.iter().any(|&e| e != d as u32 - 1) {
            return Ok(Outcome::new(false, json!({ "generator_degrees": degrees })));
        }
        let mut cert = json!({
            "methods_agreeing": methods.len(),
            "generators": c.generators().len(),
            "generator_degree": if c.is_zero() { Value::Null } else { json!(d - 1) },
        });
        if n == d + 1 {
            let mut signs = String::new();
            for i in 0..n {
                let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                let delta = inst.jacobian_dual().delta(&cols, None)?;
                let q = delta
                    .exact_div(&Polynomial::variable(&rings.t, i))
                    .map_err(|e| BlowupError::Inconsistent(format!("Δ_{} / T_{}: {e}", i + 1, i + 1)))?;
                let principal = IdealHandle::new(&rings.t, vec![q])?;
                if let Some(w) = inequality_witness(&principal, c)? {
                    return Ok(Outcome::new(false, json!({ "delta_index": i + 1, "witness": w })));
                }
                let f_i = inst.f_vector().f[i].map_to_ring(&rings.t)?;
                signs.push(if f_i == delta {
                    '+'
                } else if f_i == -&delta {
                    '-'
                } else {
                    '?'
                });
            }
            cert["principal_by_delta_over_t"] = json!(true);
            cert["f_vs_delta_signs"] = json!(signs);
        }
        Ok(Outcome::new(true, cert))
    }
}
