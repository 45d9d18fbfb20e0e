//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one PASS/FAIL line; exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use gorenstein_rees::blowup::{
    content_ideal, expected_fiber_multiplicity, monomial_count_restatement, random_presentation, BlowupInstance,
    ContentMethod,
};
use gorenstein_rees::groebner::{posthoc_checks_performed, set_posthoc_checks, Budget, GbError, IdealHandle};
use gorenstein_rees::pfaffian::PolyMatrix;
use gorenstein_rees::polyring::{Monomial, Polynomial};
use gorenstein_rees::verify::{fiber_ideal, rees_by_elimination, verify_instance, Status, Tier, VerificationReport, VerifyConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const SEEDS: u64 = 5;

struct Case {
    inst: BlowupInstance,
    report: VerificationReport,
    wall: Duration,
}

impl Case {
    fn d(&self) -> usize {
        self.inst.d()
    }

    fn n(&self) -> usize {
        self.inst.n()
    }

    fn id(&self) -> String {
        self.report.instance.clone()
    }

    fn record(&self, name: &str) -> Result<(Status, &Value), String> {
        let r = self.report.get(name).ok_or_else(|| format!("{}: no `{name}` record", self.id()))?;
        Ok((r.status, &r.certificate))
    }

    fn passes(&self, name: &str) -> Result<&Value, String> {
        match self.record(name)? {
            (Status::Pass, cert) => Ok(cert),
            (status, cert) => Err(format!("{}: {name} is {status}: {cert}", self.id())),
        }
    }
}

struct Context {
    cases: Vec<Case>,
}

impl Context {
    fn build() -> Self {
        let mut cases = Vec::new();
        let mut plan: Vec<(usize, usize, u64)> = Vec::new();
        for (d, n) in [(3, 5), (4, 5), (5, 5)] {
            plan.extend((0..SEEDS).map(|s| (d, n, s)));
        }
        plan.push((4, 7, 0));
        for (d, n, seed) in plan {
            let inst = BlowupInstance::new(random_presentation(d, n, P, seed).unwrap()).unwrap();
            let config = VerifyConfig { tier: Tier::Extended, budget: Budget::default(), ..Default::default() };
            let start = Instant::now();
            let report = verify_instance(&inst, config);
            cases.push(Case { inst, report, wall: start.elapsed() });
        }
        Context { cases }
    }

    fn of(&self, d: usize, n: usize) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(move |c| c.d() == d && c.n() == n)
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gb<T>(r: Result<T, GbError>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ideal_from(ring: &gorenstein_rees::polyring::Ring, gens: Vec<Polynomial>) -> Result<IdealHandle, String> {
    gb(IdealHandle::new(ring, gens))
}

fn as_i128(v: &Value) -> Option<i128> {
    match v {
        Value::Number(n) => n.as_i64().map(i128::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

fn series_of(v: &Value) -> Vec<i128> {
    v.as_array().map(|a| a.iter().filter_map(as_i128).collect()).unwrap_or_default()
}

/// `Σ_i C(n-2-2i, d-2)` over `0 <= i <= (n-d)/2`.
fn multiplicity_oracle(d: usize, n: usize) -> i128 {
    let (d, n) = (d as i64, n as i64);
    (0..=(n - d) / 2).map(|i| choose(n - 2 - 2 * i, d - 2)).sum()
}

/// `ℒ + I_d(B)S`, assembled here from the symmetric relations and the minors of the Jacobian dual.
fn expected_form(case: &Case) -> Result<IdealHandle, String> {
    let mut gens = case.inst.symmetric_ideal().generators().to_vec();
    gens.extend(case.inst.jacobian_dual_s().minors(case.d()));
    ideal_from(&case.inst.rings().s, gens)
}

fn criterion_1(ctx: &Context) -> Outcome {
    let mut worst = Duration::ZERO;
    let mut count = 0;
    for case in ctx.of(3, 5) {
        for name in ["main.a", "main.b", "main.c", "main.d"] {
            case.passes(name)?;
        }
        let cert = case.passes("main.a")?;
        ensure(cert["c_phi_zero"] == true && cert["expected_form"] == true, || format!("{}: {cert}", case.id()))?;
        ensure(case.inst.content().generators().iter().all(Polynomial::is_zero), || format!("{}: C(φ) ≠ 0", case.id()))?;
        let j = gb(rees_by_elimination(&case.inst, Budget::default()))?;
        ensure(gb(j.equals(&expected_form(case)?))?, || format!("{}: J differs from L + I_3(B)S", case.id()))?;
        ensure(case.wall < Duration::from_secs(10), || format!("{}: {:?}", case.id(), case.wall))?;
        worst = worst.max(case.wall);
        count += 1;
    }
    ensure(count >= 5, || format!("only {count} instances"))?;
    Ok(format!("{count} instances of (3,5), C = 0, J = L + I_3(B)S, slowest {:.2} s", worst.as_secs_f64()))
}

fn criterion_2(ctx: &Context) -> Outcome {
    let mut worst = Duration::ZERO;
    let mut count = 0;
    for case in ctx.of(4, 5) {
        for name in ["main.a", "main.b", "main.c", "main.d"] {
            case.passes(name)?;
        }
        let rings = case.inst.rings();
        let b = case.inst.jacobian_dual();
        let c = case.inst.content();
        for i in 0..case.n() {
            let cols: Vec<usize> = (0..case.n()).filter(|&c| c != i).collect();
            let square: Vec<Vec<Polynomial>> =
                (0..b.rows()).map(|r| cols.iter().map(|&c| b.get(r, c).clone()).collect()).collect();
            let delta = leibniz_det(&rings.t, &square);
            let t_i = Polynomial::variable(&rings.t, i);
            let q = delta.exact_div(&t_i).map_err(|e| format!("{}: Δ_{} / T_{}: {e}", case.id(), i + 1, i + 1))?;
            ensure(!q.is_zero(), || format!("{}: Δ_{} = 0", case.id(), i + 1))?;
            ensure(gb(ideal_from(&rings.t, vec![q])?.equals(c))?, || {
                format!("{}: C(φ) ≠ (Δ_{}/T_{})", case.id(), i + 1, i + 1)
            })?;
        }
        ensure(case.wall < Duration::from_secs(30), || format!("{}: {:?}", case.id(), case.wall))?;
        worst = worst.max(case.wall);
        count += 1;
    }
    ensure(count >= 5, || format!("only {count} instances"))?;
    Ok(format!("{count} instances of (4,5), C = (Δ_i/T_i) for every i, slowest {:.2} s", worst.as_secs_f64()))
}

fn criterion_3(ctx: &Context) -> Outcome {
    let frozen = [((3, 5), 4), ((4, 5), 3), ((4, 7), 13)];
    let mut seen = Vec::new();
    for ((d, n), value) in frozen {
        let oracle = multiplicity_oracle(d, n);
        ensure(oracle == value, || format!("({d},{n}): binomial sum {oracle}, expected {value}"))?;
        ensure(expected_fiber_multiplicity(d, n) == value, || format!("({d},{n}): library formula"))?;
        ensure(monomial_count_restatement(d, n) == value, || format!("({d},{n}): monomial count"))?;
        for case in ctx.of(d, n) {
            let cert = case.passes("multiplicity")?;
            ensure(as_i128(&cert["computed"]) == Some(value), || format!("{}: {cert}", case.id()))?;
            ensure(as_i128(&cert["monomial_count"]) == Some(value), || format!("{}: {cert}", case.id()))?;
            ensure(as_i128(&cert["dim"]) == Some(d as i128), || format!("{}: dim {}", case.id(), cert["dim"]))?;
            ensure(case.wall < Duration::from_secs(600), || format!("{}: {:?}", case.id(), case.wall))?;
        }
        seen.push(format!("e({d},{n}) = {value}"));
    }
    Ok(format!("{}, dim A = d throughout", seen.join(", ")))
}

fn criterion_4(ctx: &Context) -> Outcome {
    // (1+3z)/(1-z)^3 - z
    let rational = |k: i64| choose(k + 2, 2) + 3 * choose(k + 1, 2) - i128::from(k == 1);
    let mut count = 0;
    for case in ctx.of(3, 5).chain(ctx.of(4, 5)) {
        let d = case.d();
        let cert = case.passes("hilbert")?;
        let computed = series_of(&cert["computed"]);
        let closed = series_of(&cert["closed_form"]);
        ensure(computed.len() == 2 * d + 1 && computed == closed, || format!("{}: {cert}", case.id()))?;
        let leads: Vec<Monomial> =
            gb(case.inst.candidate_fiber().basis())?.iter().filter_map(Polynomial::leading_monomial).collect();
        let counted: Vec<i128> = (0..=2 * d as u32).map(|k| standard_monomials(case.n(), k, &leads) as i128).collect();
        ensure(counted == computed, || format!("{}: standard monomials {counted:?} vs {computed:?}", case.id()))?;
        if case.d() == 3 {
            ensure(counted[..3] == [1, 5, 15], || format!("{}: {counted:?}", case.id()))?;
            let expected: Vec<i128> = (0..=6).map(rational).collect();
            ensure(counted == expected, || format!("{}: {counted:?} vs {expected:?}", case.id()))?;
        }
        count += 1;
    }
    Ok(format!("{count} instances match the closed form through degree 2d; (3,5) starts 1, 5, 15"))
}

fn criterion_5(ctx: &Context) -> Outcome {
    let mut count = 0;
    for case in ctx.cases.iter().filter(|c| Tier::of(c.d(), c.n()) == Tier::Required) {
        let expected = (case.n() - case.d()) as i128;
        let cert = case.passes("height")?;
        ensure(as_i128(&cert["height"]) == Some(expected), || format!("{}: {cert}", case.id()))?;
        let (_, height) = gb(case.inst.minors_ideal().dim_height())?;
        ensure(height as i128 == expected, || format!("{}: direct height {height}", case.id()))?;
        count += 1;
    }
    Ok(format!("ht I_d(B) = n - d on {count} required instances"))
}

fn x_monomials(case: &Case, degree: u32) -> Vec<Polynomial> {
    let s = &case.inst.rings().s;
    gorenstein_rees::blowup::monomials_of_degree(case.d(), degree)
        .into_iter()
        .map(|e| {
            let mut full = e;
            full.resize(s.nvars(), 0);
            Polynomial::monomial(s, 1, Monomial::from_exponents(&full).unwrap())
        })
        .collect()
}

/// Whether `m^N J ⊆ L`, tested generator by generator.
fn annihilates(case: &Case, j: &IdealHandle, l: &IdealHandle, power: u32) -> Result<bool, String> {
    for m in x_monomials(case, power) {
        for g in j.generators() {
            if !gb(l.contains(&(&m * g)))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn criterion_6(ctx: &Context) -> Outcome {
    let mut found = Vec::new();
    for ((d, n), bound) in [((3, 5), 1), ((4, 5), 1), ((4, 7), 2)] {
        let mut worst = 0;
        for case in ctx.of(d, n) {
            let cert = case.passes("annihilator")?;
            let exponent = as_i128(&cert["minimal_exponent"]).ok_or_else(|| format!("{}: {cert}", case.id()))? as u32;
            ensure(exponent <= bound, || format!("{}: N = {exponent} > {bound}", case.id()))?;
            let j = gb(rees_by_elimination(&case.inst, Budget::default()))?;
            let l = case.inst.symmetric_ideal();
            ensure(annihilates(case, &j, l, exponent)?, || format!("{}: m^{exponent} J ⊄ L", case.id()))?;
            if exponent > 0 {
                ensure(!annihilates(case, &j, l, exponent - 1)?, || format!("{}: N not minimal", case.id()))?;
            }
            worst = worst.max(exponent);
        }
        found.push(format!("({d},{n}) N ≤ {worst}"));
    }
    Ok(found.join(", "))
}

fn criterion_7(ctx: &Context) -> Outcome {
    let mut count = 0;
    for case in ctx.cases.iter().filter(|c| Tier::of(c.d(), c.n()) == Tier::Required) {
        case.passes("content")?;
        let (d, n) = (case.d(), case.n());
        let t = &case.inst.rings().t;
        let reference = content_ideal(&case.inst, ContentMethod::Content).map_err(|e| format!("{}: {e}", case.id()))?;
        let methods = (1..=n).map(|i| ContentMethod::FM { i }).chain((1..=d).map(|j| ContentMethod::HM { j }));
        for method in methods {
            let other = content_ideal(&case.inst, method).map_err(|e| format!("{}: {method:?}: {e}", case.id()))?;
            ensure(gb(other.equals(&reference))?, || format!("{}: {method:?} differs", case.id()))?;
        }
        for g in reference.generators().iter().filter(|g| !g.is_zero()) {
            ensure(g.is_homogeneous() && g.total_degree() == Some(d as u32 - 1), || {
                format!("{}: generator {g} has degree {:?}", case.id(), g.total_degree())
            })?;
        }
        for i in 1..=n {
            let t_i = Polynomial::variable(t, i - 1);
            let scaled: Vec<Polynomial> = reference.generators().iter().map(|g| &t_i * g).collect();
            let lhs = ideal_from(t, case.inst.f_content(i).map_err(|e| e.to_string())?)?;
            ensure(gb(lhs.equals(&ideal_from(t, scaled)?))?, || format!("{}: c_T(F_{i}) ≠ T_{i}·C", case.id()))?;
        }
        count += 1;
    }
    Ok(format!("content, f_M and h_M agree and c_T(F_i) = T_i·C on {count} required instances"))
}

fn criterion_8(ctx: &Context) -> Outcome {
    let mut count = 0;
    for case in ctx.of(5, 5) {
        let j = gb(rees_by_elimination(&case.inst, Budget::default()))?;
        ensure(gb(j.equals(case.inst.symmetric_ideal()))?, || format!("{}: J ≠ L", case.id()))?;
        let fiber = gb(fiber_ideal(&j, case.inst.rings()))?;
        ensure(fiber.generators().iter().all(Polynomial::is_zero), || format!("{}: I(X) ≠ 0", case.id()))?;
        let cert = case.passes("main.b")?;
        ensure(cert["fiber_zero"] == true, || format!("{}: {cert}", case.id()))?;
        count += 1;
    }
    ensure(count >= 5, || format!("only {count} instances"))?;
    Ok(format!("{count} instances of (5,5): J = L and I(X) = 0"))
}

fn criterion_9(ctx: &Context) -> Outcome {
    let mut count = 0;
    for case in ctx.of(3, 5).chain(ctx.of(4, 5)) {
        let cert = case.passes("residual")?;
        let expected = multiplicity_oracle(case.d(), case.n());
        ensure(as_i128(&cert["computed"]) == Some(expected), || format!("{}: {cert}", case.id()))?;
        ensure(as_i128(&cert["dim"]) == Some(1), || format!("{}: {cert}", case.id()))?;
        count += 1;
    }
    Ok(format!("e(R/J') = e(A) with dim R/J' = 1 on {count} instances"))
}

fn random_poly(rng: &mut ChaCha8Rng, r: &gorenstein_rees::polyring::Ring, max_exp: u32, terms: usize) -> Polynomial {
    let nvars = r.nvars();
    let raw: Vec<(i64, Vec<u32>)> =
        (0..terms).map(|_| (rng.gen_range(-4..=4), (0..nvars).map(|_| rng.gen_range(0..=max_exp)).collect())).collect();
    poly(r, &raw)
}

fn kernel_pfaffians(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let r = ring(2);
    let mut count = 0;
    for trial in 0..120 {
        let n = 1 + trial % 6;
        let upper: Vec<Polynomial> = (0..n * (n - 1) / 2).map(|_| random_poly(rng, &r, 1, 2)).collect();
        let m = alternating(&r, n, &upper);
        let pf = to_matrix(&r, &m).pfaffian().map_err(|e| e.to_string())?;
        ensure(pf == matching_pfaffian(&r, &m), || format!("trial {trial}: Pfaffian mismatch"))?;
        ensure(&pf * &pf == leibniz_det(&r, &m), || format!("trial {trial}: Pf^2 ≠ det"))?;
        count += 1;
    }
    Ok(count)
}

fn kernel_instances(ctx: &Context) -> Result<usize, String> {
    for case in &ctx.cases {
        let inst = &case.inst;
        let phi: &PolyMatrix = inst.presentation().phi();
        let image = phi.mul_vector(inst.generators()).map_err(|e| e.to_string())?;
        ensure(image.iter().all(Polynomial::is_zero), || format!("{}: φ·g ≠ 0", case.id()))?;
        let s = &inst.rings().s;
        let mut v: Vec<Polynomial> = (1..=inst.n()).map(|i| inst.t_var_s(i)).collect();
        v.extend((1..=inst.d()).map(|j| -&Polynomial::var(s, &format!("x{j}")).unwrap()));
        let image = inst.bordered().left_mul_vector(&v).map_err(|e| e.to_string())?;
        ensure(image.iter().all(Polynomial::is_zero), || format!("{}: (T, -x)·𝔅 ≠ 0", case.id()))?;
    }
    Ok(ctx.cases.len())
}

fn kernel_ideals(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let r = ring(3);
    let budget = Budget { max_pairs: 20_000, max_terms: 2_000_000 };
    let mut checked = 0;
    for _ in 0..120 {
        let mut make = |k: usize| -> Result<IdealHandle, String> {
            let gens = (0..k).map(|_| random_poly(rng, &r, 2, 3)).collect();
            Ok(ideal_from(&r, gens)?.with_budget(budget))
        };
        let (i, j) = (make(2)?, make(2)?);
        let f = random_poly(rng, &r, 1, 2);
        let run = || -> Result<(), GbError> {
            let elim = i.eliminate(&[0])?;
            for g in elim.generators() {
                assert!(g.terms().iter().all(|t| t.mono.exponent(0) == 0));
                assert!(i.contains(g)?);
            }
            let colon = i.quotient(&j)?;
            assert!(colon.contains_ideal(&i)?);
            for c in colon.generators() {
                for g in j.generators() {
                    assert!(i.contains(&(c * g))?);
                }
            }
            if !f.is_zero() {
                let sat = i.saturate(&f)?;
                assert!(sat.contains_ideal(&i.quotient_by(&f)?)?);
                assert!(sat.quotient_by(&f)?.equals(&sat)?);
            }
            Ok(())
        };
        match run() {
            Ok(()) => checked += 1,
            Err(e) if e.is_timeout() => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure(checked >= 100, || format!("only {checked} ideals finished within budget"))?;
    Ok(checked)
}

fn criterion_10(ctx: &Context) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let matrices = kernel_pfaffians(&mut rng)?;
    let instances = kernel_instances(ctx)?;
    let ideals = kernel_ideals(&mut rng)?;
    let bases = posthoc_checks_performed();
    ensure(bases > 0, || "no bases were checked post hoc".into())?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("kernel suite took {elapsed:?}"))?;
    Ok(format!(
        "{matrices} Pfaffians, {instances} instance identities, {ideals} ideals, {bases} bases checked post hoc, {:.2} s",
        elapsed.as_secs_f64()
    ))
}

fn main() {
    set_posthoc_checks(true);
    let start = Instant::now();
    let ctx = Context::build();
    let criteria: [(&str, fn(&Context) -> Outcome); 10] = [
        ("Rees and fiber equations, d odd", criterion_1),
        ("Rees and fiber equations, n = d + 1", criterion_2),
        ("fiber multiplicity", criterion_3),
        ("fiber Hilbert series", criterion_4),
        ("height of I_d(B)", criterion_5),
        ("annihilator exponent", criterion_6),
        ("content ideal consistency", criterion_7),
        ("linear type", criterion_8),
        ("residual intersection multiplicity", criterion_9),
        ("kernel properties", criterion_10),
    ];
    let mut failures = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&ctx))).unwrap_or_else(|panic| {
            let msg = panic.downcast_ref::<String>().cloned().or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {title}: {detail}", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {title}: {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of 10 criteria passed in {:.1} s", 10 - failures, start.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
