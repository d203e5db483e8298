//! Acceptance criteria, one PASS/FAIL line each. Every check is exact.
//!
//! Run with `cargo test -p valuation-lab --test acceptance`. Reference values
//! come from the planar oracles at the top of this file, which integrate over
//! explicitly ordered polygons and never call the library's moment code.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use valuation_lab::classify::{
    check_homogeneous_solution, check_homogeneous_solution_for, check_inhomogeneous_functional_eq,
    check_inhomogeneous_functional_eq_for, check_q2_against_moment, dim1_even_representation, dim1_odd_representation,
    eval_q2_formula, eval_r2_formula, extract_f_from_moment, fit_f_quadratic, fit_matrix_classification,
    fit_scalar_classification, fit_vector_classification, holdout_set, is_double_pyramid, matrix_training_set,
    random_r2_family, scalar_training_set, segment_handle, two_adic_log_handle, vector_training_set,
    DoublePyramidParams,
};
use valuation_lab::functionals::{
    basis_valuation_scalar, basis_valuation_vector_2d, decompose_even_odd_with, euler_handle, even_part, moment_handle,
    moment_matrix, moment_matrix_handle, odd_part, polar_composite, rotated, volume, volume_handle, Value, ValueKind,
};
use valuation_lab::geometry::{apply_linear_map, intersect, polar, split_by_slab, union_if_convex};
use valuation_lab::harness::{
    check_equivariance, check_valuation_identity, run_trials, CheckReport, Counterexample, DetSign, EquivarianceMode,
    Sampler, TrialBudget,
};
use valuation_lab::linalg::{LinearMap, Matrix};
use valuation_lab::scalar::Scalar;
use valuation_lab::{Polytope, ValuationHandle};

type Q = BigRational;

/// Canonical JSON of every report a criterion produced, in order.
type Log = Vec<String>;
type Outcome = Result<Log, String>;

const TRIALS: usize = 100;
const SEED: u64 = 2024;

fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn budget(dim: usize) -> TrialBudget {
    TrialBudget::new(TRIALS, dim, SEED)
}

fn record(log: &mut Log, what: &str, r: &CheckReport<Q>, want: bool) -> Result<(), String> {
    let doc = r.to_json().to_string();
    log.push(doc.clone());
    if r.passed == want {
        Ok(())
    } else {
        Err(format!("{what}: expected passed = {want}, got {doc}"))
    }
}

fn ok<T>(r: valuation_lab::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ---- planar oracle ----

/// `(area, m)` of the polygon with the given counter-clockwise vertices,
/// from Green's theorem.
fn polygon_moments(ccw: &[(Q, Q)]) -> (Q, [Q; 2]) {
    let mut area = Q::zero();
    let (mut mx, mut my) = (Q::zero(), Q::zero());
    for i in 0..ccw.len() {
        let (x0, y0) = &ccw[i];
        let (x1, y1) = &ccw[(i + 1) % ccw.len()];
        let cross = x0 * y1 - x1 * y0;
        area += &cross;
        mx += (x0 + x1) * &cross;
        my += (y0 + y1) * &cross;
    }
    (area / q(2, 1), [mx / q(6, 1), my / q(6, 1)])
}

/// Moment of the planar double pyramid, walking its four vertices in order.
fn kite_moment(a: &Q, b: &Q, c: &Q, d: &Q, x: &Q, y: &Q) -> [Q; 2] {
    let ccw = [(-a.clone(), Q::zero()), (-(c * x), -c.clone()), (b.clone(), Q::zero()), (d * y, d.clone())];
    polygon_moments(&ccw).1
}

fn planar_params(p: &DoublePyramidParams<Q>) -> [Q; 6] {
    let (a, b) = p.segment().expect("planar");
    [a, b, p.c().clone(), p.d().clone(), p.x()[0].clone(), p.y()[0].clone()]
}

// ---- criteria ----

fn c1_valuation_identity() -> Outcome {
    let mut log = Log::new();
    for n in [2, 3] {
        let mut handles: Vec<ValuationHandle> = vec![
            euler_handle(),
            volume_handle(),
            polar_composite(&volume_handle()),
            moment_handle(),
            polar_composite(&moment_handle()),
            moment_matrix_handle(),
            polar_composite(&moment_matrix_handle()),
        ];
        if n == 2 {
            handles.push(rotated(&polar_composite(&moment_handle())));
        }
        for h in &handles {
            let r = ok(check_valuation_identity(h, &budget(n)), h.name())?;
            record(&mut log, &format!("{} in dimension {n}", h.name()), &r, true)?;
        }
    }
    let squared = ValuationHandle::new("V^2", ValueKind::Scalar, |p: &Polytope| {
        let v = volume(p);
        Ok(Value::Scalar(&v * &v))
    });
    let r = ok(check_valuation_identity(&squared, &budget(2)), "V^2")?;
    record(&mut log, "V^2", &r, false)?;
    let witness = r.counterexample.as_ref().ok_or("V^2 failed without a counterexample")?;
    if !ok(witness.replays(&squared), "replay")? {
        return Err("V^2 counterexample does not replay".into());
    }
    Ok(log)
}

fn c2_equivariance() -> Outcome {
    use EquivarianceMode::*;
    let mut log = Log::new();
    let m = moment_handle::<Q>();
    let m2 = moment_matrix_handle::<Q>();
    let mut cases: Vec<(ValuationHandle, EquivarianceMode, usize)> = Vec::new();
    for n in [2, 3, 4] {
        cases.push((m.clone(), SlCovariant, n));
        cases.push((m.clone(), VlCovariant, n));
    }
    for n in [2, 3] {
        cases.push((m2.clone(), GlCovariant, n));
        cases.push((polar_composite(&m), SlContravariant, n));
        cases.push((polar_composite(&m2), GlContravariant, n));
    }
    cases.push((rotated(&polar_composite(&m)), VlSignumCovariant, 2));
    for (h, mode, n) in &cases {
        let what = format!("{} {} n={n}", h.name(), mode.tag());
        let r = ok(check_equivariance(h, *mode, &budget(*n)), &what)?;
        record(&mut log, &what, &r, true)?;
    }
    Ok(log)
}

fn c3_polarity() -> Outcome {
    let mut log = Log::new();
    for n in [2, 3] {
        let b = budget(n);
        let r = ok(
            run_trials(&b, |s: &mut Sampler, i| {
                let p = s.polytope::<Q>(n, i)?;
                let pp = polar(&p)?;
                let phi = s.unimodular::<Q>(n, DetSign::Either);
                let mut bad = Vec::new();
                if polar(&pp)? != p {
                    bad.push("(P*)* = P");
                }
                if polar(&apply_linear_map(&phi, &p)?)? != apply_linear_map(&phi.inverse_transpose()?, &pp)? {
                    bad.push("(phi P)* = phi^-t P*");
                }
                let (d, lo, hi) = s.slab(&p);
                let (k, l) = split_by_slab(&p, &d, &lo, &hi)?;
                let (kp, lp) = (polar(&k)?, polar(&l)?);
                if pp != intersect(&kp, &lp)? {
                    bad.push("(K u L)* = K* n L*");
                }
                if polar(&intersect(&k, &l)?)? != union_if_convex(&kp, &lp)? {
                    bad.push("(K n L)* = K* u L*");
                }
                Ok(bad.first().map(|identity| Counterexample::Scalars {
                    identity: identity.to_string(),
                    inputs: vec![("trial".into(), Q::from_integer(i.into()))],
                    lhs: Q::one(),
                    rhs: Q::zero(),
                }))
            }),
            "polarity",
        )?;
        record(&mut log, &format!("polarity laws n={n}"), &r, true)?;
    }
    Ok(log)
}

fn c4_r2_lemma() -> Outcome {
    let b = TrialBudget::new(60, 2, SEED);
    let family = random_r2_family::<Q>(&b);
    let slanted = family.iter().filter(|p| !p.is_straight()).count();
    if family.len() < 50 || slanted == 0 || !family.iter().all(is_double_pyramid) {
        return Err(format!("family has {} instances, {slanted} slanted", family.len()));
    }
    // the kite a = b/2 = c = d = 1: its moment over the formula's k = 1 value
    let [a, bb, c, d, x, y] = [q(1, 1), q(2, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1)];
    let m = kite_moment(&a, &bb, &c, &d, &x, &y);
    let unit = ok(eval_r2_formula(&DoublePyramidParams::straight(a, bb, c, d).unwrap(), &Q::one()), "formula")?;
    let k_oracle = &m[0] / &unit[0];
    if !m[1].is_zero() || !unit[1].is_zero() {
        return Err("reference kite is not symmetric about the first axis".into());
    }

    let fit = ok(valuation_lab::classify::verify_r2_against_moment::<Q>(&b), "verify_r2_against_moment")?;
    let log = vec![fit.to_json().to_string()];
    if !fit.residual_ok || fit.coefficients != vec![k_oracle.clone()] {
        return Err(format!("fit {} against oracle k = {k_oracle}", log[0]));
    }
    for p in &family {
        let [a, b, c, d, x, y] = planar_params(p);
        let want = kite_moment(&a, &b, &c, &d, &x, &y);
        let got = ok(eval_r2_formula(p, &k_oracle), "formula")?;
        if got.coords() != want {
            return Err(format!("formula misses the oracle at a={a} b={b} c={c} d={d} x={x} y={y}"));
        }
    }
    println!("        fitted k = {k_oracle} on {} instances, {slanted} slanted", family.len());
    Ok(log)
}

fn c5_q2_lemma() -> Outcome {
    let (k, kt) = ok(fit_f_quadratic(&q(2, 1), &q(3, 1)), "fit_f_quadratic")?;
    let f = |r: &Q| &k * r * r + &kt;
    let b = TrialBudget::new(50, 2, SEED);
    let r = ok(
        run_trials(&b, |s: &mut Sampler, _| {
            let r = s.positive::<Q>();
            let extracted = extract_f_from_moment(&r)?;
            let oracle = kite_moment(&Q::one(), &r, &Q::one(), &Q::one(), &Q::zero(), &Q::zero())[0].clone() / q(2, 1);
            Ok([(extracted.clone(), oracle), (extracted, f(&r))].into_iter().find(|(l, r)| l != r).map(|(lhs, rhs)| {
                Counterexample::Scalars { identity: "F(r)".into(), inputs: vec![("r".into(), r)], lhs, rhs }
            }))
        }),
        "F extraction",
    )?;
    let mut log = Log::new();
    record(&mut log, "F against oracle and k r^2 + k~", &r, true)?;
    let r = ok(check_q2_against_moment(&f, &b), "check_q2_against_moment")?;
    record(&mut log, "Q2 formula on straight double pyramids", &r, true)?;
    // one more instance straight from the oracle
    let (a, bb, c, d) = (q(3, 2), q(5, 4), q(2, 3), q(7, 2));
    let want = kite_moment(&a, &bb, &c, &d, &Q::zero(), &Q::zero());
    if eval_q2_formula(&a, &bb, &c, &d, &f).coords() != want {
        return Err("Q2 formula misses the oracle moment".into());
    }
    Ok(log)
}

fn c6_functional_equations() -> Outcome {
    let mut log = Log::new();
    let b = budget(2);
    let (k, kt) = ok(fit_f_quadratic(&q(2, 1), &q(3, 1)), "fit_f_quadratic")?;
    let r = ok(check_inhomogeneous_functional_eq(&k, &kt, &b), "inhomogeneous")?;
    record(&mut log, "fitted F", &r, true)?;
    for c in [q(0, 1), q(1, 1), q(-7, 3)] {
        let f = |_: &Q| c.clone();
        let r = ok(check_inhomogeneous_functional_eq_for(&f, &c, &b), "constant F")?;
        record(&mut log, &format!("constant F = {c}"), &r, true)?;
    }
    let r = ok(check_homogeneous_solution(&b), "G(u) = u^2")?;
    record(&mut log, "G(u) = u^2", &r, true)?;
    let r = ok(check_homogeneous_solution_for(&|u: &Q| u.clone(), &b), "G(u) = u")?;
    record(&mut log, "G(u) = u", &r, false)?;
    Ok(log)
}

fn random_coeffs(seed: u64, i: u64, count: usize) -> Vec<Q> {
    let mut s = Sampler::for_trial(&TrialBudget::new(1, 1, seed), i);
    (0..count).map(|_| s.rational()).collect()
}

fn check_fit(
    log: &mut Log,
    fit: valuation_lab::Result<valuation_lab::FitResult>,
    want: &[Q],
    what: &str,
) -> Result<(), String> {
    let fit = ok(fit, what)?;
    let doc = fit.to_json().to_string();
    log.push(doc.clone());
    if !fit.residual_ok || fit.coefficients != want {
        return Err(format!("{what}: wanted {want:?}, got {doc}"));
    }
    Ok(())
}

fn c7_classification_fits() -> Outcome {
    let mut log = Log::new();
    for n in [2, 3] {
        let (train, hold) = (scalar_training_set::<Q>(n), ok(holdout_set::<Q>(n, 20, SEED), "holdout")?);
        for i in 0..10 {
            let k = random_coeffs(SEED, i, 3);
            let mu = basis_valuation_scalar(k[0].clone(), k[1].clone(), k[2].clone());
            check_fit(&mut log, fit_scalar_classification(&mu, &train, &hold), &k, &format!("scalar n={n}"))?;
        }
    }

    let (train, hold) = (vector_training_set::<Q>(2), ok(holdout_set::<Q>(2, 20, SEED), "holdout")?);
    for i in 0..10 {
        let k = random_coeffs(SEED + 1, i, 2);
        let mu = basis_valuation_vector_2d(k[0].clone(), k[1].clone());
        check_fit(&mut log, fit_vector_classification(&mu, 2, &train, &hold), &k, "vector n=2")?;
    }

    let (train, hold) = (vector_training_set::<Q>(3), ok(holdout_set::<Q>(3, 20, SEED), "holdout")?);
    for i in 0..10 {
        let k = random_coeffs(SEED + 2, i, 1);
        let mu = moment_handle::<Q>().scaled(k[0].clone());
        check_fit(&mut log, fit_vector_classification(&mu, 3, &train, &hold), &k, "vector n=3")?;
    }

    for n in [2, 3] {
        let (train, hold) = (matrix_training_set::<Q>(n), ok(holdout_set::<Q>(n, 20, SEED), "holdout")?);
        for i in 0..10 {
            let k = random_coeffs(SEED + 3, i, 1);
            let mu = moment_matrix_handle::<Q>().scaled(k[0].clone());
            check_fit(&mut log, fit_matrix_classification(&mu, &train, &hold, None), &k, &format!("matrix n={n}"))?;

            // the same valuation plus V(P)(E12 - E21), which no multiple of M2 matches
            let kk = k[0].clone();
            let skewed = ValuationHandle::new("skewed", ValueKind::Matrix, move |p: &Polytope| {
                let mut e = Matrix::zeros(n, n);
                e.set(0, 1, volume(p));
                e.set(1, 0, -volume(p));
                Ok(Value::Matrix(moment_matrix(p).scale(&kk).add(&e)))
            });
            let fit = ok(fit_matrix_classification(&skewed, &train, &hold, None), "skewed matrix")?;
            log.push(fit.to_json().to_string());
            if fit.residual_ok {
                return Err(format!("antisymmetric perturbation accepted for k = {}", k[0]));
            }
        }
    }
    Ok(log)
}

fn c8_dim1() -> Outcome {
    let mut log = Log::new();
    let b = budget(1);
    for qd in -4..=4 {
        let even = segment_handle("a^q+b^q", move |a: &Q, bb: &Q| a.powi(qd) + bb.powi(qd));
        let r = ok(dim1_even_representation(&even, Some(qd), &b), "even")?;
        record(&mut log, &format!("even q={qd}"), &r, true)?;
        if qd != 0 {
            let odd = segment_handle("b^q-a^q", move |a: &Q, bb: &Q| bb.powi(qd) - a.powi(qd));
            let r = ok(dim1_odd_representation(&odd, Some(qd), &b), "odd")?;
            record(&mut log, &format!("odd q={qd}"), &r, true)?;
        }
    }
    let r = ok(dim1_odd_representation(&two_adic_log_handle(), Some(0), &b), "odd q=0")?;
    record(&mut log, "odd q=0 (2-adic surrogate)", &r, true)?;
    // the degree-1 odd family is not 0-homogeneous
    let odd1 = segment_handle("b-a", |a: &Q, bb: &Q| bb - a);
    let r = ok(dim1_odd_representation(&odd1, Some(0), &b), "odd q=1 as q=0")?;
    record(&mut log, "b-a is not logarithmic", &r, false)?;
    Ok(log)
}

fn c9_decomposition() -> Outcome {
    let mut log = Log::new();
    let theta1 = LinearMap::<Q>::first_axis_reflection(2);
    let theta2 = LinearMap::from_rows(vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]]).unwrap();
    let b = TrialBudget::new(50, 2, SEED);
    for i in 0..10 {
        let k = random_coeffs(SEED + 4, i, 2);
        let mu = basis_valuation_vector_2d(k[0].clone(), k[1].clone());
        let even = moment_handle::<Q>().scaled(k[0].clone());
        let odd = rotated(&polar_composite(&moment_handle::<Q>())).scaled(k[1].clone());
        let r = ok(
            run_trials(&b, |s: &mut Sampler, i| {
                let p = s.polytope::<Q>(2, i)?;
                let whole = mu.evaluate(&p)?;
                let whole = whole.as_vector()?;
                let (p1, m1) = decompose_even_odd_with(&mu, &p, &theta1)?;
                let (p2, m2) = decompose_even_odd_with(&mu, &p, &theta2)?;
                let want_even = even.evaluate(&p)?;
                let want_odd = odd.evaluate(&p)?;
                let checks = [
                    ("mu = mu+ + mu-", p1.add(&m1), whole.clone()),
                    ("mu+ independent of theta", p2.clone(), p1.clone()),
                    ("mu- independent of theta", m2, m1.clone()),
                    ("mu+ = k1 m", p1, want_even.as_vector()?.clone()),
                    ("mu- = k2 rot-polar-m", m1, want_odd.as_vector()?.clone()),
                ];
                Ok(checks.into_iter().find(|(_, l, r)| l != r).map(|(identity, l, r)| Counterexample::Scalars {
                    identity: identity.into(),
                    inputs: vec![("k1".into(), k[0].clone()), ("k2".into(), k[1].clone())],
                    lhs: l[0].clone() + l[1].clone() * q(1, 1000),
                    rhs: r[0].clone() + r[1].clone() * q(1, 1000),
                }))
            }),
            "decomposition",
        )?;
        record(&mut log, &format!("decomposition of {}", mu.name()), &r, true)?;
        for (part, mode) in [
            (even_part(&mu, theta1.clone()), EquivarianceMode::VlCovariant),
            (odd_part(&mu, theta1.clone()), EquivarianceMode::VlSignumCovariant),
        ] {
            let r = ok(check_equivariance(&part, mode, &b), part.name())?;
            record(&mut log, &format!("{} {}", part.name(), mode.tag()), &r, true)?;
        }
    }
    Ok(log)
}

type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 9] = [
    ("valuation identity", c1_valuation_identity),
    ("equivariance suite", c2_equivariance),
    ("polarity laws", c3_polarity),
    ("R2 double pyramid lemma", c4_r2_lemma),
    ("Q2 double pyramid lemma", c5_q2_lemma),
    ("functional equations", c6_functional_equations),
    ("classification fits", c7_classification_fits),
    ("1-D classifications", c8_dim1),
    ("even/odd decomposition", c9_decomposition),
];

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut failures = 0;
    let mut logs = Vec::new();
    for (i, (name, run)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(log) => println!("PASS  {:>2} {name} ({} reports, {secs:.1}s)", i + 1, log.len()),
            Err(why) => {
                failures += 1;
                println!("FAIL  {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
        logs.push(outcome);
    }

    // every criterion again; the report logs must agree byte for byte
    let start = Instant::now();
    let diverged: Vec<usize> = CRITERIA
        .iter()
        .zip(&logs)
        .enumerate()
        .filter(|(_, ((_, run), first))| run() != **first)
        .map(|(i, _)| i + 1)
        .collect();
    let secs = start.elapsed().as_secs_f64();
    if diverged.is_empty() {
        println!("PASS  10 determinism ({secs:.1}s)");
    } else {
        failures += 1;
        println!("FAIL  10 determinism ({secs:.1}s): criteria {diverged:?} differ on rerun");
    }

    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
