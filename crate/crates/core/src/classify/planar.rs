//! Explicit planar representation formulas on double pyramids.

use crate::error::{Error, Result};
use crate::functionals::moment_vector;
use crate::harness::{run_trials, CheckReport, Counterexample, Sampler, TrialBudget};
use crate::linalg::Vector;
use crate::scalar::Scalar;

use super::fit::FitResult;
use super::pyramid::{is_double_pyramid, make_double_pyramid, DoublePyramidParams};

/// A real function of one rational variable, shareable across trial threads.
pub type ScalarFn<'a, T> = &'a (dyn Fn(&T) -> T + Sync);

/// `k (a+b) ((c+d) (b-a, d-c) + (y d^2 - x c^2) e1)` for planar parameters.
pub fn eval_r2_formula<T: Scalar>(p: &DoublePyramidParams<T>, k: &T) -> Result<Vector<T>> {
    let (a, b) = p.segment()?;
    let (c, d) = (p.c().clone(), p.d().clone());
    let (x, y) = (p.x()[0].clone(), p.y()[0].clone());
    let cd = c.clone() + d.clone();
    let shift = y * d.clone() * d.clone() - x * c.clone() * c.clone();
    let v = Vector::new(vec![cd.clone() * (b.clone() - a.clone()) + shift, cd * (d - c)]);
    Ok(v.scale(&(k.clone() * (a + b))))
}

/// Fits `k` on the first instance, then checks `m(P) = R(P, k)` exactly on
/// every instance. `FitImpossible` when the first formula vector vanishes.
pub fn fit_r2_family<T: Scalar>(instances: &[DoublePyramidParams<T>]) -> Result<FitResult<T>> {
    let first = instances.first().ok_or_else(|| Error::FitImpossible("empty family".into()))?;
    let unit = eval_r2_formula(first, &T::one())?;
    let m = moment_vector(&make_double_pyramid(first));
    let i = (0..2)
        .find(|&i| !unit[i].is_zero())
        .ok_or_else(|| Error::FitImpossible("first instance has a zero formula vector".into()))?;
    let k = m[i].clone() / unit[i].clone();
    let mut failures = Vec::new();
    for p in instances {
        let body = make_double_pyramid(p);
        if moment_vector(&body) != eval_r2_formula(p, &k)? {
            failures.push(body);
        }
    }
    Ok(FitResult::new(vec![k], failures))
}

/// The kite `a = 1, b = 2, c = d = 1`, whose formula vector is nonzero.
pub fn asymmetric_r2_instance<T: Scalar>() -> DoublePyramidParams<T> {
    DoublePyramidParams::straight(T::one(), T::from_int(2), T::one(), T::one()).expect("positive")
}

/// `budget.trials` planar double pyramids. Odd-indexed instances get slanted
/// apexes whenever a sampled slant keeps the section equal to the base.
pub fn random_r2_family<T: Scalar>(budget: &TrialBudget) -> Vec<DoublePyramidParams<T>> {
    (0..budget.trials as u64)
        .map(|i| {
            let mut s = Sampler::for_trial(budget, i);
            let (a, b, c, d) = (s.positive::<T>(), s.positive::<T>(), s.positive::<T>(), s.positive::<T>());
            let straight = DoublePyramidParams::straight(a.clone(), b.clone(), c.clone(), d.clone()).expect("positive");
            if i % 2 == 1 {
                for _ in 0..20 {
                    let p = DoublePyramidParams::planar(
                        a.clone(),
                        b.clone(),
                        c.clone(),
                        d.clone(),
                        s.rational(),
                        s.rational(),
                    )
                    .expect("positive");
                    if !p.is_straight() && is_double_pyramid(&p) {
                        return p;
                    }
                }
            }
            straight
        })
        .collect()
}

/// Fits `k` against the moment vector over a random family, retrying with
/// the kite in front when the first instance cannot determine `k`.
pub fn verify_r2_against_moment<T: Scalar>(budget: &TrialBudget) -> Result<FitResult<T>> {
    let family = random_r2_family(budget);
    match fit_r2_family(&family) {
        Err(Error::FitImpossible(_)) => {
            let mut retry = vec![asymmetric_r2_instance()];
            retry.extend(family);
            fit_r2_family(&retry)
        }
        other => other,
    }
}

/// The two pyramid terms `(lower, upper)` whose sum is the straight double
/// pyramid formula; `lower` depends on `c`, `upper` on `d`.
pub fn q2_pyramid_terms<T: Scalar>(a: &T, b: &T, c: &T, d: &T, f: ScalarFn<'_, T>) -> (Vector<T>, Vector<T>) {
    let ac = f(&(a.clone() * c.clone()));
    let bc = f(&(b.clone() * c.clone()));
    let ad = f(&(a.clone() * d.clone()));
    let bd = f(&(b.clone() * d.clone()));
    let lower = Vector::new(vec![(bc.clone() - ac.clone()) / c.clone(), -(ac / a.clone()) - bc / b.clone()]);
    let upper = Vector::new(vec![(bd.clone() - ad.clone()) / d.clone(), ad / a.clone() + bd / b.clone()]);
    (lower, upper)
}

/// `(-F(ac)/c + F(bc)/c - F(ad)/d + F(bd)/d, -F(ac)/a - F(bc)/b + F(ad)/a + F(bd)/b)`.
pub fn eval_q2_formula<T: Scalar>(a: &T, b: &T, c: &T, d: &T, f: ScalarFn<'_, T>) -> Vector<T> {
    let ac = f(&(a.clone() * c.clone()));
    let bc = f(&(b.clone() * c.clone()));
    let ad = f(&(a.clone() * d.clone()));
    let bd = f(&(b.clone() * d.clone()));
    Vector::new(vec![
        -(ac.clone() / c.clone()) + bc.clone() / c.clone() - ad.clone() / d.clone() + bd.clone() / d.clone(),
        -(ac / a.clone()) - bc / b.clone() + ad / a.clone() + bd / b.clone(),
    ])
}

/// `F(r) = m_1(conv{(-1,0), (r,0), (0,1), (0,-1)}) / 2` for `r > 0`.
pub fn extract_f_from_moment<T: Scalar>(r: &T) -> Result<T> {
    let p = DoublePyramidParams::straight(T::one(), r.clone(), T::one(), T::one())?;
    Ok(moment_vector(&make_double_pyramid(&p))[0].clone() * T::half())
}

/// `(k, k~)` with `F(r_i) = k r_i^2 + k~` at two distinct radii.
pub fn fit_f_quadratic<T: Scalar>(r1: &T, r2: &T) -> Result<(T, T)> {
    let (f1, f2) = (extract_f_from_moment(r1)?, extract_f_from_moment(r2)?);
    let (s1, s2) = (r1.clone() * r1.clone(), r2.clone() * r2.clone());
    if s1 == s2 {
        return Err(Error::SingularTrainingSet);
    }
    let k = (f1.clone() - f2) / (s1.clone() - s2);
    let kt = f1 - k.clone() * s1;
    Ok((k, kt))
}

/// `m([I, J]) = Q(a, b, c, d; F)` on random straight double pyramids.
pub fn check_q2_against_moment<T: Scalar>(f: ScalarFn<'_, T>, budget: &TrialBudget) -> Result<CheckReport<T>> {
    run_trials(budget, |s, _| {
        let (a, b, c, d) = (s.positive::<T>(), s.positive::<T>(), s.positive::<T>(), s.positive::<T>());
        let p = DoublePyramidParams::straight(a.clone(), b.clone(), c.clone(), d.clone())?;
        let lhs = moment_vector(&make_double_pyramid(&p));
        let rhs = eval_q2_formula(&a, &b, &c, &d, f);
        Ok((0..2).find(|&i| lhs[i] != rhs[i]).map(|i| Counterexample::Scalars {
            identity: format!("moment coordinate {} against the double pyramid formula", i + 1),
            inputs: vec![("a".into(), a), ("b".into(), b), ("c".into(), c), ("d".into(), d)],
            lhs: lhs[i].clone(),
            rhs: rhs[i].clone(),
        }))
    })
}
