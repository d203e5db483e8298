//! Functional equations satisfied by the one-variable profiles of planar
//! valuations, checked on random positive rationals.

use crate::error::Result;
use crate::harness::{run_trials, CheckReport, Counterexample, TrialBudget};
use crate::linalg::Vector;
use crate::scalar::Scalar;

use super::planar::ScalarFn;

/// `F(s)` against `F(s/(1+t)) + ((2+t)/t) F(st/(1+t)) - ((2+t)/t) k~`.
pub fn functional_eq_sides<T: Scalar>(f: ScalarFn<'_, T>, kt: &T, s: &T, t: &T) -> (T, T) {
    let one_t = T::one() + t.clone();
    let w = (T::from_int(2) + t.clone()) / t.clone();
    let rhs = f(&(s.clone() / one_t.clone())) + w.clone() * f(&(s.clone() * t.clone() / one_t)) - w * kt.clone();
    (f(s), rhs)
}

/// The inhomogeneous equation for an arbitrary profile `F`.
pub fn check_inhomogeneous_functional_eq_for<T: Scalar>(
    f: ScalarFn<'_, T>,
    kt: &T,
    budget: &TrialBudget,
) -> Result<CheckReport<T>> {
    run_trials(budget, |smp, _| {
        let (s, t) = (smp.positive::<T>(), smp.positive::<T>());
        let (lhs, rhs) = functional_eq_sides(f, kt, &s, &t);
        Ok((lhs != rhs).then(|| Counterexample::Scalars {
            identity: "F(s) = F(s/(1+t)) + ((2+t)/t) F(st/(1+t)) - ((2+t)/t) k~".into(),
            inputs: vec![("s".into(), s), ("t".into(), t), ("k~".into(), kt.clone())],
            lhs,
            rhs,
        }))
    })
}

/// The inhomogeneous equation for `F(r) = k r^2 + k~`.
pub fn check_inhomogeneous_functional_eq<T: Scalar>(k: &T, kt: &T, budget: &TrialBudget) -> Result<CheckReport<T>> {
    let f = |r: &T| k.clone() * r.clone() * r.clone() + kt.clone();
    check_inhomogeneous_functional_eq_for(&f, kt, budget)
}

/// Both homogeneous identities at `(u, v)`:
/// `G(u+v) = G(v) + ((2v+u)/u) G(u)` and `G(u+v) = G(u) + ((2u+v)/v) G(v)`.
pub fn homogeneous_sides<T: Scalar>(g: ScalarFn<'_, T>, u: &T, v: &T) -> [(T, T); 2] {
    let two = T::from_int(2);
    let sum = g(&(u.clone() + v.clone()));
    let first = g(v) + (two.clone() * v.clone() + u.clone()) / u.clone() * g(u);
    let second = g(u) + (two * u.clone() + v.clone()) / v.clone() * g(v);
    [(sum.clone(), first), (sum, second)]
}

pub fn check_homogeneous_solution_for<T: Scalar>(g: ScalarFn<'_, T>, budget: &TrialBudget) -> Result<CheckReport<T>> {
    run_trials(budget, |smp, _| {
        let (u, v) = (smp.positive::<T>(), smp.positive::<T>());
        let sides = homogeneous_sides(g, &u, &v);
        Ok(sides.iter().position(|(l, r)| l != r).map(|i| Counterexample::Scalars {
            identity: if i == 0 {
                "G(u+v) = G(v) + ((2v+u)/u) G(u)".into()
            } else {
                "G(u+v) = G(u) + ((2u+v)/v) G(v)".into()
            },
            inputs: vec![("u".into(), u.clone()), ("v".into(), v.clone())],
            lhs: sides[i].0.clone(),
            rhs: sides[i].1.clone(),
        }))
    })
}

/// Both identities for `G(u) = u^2`.
pub fn check_homogeneous_solution<T: Scalar>(budget: &TrialBudget) -> Result<CheckReport<T>> {
    let g = |u: &T| u.clone() * u.clone();
    check_homogeneous_solution_for(&g, budget)
}

/// A function of a rational vector.
pub type VectorFn<'a, T> = &'a (dyn Fn(&[T]) -> T + Sync);

/// `f(s + t) = f(s) + f(t)` on random pairs; on success also reads off
/// `f(e_i)` and confirms `f(x) = sum_i f(e_i) x_i` on fresh points.
pub fn check_cauchy_additive<T: Scalar>(
    f: VectorFn<'_, T>,
    dim: usize,
    budget: &TrialBudget,
) -> Result<(CheckReport<T>, Option<Vec<T>>)> {
    let named = |prefix: &str, v: &Vector<T>| -> Vec<(String, T)> {
        v.coords().iter().enumerate().map(|(i, x)| (format!("{prefix}{}", i + 1), x.clone())).collect()
    };
    let additive = run_trials(budget, |smp, _| {
        let (s, t) = (smp.point::<T>(dim), smp.point::<T>(dim));
        let lhs = f(s.add(&t).coords());
        let rhs = f(s.coords()) + f(t.coords());
        Ok((lhs != rhs).then(|| {
            let mut inputs = named("s", &s);
            inputs.extend(named("t", &t));
            Counterexample::Scalars { identity: "f(s + t) = f(s) + f(t)".into(), inputs, lhs, rhs }
        }))
    })?;
    if !additive.passed {
        return Ok((additive, None));
    }
    let coeffs: Vec<T> = (0..dim).map(|i| f(Vector::<T>::unit(dim, i).coords())).collect();
    let holdout = TrialBudget { seed: budget.seed.wrapping_add(1), ..budget.clone() };
    let linear = run_trials(&holdout, |smp, _| {
        let x = smp.point::<T>(dim);
        let lhs = f(x.coords());
        let rhs = Vector::new(coeffs.clone()).dot(&x);
        Ok((lhs != rhs).then(|| Counterexample::Scalars {
            identity: "f(x) = sum_i f(e_i) x_i".into(),
            inputs: named("x", &x),
            lhs,
            rhs,
        }))
    })?;
    let report = CheckReport { seed: budget.seed, ..linear };
    let coeffs = report.passed.then_some(coeffs);
    Ok((report, coeffs))
}
