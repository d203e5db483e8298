//! Exact fitting of a handle against the classification bases.

use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::functionals::{
    euler_handle, moment_handle, moment_matrix, polar_composite, rotated, volume_handle, ValuationHandle, Value,
    ValueKind,
};
use crate::geometry::{axis_box, cross_polytope, cube, Polytope};
use crate::harness::{check_equivariance, random_polytope, EquivarianceMode, TrialBudget};
use crate::json::{polytope_to_json, scalar_to_json};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

use super::pyramid::{make_double_pyramid, DoublePyramidParams};

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult<T> {
    pub coefficients: Vec<T>,
    /// True iff every verified polytope matched exactly.
    pub residual_ok: bool,
    pub holdout_failures: Vec<Polytope<T>>,
}

impl<T: Scalar> FitResult<T> {
    pub fn new(coefficients: Vec<T>, holdout_failures: Vec<Polytope<T>>) -> Self {
        FitResult { coefficients, residual_ok: holdout_failures.is_empty(), holdout_failures }
    }

    pub fn to_json(&self) -> Json {
        json!({
            "coefficients": self.coefficients.iter().map(scalar_to_json).collect::<Vec<_>>(),
            "residual_ok": self.residual_ok,
            "holdout_failures": self.holdout_failures.iter().map(polytope_to_json).collect::<Vec<_>>(),
        })
    }
}

/// `chi, V, V(P*)`, in coefficient order.
pub fn scalar_basis<T: Scalar>() -> Vec<ValuationHandle<T>> {
    vec![euler_handle(), volume_handle(), polar_composite(&volume_handle())]
}

/// `m` and, in the plane only, `rho_{pi/2} m(P*)`.
pub fn vector_basis<T: Scalar>(n: usize) -> Vec<ValuationHandle<T>> {
    if n == 2 {
        vec![moment_handle(), rotated(&polar_composite(&moment_handle()))]
    } else {
        vec![moment_handle()]
    }
}

/// `[-1,3] x [-1,1]^{n-2}` with apexes `-e_n` and `e_n`.
fn asymmetric_bipyramid<T: Scalar>(n: usize, top: i64) -> Polytope<T> {
    let mut hi = vec![T::one(); n - 1];
    hi[0] = T::from_int(3);
    let base = axis_box(&vec![-T::one(); n - 1], &hi);
    let p = DoublePyramidParams::new(base, T::one(), T::from_int(top), Vector::zeros(n - 1), Vector::zeros(n - 1))
        .expect("box contains the origin");
    make_double_pyramid(&p)
}

/// Cube, cross-polytope and an asymmetric double pyramid (segments for `n = 1`).
pub fn scalar_training_set<T: Scalar>(n: usize) -> Vec<Polytope<T>> {
    if n == 1 {
        let seg = |a: i64, b: i64| axis_box(&[T::from_int(-a)], &[T::from_int(b)]);
        return vec![seg(1, 1), seg(1, 3), seg(2, 3)];
    }
    vec![cube(n), cross_polytope(n), asymmetric_bipyramid(n, 1)]
}

/// In the plane the kite `conv{(-1,0),(2,0),(0,+-1)}` and a slanted double
/// pyramid; otherwise one double pyramid with `m != 0`.
pub fn vector_training_set<T: Scalar>(n: usize) -> Vec<Polytope<T>> {
    if n == 2 {
        let kite = DoublePyramidParams::straight(T::one(), T::from_int(2), T::one(), T::one()).expect("positive");
        let slanted = DoublePyramidParams::planar(T::one(), T::one(), T::one(), T::from_int(2), T::half(), T::zero())
            .expect("positive");
        vec![make_double_pyramid(&kite), make_double_pyramid(&slanted)]
    } else {
        vec![asymmetric_bipyramid(n, 2)]
    }
}

pub fn matrix_training_set<T: Scalar>(n: usize) -> Vec<Polytope<T>> {
    vec![cube(n)]
}

/// `count` seeded random polytopes in `R^n`.
pub fn holdout_set<T: Scalar>(n: usize, count: usize, seed: u64) -> Result<Vec<Polytope<T>>> {
    let budget = TrialBudget::new(count, n, seed);
    (0..count as u64).map(|i| random_polytope(&budget, i)).collect()
}

fn combine<T: Scalar>(basis: &[ValuationHandle<T>], coeffs: &[T], p: &Polytope<T>) -> Result<Value<T>> {
    let mut acc: Option<Value<T>> = None;
    for (h, k) in basis.iter().zip(coeffs) {
        let v = h.evaluate(p)?.scale(k);
        acc = Some(match acc {
            None => v,
            Some(a) => a.add(&v)?,
        });
    }
    acc.ok_or_else(|| Error::Parse("empty basis".into()))
}

/// Solves `mu = sum_j c_j basis_j` exactly on `train`, then checks the fit
/// on every training and holdout polytope. Equations are taken from `train`
/// in order until they determine the coefficients.
pub fn fit_linear_span<T: Scalar>(
    mu: &ValuationHandle<T>,
    basis: &[ValuationHandle<T>],
    train: &[Polytope<T>],
    holdout: &[Polytope<T>],
) -> Result<FitResult<T>> {
    if let Some(h) = basis.iter().find(|h| h.kind() != mu.kind()) {
        return Err(Error::KindMismatch { expected: mu.kind().name(), got: h.kind().name() });
    }
    let k = basis.len();
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut rhs: Vec<T> = Vec::new();
    'outer: for p in train {
        let target = mu.evaluate(p)?.entries();
        let cols: Vec<Vec<T>> = basis.iter().map(|h| Ok(h.evaluate(p)?.entries())).collect::<Result<_>>()?;
        for (e, t) in target.into_iter().enumerate() {
            let row: Vec<T> = cols.iter().map(|c| c[e].clone()).collect();
            let mut trial = rows.clone();
            trial.push(row.clone());
            if Matrix::from_rows(trial).rank() > rows.len() {
                rows.push(row);
                rhs.push(t);
                if rows.len() == k {
                    break 'outer;
                }
            }
        }
    }
    if rows.len() < k {
        return Err(Error::SingularTrainingSet);
    }
    let coeffs = Matrix::from_rows(rows).solve_exact(&rhs)?.expect("square nonsingular system");
    let mut failures = Vec::new();
    for p in train.iter().chain(holdout) {
        if mu.evaluate(p)? != combine(basis, &coeffs, p)? {
            failures.push(p.clone());
        }
    }
    Ok(FitResult::new(coeffs, failures))
}

/// `mu = k0 chi + k1 V + k2 V(P*)`.
pub fn fit_scalar_classification<T: Scalar>(
    mu: &ValuationHandle<T>,
    train: &[Polytope<T>],
    holdout: &[Polytope<T>],
) -> Result<FitResult<T>> {
    fit_linear_span(mu, &scalar_basis(), train, holdout)
}

/// `mu = k1 m + k2 rho_{pi/2} m(P*)` for `n = 2`, `mu = k m` otherwise.
pub fn fit_vector_classification<T: Scalar>(
    mu: &ValuationHandle<T>,
    n: usize,
    train: &[Polytope<T>],
    holdout: &[Polytope<T>],
) -> Result<FitResult<T>> {
    if let Some(p) = train.iter().chain(holdout).find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch(n, p.dim()));
    }
    fit_linear_span(mu, &vector_basis(n), train, holdout)
}

/// `mu = k M2`. `k` comes from the `(0,0)` entry on the first training
/// polytope; every polytope is then checked for `mu(P) = k M2(P)` and
/// `mu(P) = mu(P)^t`. With `screen`, the handle must first pass the
/// GL(n)-covariance check, or the fit is refused with `PreScreenFailed`.
pub fn fit_matrix_classification<T: Scalar>(
    mu: &ValuationHandle<T>,
    train: &[Polytope<T>],
    holdout: &[Polytope<T>],
    screen: Option<&TrialBudget>,
) -> Result<FitResult<T>> {
    if mu.kind() != ValueKind::Matrix {
        return Err(Error::KindMismatch { expected: "matrix", got: mu.kind().name() });
    }
    if let Some(budget) = screen {
        let dim = train.first().map_or(budget.dim, Polytope::dim);
        if !check_equivariance(mu, EquivarianceMode::GlCovariant, &budget.with_dim(dim))?.passed {
            return Err(Error::PreScreenFailed(EquivarianceMode::GlCovariant.tag().into()));
        }
    }
    let first = train.first().ok_or_else(|| Error::FitImpossible("empty training set".into()))?;
    let m2 = moment_matrix(first);
    if m2.get(0, 0).is_zero() {
        return Err(Error::FitImpossible("second moment vanishes on the training polytope".into()));
    }
    let k = mu.evaluate(first)?.as_matrix()?.get(0, 0).clone() / m2.get(0, 0).clone();
    let mut failures = Vec::new();
    for p in train.iter().chain(holdout) {
        let v = mu.evaluate(p)?;
        let v = v.as_matrix()?;
        if !v.is_symmetric() || *v != moment_matrix(p).scale(&k) {
            failures.push(p.clone());
        }
    }
    Ok(FitResult::new(vec![k], failures))
}
