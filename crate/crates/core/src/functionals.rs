//! Concrete valuations and the handle type that wraps them.
//!
//! Integrals are exact: every polytope is cut into simplices and each
//! simplex contributes its closed-form volume, first moment and second
//! moment. For `S = conv(v_0, ..., v_n)`:
//!
//! ```text
//! int_S x dx     = vol(S) / (n + 1) * sum_i v_i
//! int_S x x^t dx = vol(S) / ((n + 1)(n + 2)) * (sum_i v_i v_i^t + (sum_i v_i)(sum_i v_i)^t)
//! ```

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{apply_linear_map, polar, Polytope, Simplex};
use crate::linalg::{LinearMap, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ValueKind {
    Scalar,
    Vector,
    Matrix,
}

impl ValueKind {
    pub fn name(self) -> &'static str {
        match self {
            ValueKind::Scalar => "scalar",
            ValueKind::Vector => "vector",
            ValueKind::Matrix => "matrix",
        }
    }
}

/// A value in `R`, `R^n` or `R^{n x n}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Value<T> {
    Scalar(T),
    Vector(Vector<T>),
    Matrix(Matrix<T>),
}

impl<T: Scalar> Value<T> {
    pub fn kind(&self) -> ValueKind {
        match self {
            Value::Scalar(_) => ValueKind::Scalar,
            Value::Vector(_) => ValueKind::Vector,
            Value::Matrix(_) => ValueKind::Matrix,
        }
    }

    pub fn zero_like(&self) -> Self {
        self.scale(&T::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Value::Scalar(s) => s.is_zero(),
            Value::Vector(v) => v.is_zero(),
            Value::Matrix(m) => m.is_zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a.clone() + b.clone())),
            (Value::Vector(a), Value::Vector(b)) if a.dim() == b.dim() => Ok(Value::Vector(a.add(b))),
            (Value::Matrix(a), Value::Matrix(b)) if a.rows() == b.rows() && a.cols() == b.cols() => {
                Ok(Value::Matrix(a.add(b)))
            }
            _ if self.kind() != other.kind() => {
                Err(Error::KindMismatch { expected: self.kind().name(), got: other.kind().name() })
            }
            _ => Err(Error::DimensionMismatch(self.len(), other.len())),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, k: &T) -> Self {
        match self {
            Value::Scalar(s) => Value::Scalar(s.clone() * k.clone()),
            Value::Vector(v) => Value::Vector(v.scale(k)),
            Value::Matrix(m) => Value::Matrix(m.scale(k)),
        }
    }

    fn len(&self) -> usize {
        match self {
            Value::Scalar(_) => 1,
            Value::Vector(v) => v.dim(),
            Value::Matrix(m) => m.rows() * m.cols(),
        }
    }

    /// Flattened entries, row-major for matrices.
    pub fn entries(&self) -> Vec<T> {
        match self {
            Value::Scalar(s) => vec![s.clone()],
            Value::Vector(v) => v.coords().to_vec(),
            Value::Matrix(m) => m.to_rows().into_iter().flatten().collect(),
        }
    }

    pub fn as_scalar(&self) -> Result<&T> {
        match self {
            Value::Scalar(s) => Ok(s),
            other => Err(Error::KindMismatch { expected: "scalar", got: other.kind().name() }),
        }
    }

    pub fn as_vector(&self) -> Result<&Vector<T>> {
        match self {
            Value::Vector(v) => Ok(v),
            other => Err(Error::KindMismatch { expected: "vector", got: other.kind().name() }),
        }
    }

    pub fn as_matrix(&self) -> Result<&Matrix<T>> {
        match self {
            Value::Matrix(m) => Ok(m),
            other => Err(Error::KindMismatch { expected: "matrix", got: other.kind().name() }),
        }
    }
}

impl<T: Scalar> fmt::Display for Value<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Vector(v) => write!(f, "{v}"),
            Value::Matrix(m) => {
                write!(f, "[")?;
                for i in 0..m.rows() {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    write!(f, "{}", Vector::new(m.row(i).to_vec()))?;
                }
                write!(f, "]")
            }
        }
    }
}

type EvalFn<T> = dyn Fn(&Polytope<T>) -> Result<Value<T>> + Send + Sync;

/// A named black-box map from polytopes to values of a fixed kind.
#[derive(Clone)]
pub struct ValuationHandle<T> {
    name: String,
    kind: ValueKind,
    eval: Arc<EvalFn<T>>,
}

impl<T: Scalar> ValuationHandle<T> {
    pub fn new<F>(name: impl Into<String>, kind: ValueKind, eval: F) -> Self
    where
        F: Fn(&Polytope<T>) -> Result<Value<T>> + Send + Sync + 'static,
    {
        ValuationHandle { name: name.into(), kind, eval: Arc::new(eval) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ValueKind {
        self.kind
    }

    pub fn evaluate(&self, p: &Polytope<T>) -> Result<Value<T>> {
        let v = (self.eval)(p)?;
        if v.kind() != self.kind {
            return Err(Error::KindMismatch { expected: self.kind.name(), got: v.kind().name() });
        }
        Ok(v)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// `sum_i k_i mu_i`; all handles must share one kind.
    pub fn linear_combination(terms: Vec<(T, ValuationHandle<T>)>) -> Result<Self> {
        let Some(kind) = terms.first().map(|(_, h)| h.kind) else {
            return Err(Error::Parse("empty linear combination".into()));
        };
        if let Some((_, h)) = terms.iter().find(|(_, h)| h.kind != kind) {
            return Err(Error::KindMismatch { expected: kind.name(), got: h.kind.name() });
        }
        let name = terms.iter().map(|(k, h)| format!("({k})*{}", h.name)).collect::<Vec<_>>().join(" + ");
        Ok(ValuationHandle::new(name, kind, move |p| {
            let mut acc: Option<Value<T>> = None;
            for (k, h) in &terms {
                let v = h.evaluate(p)?.scale(k);
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.add(&v)?,
                });
            }
            Ok(acc.expect("nonempty"))
        }))
    }

    pub fn scaled(&self, k: T) -> Self {
        let inner = self.clone();
        ValuationHandle::new(format!("({k})*{}", self.name), self.kind, move |p| Ok(inner.evaluate(p)?.scale(&k)))
    }
}

impl<T> fmt::Debug for ValuationHandle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ValuationHandle").field("name", &self.name).field("kind", &self.kind).finish()
    }
}

/// Volume, first and second moment of a polytope, accumulated in one pass.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Moments<T> {
    pub volume: T,
    pub first: Vector<T>,
    pub second: Matrix<T>,
}

fn simplex_moments<T: Scalar>(s: &Simplex<T>) -> Moments<T> {
    let n = s.dim();
    let vol = s.volume();
    let sum = s.vertex_sum();
    let first = sum.scale(&(vol.clone() / T::from_int(n as i64 + 1)));
    let gram = s
        .vertices()
        .iter()
        .fold(Matrix::zeros(n, n), |acc, v| acc.add(&Matrix::outer(v, v)))
        .add(&Matrix::outer(&sum, &sum));
    let second = gram.scale(&(vol.clone() / T::from_int(((n + 1) * (n + 2)) as i64)));
    Moments { volume: vol, first, second }
}

pub fn moments<T: Scalar>(p: &Polytope<T>) -> Moments<T> {
    let n = p.dim();
    let init = Moments { volume: T::zero(), first: Vector::zeros(n), second: Matrix::zeros(n, n) };
    crate::geometry::integration_cells(p).iter().map(simplex_moments).fold(init, |acc, m| Moments {
        volume: acc.volume + m.volume,
        first: acc.first.add(&m.first),
        second: acc.second.add(&m.second),
    })
}

/// Constant 1: every polytope here is a nonempty convex body.
pub fn euler_characteristic<T: Scalar>(_p: &Polytope<T>) -> T {
    T::one()
}

pub fn volume<T: Scalar>(p: &Polytope<T>) -> T {
    crate::geometry::integration_cells(p).iter().fold(T::zero(), |acc, s| acc + s.volume())
}

/// `m(P) = int_P x dx`.
pub fn moment_vector<T: Scalar>(p: &Polytope<T>) -> Vector<T> {
    let n = p.dim();
    crate::geometry::integration_cells(p).iter().fold(Vector::zeros(n), |acc, s| {
        let w = s.volume() / T::from_int(n as i64 + 1);
        acc.add(&s.vertex_sum().scale(&w))
    })
}

/// `M_2(P) = int_P x x^t dx`.
pub fn moment_matrix<T: Scalar>(p: &Polytope<T>) -> Matrix<T> {
    moments(p).second
}

/// Counter-clockwise quarter turn of the plane.
pub fn rotate_quarter<T: Scalar>(v: &Vector<T>) -> Result<Vector<T>> {
    if v.dim() != 2 {
        return Err(Error::WrongDimension { expected: 2, got: v.dim() });
    }
    Ok(Vector::new(vec![-v[1].clone(), v[0].clone()]))
}

pub fn euler_handle<T: Scalar>() -> ValuationHandle<T> {
    ValuationHandle::new("chi", ValueKind::Scalar, |p| Ok(Value::Scalar(euler_characteristic(p))))
}

pub fn volume_handle<T: Scalar>() -> ValuationHandle<T> {
    ValuationHandle::new("V", ValueKind::Scalar, |p| Ok(Value::Scalar(volume(p))))
}

pub fn moment_handle<T: Scalar>() -> ValuationHandle<T> {
    ValuationHandle::new("m", ValueKind::Vector, |p| Ok(Value::Vector(moment_vector(p))))
}

pub fn moment_matrix_handle<T: Scalar>() -> ValuationHandle<T> {
    ValuationHandle::new("M2", ValueKind::Matrix, |p| Ok(Value::Matrix(moment_matrix(p))))
}

/// `P -> base(P*)`.
pub fn polar_composite<T: Scalar>(base: &ValuationHandle<T>) -> ValuationHandle<T> {
    let inner = base.clone();
    ValuationHandle::new(format!("polar-{}", base.name()), base.kind(), move |p| inner.evaluate(&polar(p)?))
}

/// `P -> rho_{pi/2} base(P)` for a planar vector-valued `base`.
pub fn rotated<T: Scalar>(base: &ValuationHandle<T>) -> ValuationHandle<T> {
    let inner = base.clone();
    ValuationHandle::new(format!("rot-{}", base.name()), ValueKind::Vector, move |p| {
        Ok(Value::Vector(rotate_quarter(inner.evaluate(p)?.as_vector()?)?))
    })
}

/// `k0 chi(P) + k1 V(P) + k2 V(P*)`.
pub fn basis_valuation_scalar<T: Scalar>(k0: T, k1: T, k2: T) -> ValuationHandle<T> {
    let name = format!("({k0})*chi + ({k1})*V + ({k2})*polar-V");
    ValuationHandle::new(name, ValueKind::Scalar, move |p| {
        let mut acc = k0.clone() * euler_characteristic(p) + k1.clone() * volume(p);
        if !k2.is_zero() {
            acc = acc + k2.clone() * volume(&polar(p)?);
        }
        Ok(Value::Scalar(acc))
    })
}

/// `k1 m(P) + k2 rho_{pi/2} m(P*)` on planar polytopes.
pub fn basis_valuation_vector_2d<T: Scalar>(k1: T, k2: T) -> ValuationHandle<T> {
    let name = format!("({k1})*m + ({k2})*rot-polar-m");
    ValuationHandle::new(name, ValueKind::Vector, move |p| {
        if p.dim() != 2 {
            return Err(Error::WrongDimension { expected: 2, got: p.dim() });
        }
        let mut acc = moment_vector(p).scale(&k1);
        if !k2.is_zero() {
            acc = acc.add(&rotate_quarter(&moment_vector(&polar(p)?))?.scale(&k2));
        }
        Ok(Value::Vector(acc))
    })
}

/// `theta mu(theta^{-1} P)` for a vector-valued `mu`.
fn conjugated_value<T: Scalar>(mu: &ValuationHandle<T>, p: &Polytope<T>, theta: &LinearMap<T>) -> Result<Vector<T>> {
    let pulled = apply_linear_map(&theta.inverse()?, p)?;
    Ok(theta.apply(mu.evaluate(&pulled)?.as_vector()?))
}

/// `(mu+(P), mu-(P))` with `mu+- = (mu(P) +- theta mu(theta^{-1} P)) / 2`.
pub fn decompose_even_odd_with<T: Scalar>(
    mu: &ValuationHandle<T>,
    p: &Polytope<T>,
    theta: &LinearMap<T>,
) -> Result<(Vector<T>, Vector<T>)> {
    if mu.kind() != ValueKind::Vector {
        return Err(Error::KindMismatch { expected: "vector", got: mu.kind().name() });
    }
    if theta.dim() != p.dim() {
        return Err(Error::DimensionMismatch(theta.dim(), p.dim()));
    }
    let base = mu.evaluate(p)?;
    let base = base.as_vector()?;
    let twisted = conjugated_value(mu, p, theta)?;
    let half = T::half();
    Ok((base.add(&twisted).scale(&half), base.sub(&twisted).scale(&half)))
}

/// Even/odd split with `theta = diag(-1, 1, ..., 1)`.
pub fn decompose_even_odd<T: Scalar>(mu: &ValuationHandle<T>, p: &Polytope<T>) -> Result<(Vector<T>, Vector<T>)> {
    decompose_even_odd_with(mu, p, &LinearMap::first_axis_reflection(p.dim()))
}

/// Handle for `mu+` built with the given `theta`.
pub fn even_part<T: Scalar>(mu: &ValuationHandle<T>, theta: LinearMap<T>) -> ValuationHandle<T> {
    let inner = mu.clone();
    ValuationHandle::new(format!("even({})", mu.name()), ValueKind::Vector, move |p| {
        Ok(Value::Vector(decompose_even_odd_with(&inner, p, &theta)?.0))
    })
}

/// Handle for `mu-` built with the given `theta`.
pub fn odd_part<T: Scalar>(mu: &ValuationHandle<T>, theta: LinearMap<T>) -> ValuationHandle<T> {
    let inner = mu.clone();
    ValuationHandle::new(format!("odd({})", mu.name()), ValueKind::Vector, move |p| {
        Ok(Value::Vector(decompose_even_odd_with(&inner, p, &theta)?.1))
    })
}
