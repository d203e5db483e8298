use crate::error::{Error, Result};
use crate::geometry::{axis_box, contains_origin_interior, convex_hull, section_at_last_zero, Polytope};
use crate::linalg::Vector;
use crate::scalar::Scalar;

/// `[B, -c(x,1), d(y,1)]`: a base `B` in the hyperplane `x_n = 0` and two
/// apexes on opposite sides of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePyramidParams<T> {
    base: Polytope<T>,
    c: T,
    d: T,
    x: Vector<T>,
    y: Vector<T>,
}

impl<T: Scalar> DoublePyramidParams<T> {
    /// `base` lives in `R^{n-1}` and must contain the origin in its interior.
    pub fn new(base: Polytope<T>, c: T, d: T, x: Vector<T>, y: Vector<T>) -> Result<Self> {
        if !(c.is_positive() && d.is_positive()) {
            return Err(Error::InvalidConfiguration("apex heights c, d must be positive".into()));
        }
        let m = base.dim();
        if x.dim() != m || y.dim() != m {
            return Err(Error::DimensionMismatch(m, if x.dim() != m { x.dim() } else { y.dim() }));
        }
        if !contains_origin_interior(&base) {
            return Err(Error::InvalidConfiguration("base must contain the origin in its interior".into()));
        }
        Ok(DoublePyramidParams { base, c, d, x, y })
    }

    /// Planar case: `I = [-a e1, b e1]`, apexes `-c(x,1)` and `d(y,1)`.
    pub fn planar(a: T, b: T, c: T, d: T, x: T, y: T) -> Result<Self> {
        if !(a.is_positive() && b.is_positive()) {
            return Err(Error::InvalidConfiguration("segment ends a, b must be positive".into()));
        }
        Self::new(axis_box(&[-a], &[b]), c, d, Vector::new(vec![x]), Vector::new(vec![y]))
    }

    /// Straight planar pyramid, `x = y = 0`.
    pub fn straight(a: T, b: T, c: T, d: T) -> Result<Self> {
        Self::planar(a, b, c, d, T::zero(), T::zero())
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    pub fn base(&self) -> &Polytope<T> {
        &self.base
    }

    pub fn c(&self) -> &T {
        &self.c
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    pub fn x(&self) -> &Vector<T> {
        &self.x
    }

    pub fn y(&self) -> &Vector<T> {
        &self.y
    }

    /// `(a, b)` with `I = [-a, b]`, for planar parameters.
    pub fn segment(&self) -> Result<(T, T)> {
        if self.dim() != 2 {
            return Err(Error::WrongDimension { expected: 2, got: self.dim() });
        }
        let v = self.base.vertices();
        Ok((-v[0][0].clone(), v[1][0].clone()))
    }

    pub fn is_straight(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn lower_apex(&self) -> Vector<T> {
        self.x.extend(T::one()).scale(&-self.c.clone())
    }

    pub fn upper_apex(&self) -> Vector<T> {
        self.y.extend(T::one()).scale(&self.d)
    }

    /// Same base, new apexes.
    pub fn with_apexes(&self, c: T, x: Vector<T>, d: T, y: Vector<T>) -> Result<Self> {
        Self::new(self.base.clone(), c, d, x, y)
    }
}

pub fn make_double_pyramid<T: Scalar>(p: &DoublePyramidParams<T>) -> Polytope<T> {
    let mut pts: Vec<Vector<T>> = p.base.vertices().iter().map(|v| v.extend(T::zero())).collect();
    pts.push(p.lower_apex());
    pts.push(p.upper_apex());
    convex_hull(&pts).expect("apexes on both sides of a full-dimensional base span R^n")
}

/// True when the hull meets `x_n = 0` in exactly the base.
pub fn is_double_pyramid<T: Scalar>(p: &DoublePyramidParams<T>) -> bool {
    section_at_last_zero(&make_double_pyramid(p)).is_ok_and(|s| s == p.base)
}
