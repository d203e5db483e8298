//! Exact convex polytope kernel.
//!
//! A [`Polytope`] is stored by its extreme points in lexicographic order, so
//! two polytopes are equal exactly when their vertex sequences are. The
//! facet list is derived lazily and cached.

mod dd;
mod families;
mod hull;
mod ops;
mod triangulate;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, Matrix, Vector};
use crate::scalar::{factorial, Scalar};

pub use dd::{cone_generators, ConeGenerators};
pub use families::{axis_box, cross_polytope, cube, simplex_hull};
pub use hull::{convex_hull, facet_enumeration, vertex_enumeration};
pub use ops::{
    apply_linear_map, contains_origin_interior, intersect, intersect_halfspaces, polar, polytope_equal,
    section_at_last_zero, split_by_slab, union_if_convex,
};
pub(crate) use triangulate::integration_cells;
pub use triangulate::{triangulate, triangulate_fan};

/// `{ x : normal . x <= offset }`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Halfspace<T> {
    pub normal: Vector<T>,
    pub offset: T,
}

impl<T: Scalar> Halfspace<T> {
    /// Panics on a zero normal.
    pub fn new(normal: Vector<T>, offset: T) -> Self {
        assert!(!normal.is_zero(), "halfspace normal must be nonzero");
        Halfspace { normal, offset }
    }

    /// Canonical positive rescaling of `(normal, offset)`.
    pub fn normalized(&self) -> Self {
        let mut c = self.normal.coords().to_vec();
        c.push(self.offset.clone());
        T::normalize_direction(&mut c);
        let offset = c.pop().expect("nonempty");
        Halfspace { normal: Vector::new(c), offset }
    }

    pub fn slack(&self, x: &Vector<T>) -> T {
        self.offset.clone() - self.normal.dot(x)
    }

    pub fn contains(&self, x: &Vector<T>) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn is_tight(&self, x: &Vector<T>) -> bool {
        self.slack(x).is_zero()
    }
}

/// A full-dimensional convex polytope in `R^dim`.
#[derive(Clone)]
pub struct Polytope<T> {
    dim: usize,
    vertices: Vec<Vector<T>>,
    facets: OnceLock<Vec<Halfspace<T>>>,
}

impl<T: Scalar> Polytope<T> {
    /// Hull of arbitrary points; see [`convex_hull`].
    pub fn from_points(points: &[Vector<T>]) -> Result<Self> {
        convex_hull(points)
    }

    /// Bounded intersection of halfspaces in `R^dim`.
    pub fn from_halfspaces(dim: usize, halfspaces: &[Halfspace<T>]) -> Result<Self> {
        let vertices = vertex_enumeration(dim, halfspaces)?;
        if vertices.len() <= dim || affine_dimension(&vertices) < dim {
            return Err(Error::EmptyOrDegenerateIntersection);
        }
        Ok(Self::from_extreme_points(dim, vertices, None))
    }

    /// Caller guarantees `vertices` are exactly the extreme points, sorted and distinct.
    pub(crate) fn from_extreme_points(dim: usize, vertices: Vec<Vector<T>>, facets: Option<Vec<Halfspace<T>>>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let cell = OnceLock::new();
        if let Some(f) = facets {
            let _ = cell.set(f);
        }
        Polytope { dim, vertices, facets: cell }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector<T>] {
        &self.vertices
    }

    /// Irredundant facet list, outward normals, sorted canonically.
    pub fn facets(&self) -> &[Halfspace<T>] {
        self.facets.get_or_init(|| {
            hull::facets_of_points(self.dim, &self.vertices).expect("polytope invariant: vertices span R^n")
        })
    }

    /// Vertex indices lying on each facet, in facet order.
    pub fn facet_vertex_sets(&self) -> Vec<Vec<usize>> {
        self.facets()
            .iter()
            .map(|h| (0..self.vertices.len()).filter(|&i| h.is_tight(&self.vertices[i])).collect())
            .collect()
    }

    pub fn contains(&self, x: &Vector<T>) -> bool {
        self.facets().iter().all(|h| h.contains(x))
    }

    pub fn contains_in_interior(&self, x: &Vector<T>) -> bool {
        self.facets().iter().all(|h| h.slack(x).is_positive())
    }

    /// `r P` for `r != 0`.
    pub fn scaled(&self, r: &T) -> Self {
        assert!(!r.is_zero(), "zero dilation");
        let mut vertices: Vec<_> = self.vertices.iter().map(|v| v.scale(r)).collect();
        vertices.sort();
        Self::from_extreme_points(self.dim, vertices, None)
    }

    pub fn centroid_vertex_mean(&self) -> Vector<T> {
        let k = T::from_int(self.vertices.len() as i64);
        Vector::sum(self.dim, &self.vertices).scale(&(T::one() / k))
    }
}

impl<T: PartialEq> PartialEq for Polytope<T> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl<T: Eq> Eq for Polytope<T> {}

impl<T: Hash> Hash for Polytope<T> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.vertices.hash(state);
    }
}

impl<T: fmt::Debug> fmt::Debug for Polytope<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope").field("dim", &self.dim).field("vertices", &self.vertices).finish()
    }
}

/// `n + 1` affinely independent points in `R^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Simplex<T> {
    vertices: Vec<Vector<T>>,
}

impl<T: Scalar> Simplex<T> {
    pub fn new(vertices: Vec<Vector<T>>) -> Result<Self> {
        let n = vertices.first().map_or(0, Vector::dim);
        if vertices.len() != n + 1 || vertices.iter().any(|v| v.dim() != n) {
            return Err(Error::DegenerateInput("a simplex needs n + 1 points in R^n".into()));
        }
        let s = Simplex { vertices };
        if s.signed_det().is_zero() {
            return Err(Error::DegenerateInput("simplex vertices are affinely dependent".into()));
        }
        Ok(s)
    }

    pub fn vertices(&self) -> &[Vector<T>] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `det(v_1 - v_0, ..., v_n - v_0)`.
    pub fn signed_det(&self) -> T {
        let v0 = &self.vertices[0];
        Matrix::from_rows(self.vertices[1..].iter().map(|v| v.sub(v0).into_coords()).collect()).determinant()
    }

    pub fn volume(&self) -> T {
        self.signed_det().abs() / factorial::<T>(self.dim())
    }

    /// `sum_i v_i`.
    pub fn vertex_sum(&self) -> Vector<T> {
        Vector::sum(self.dim(), &self.vertices)
    }
}
