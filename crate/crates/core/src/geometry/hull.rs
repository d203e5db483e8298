use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, rank_of, Vector};
use crate::scalar::Scalar;

use super::dd::cone_generators;
use super::{Halfspace, Polytope};

/// Facets of `conv(points)`: extreme rays of `{ (a, b) : a . v <= b for all v }`.
pub(super) fn facets_of_points<T: Scalar>(n: usize, points: &[Vector<T>]) -> Result<Vec<Halfspace<T>>> {
    let cons: Vec<Vector<T>> = points.iter().map(|p| p.extend(-T::one())).collect();
    let gens = cone_generators(n + 1, &cons);
    if !gens.lineality.is_empty() {
        return Err(Error::DegenerateInput("points do not span the ambient space".into()));
    }
    let mut facets: Vec<Halfspace<T>> = gens
        .rays
        .into_iter()
        .filter_map(|r| {
            let offset = r[n].clone();
            let normal = r.truncate_last();
            (!normal.is_zero()).then(|| Halfspace::new(normal, offset).normalized())
        })
        .collect();
    facets.sort();
    facets.dedup();
    Ok(facets)
}

/// Canonical polytope spanned by `points`; non-extreme and repeated points are dropped.
pub fn convex_hull<T: Scalar>(points: &[Vector<T>]) -> Result<Polytope<T>> {
    let Some(n) = points.first().map(Vector::dim) else {
        return Err(Error::DegenerateInput("no points".into()));
    };
    if n == 0 {
        return Err(Error::DegenerateInput("zero-dimensional ambient space".into()));
    }
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch(n, p.dim()));
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= n || affine_dimension(&pts) < n {
        return Err(Error::DegenerateInput("points are not full-dimensional".into()));
    }
    let facets = facets_of_points(n, &pts)?;
    let vertices: Vec<Vector<T>> = pts
        .into_iter()
        .filter(|p| {
            let tight: Vec<Vector<T>> = facets.iter().filter(|h| h.is_tight(p)).map(|h| h.normal.clone()).collect();
            tight.len() >= n && rank_of(&tight) == n
        })
        .collect();
    Ok(Polytope::from_extreme_points(n, vertices, Some(facets)))
}

/// Irredundant H-representation of `p`.
pub fn facet_enumeration<T: Scalar>(p: &Polytope<T>) -> Vec<Halfspace<T>> {
    p.facets().to_vec()
}

/// Vertices of the bounded polyhedron `{ x in R^n : h.normal . x <= h.offset }`.
///
/// Returns the sorted extreme points; an empty vector when the system is
/// infeasible. Unbounded systems are rejected.
pub fn vertex_enumeration<T: Scalar>(n: usize, halfspaces: &[Halfspace<T>]) -> Result<Vec<Vector<T>>> {
    if let Some(h) = halfspaces.iter().find(|h| h.normal.dim() != n) {
        return Err(Error::DimensionMismatch(n, h.normal.dim()));
    }
    // Homogenize: (x, t) with normal . x - offset t <= 0 and t >= 0.
    let mut cons: Vec<Vector<T>> = halfspaces.iter().map(|h| h.normal.extend(-h.offset.clone())).collect();
    cons.push(Vector::zeros(n).extend(-T::one()));
    let gens = cone_generators(n + 1, &cons);
    if !gens.lineality.is_empty() {
        return Err(Error::DegenerateInput("halfspace system is unbounded".into()));
    }
    let mut out = Vec::with_capacity(gens.rays.len());
    for r in gens.rays {
        let t = r[n].clone();
        if t.is_zero() {
            return Err(Error::DegenerateInput("halfspace system is unbounded".into()));
        }
        out.push(r.truncate_last().scale(&(T::one() / t)));
    }
    out.sort();
    out.dedup();
    Ok(out)
}
