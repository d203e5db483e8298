use crate::error::{Error, Result};
use crate::linalg::{LinearMap, Vector};
use crate::scalar::Scalar;

use super::hull::convex_hull;
use super::triangulate::volume_of;
use super::{Halfspace, Polytope};

pub fn contains_origin_interior<T: Scalar>(p: &Polytope<T>) -> bool {
    p.facets().iter().all(|h| h.offset.is_positive())
}

/// `P* = { y : v . y <= 1 for every vertex v of P }`.
///
/// The vertices of `P*` are the facet normals of `P` scaled to offset one,
/// and the vertices of `P` give the facets of `P*`, so both representations
/// are filled in without another hull computation.
pub fn polar<T: Scalar>(p: &Polytope<T>) -> Result<Polytope<T>> {
    if !contains_origin_interior(p) {
        return Err(Error::OriginNotInterior);
    }
    let mut vertices: Vec<Vector<T>> =
        p.facets().iter().map(|h| h.normal.scale(&(T::one() / h.offset.clone()))).collect();
    vertices.sort();
    let mut facets: Vec<Halfspace<T>> =
        p.vertices().iter().map(|v| Halfspace::new(v.clone(), T::one()).normalized()).collect();
    facets.sort();
    Ok(Polytope::from_extreme_points(p.dim(), vertices, Some(facets)))
}

/// `phi P`. Facets are carried along when `P` already has them.
pub fn apply_linear_map<T: Scalar>(phi: &LinearMap<T>, p: &Polytope<T>) -> Result<Polytope<T>> {
    if phi.dim() != p.dim() {
        return Err(Error::DimensionMismatch(phi.dim(), p.dim()));
    }
    if !phi.is_invertible() {
        return Err(Error::SingularMap);
    }
    let mut vertices: Vec<Vector<T>> = p.vertices().iter().map(|v| phi.apply(v)).collect();
    vertices.sort();
    let facets = match p.facets.get() {
        Some(fs) => {
            let dual = phi.inverse_transpose()?;
            let mut out: Vec<Halfspace<T>> =
                fs.iter().map(|h| Halfspace::new(dual.apply(&h.normal), h.offset.clone()).normalized()).collect();
            out.sort();
            Some(out)
        }
        None => None,
    };
    Ok(Polytope::from_extreme_points(p.dim(), vertices, facets))
}

pub fn intersect<T: Scalar>(p: &Polytope<T>, q: &Polytope<T>) -> Result<Polytope<T>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    if p == q {
        return Ok(p.clone());
    }
    intersect_halfspaces(p, q.facets())
}

/// `P` cut by extra halfspaces.
pub fn intersect_halfspaces<T: Scalar>(p: &Polytope<T>, extra: &[Halfspace<T>]) -> Result<Polytope<T>> {
    let mut all = p.facets().to_vec();
    all.extend(extra.iter().map(Halfspace::normalized));
    all.sort();
    all.dedup();
    Polytope::from_halfspaces(p.dim(), &all)
}

/// Convex hull of `P` and `Q`, provided it equals `P u Q` as a set.
///
/// `[P, Q] \ (P u Q)` is relatively open in the full-dimensional body
/// `[P, Q]`, so it is empty exactly when the volumes agree.
pub fn union_if_convex<T: Scalar>(p: &Polytope<T>, q: &Polytope<T>) -> Result<Polytope<T>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    if p == q {
        return Ok(p.clone());
    }
    let mut pts = p.vertices().to_vec();
    pts.extend_from_slice(q.vertices());
    let hull = convex_hull(&pts)?;
    let overlap = match intersect(p, q) {
        Ok(i) => volume_of(&i),
        Err(Error::EmptyOrDegenerateIntersection) => T::zero(),
        Err(e) => return Err(e),
    };
    if volume_of(&hull) == volume_of(p) + volume_of(q) - overlap {
        Ok(hull)
    } else {
        Err(Error::NonConvexUnion)
    }
}

/// `K = P n { d.x <= hi }` and `L = P n { d.x >= lo }`.
pub fn split_by_slab<T: Scalar>(
    p: &Polytope<T>,
    direction: &Vector<T>,
    lo: &T,
    hi: &T,
) -> Result<(Polytope<T>, Polytope<T>)> {
    if direction.dim() != p.dim() {
        return Err(Error::DimensionMismatch(p.dim(), direction.dim()));
    }
    if direction.is_zero() {
        return Err(Error::InvalidSlab("zero direction".into()));
    }
    if !(lo.is_negative() && hi.is_positive()) {
        return Err(Error::InvalidSlab("need lo < 0 < hi".into()));
    }
    let heights: Vec<T> = p.vertices().iter().map(|v| direction.dot(v)).collect();
    let min = heights.iter().min().expect("nonempty");
    let max = heights.iter().max().expect("nonempty");
    if lo <= min || hi >= max {
        return Err(Error::InvalidSlab("cut plane misses the interior".into()));
    }
    let upper_cut = Halfspace::new(direction.clone(), hi.clone());
    let lower_cut = Halfspace::new(direction.neg(), -lo.clone());
    let k = intersect_halfspaces(p, std::slice::from_ref(&upper_cut))
        .map_err(|_| Error::InvalidSlab("upper piece is degenerate".into()))?;
    let l = intersect_halfspaces(p, std::slice::from_ref(&lower_cut))
        .map_err(|_| Error::InvalidSlab("lower piece is degenerate".into()))?;
    let both = intersect(&k, &l).map_err(|_| Error::InvalidSlab("overlap is degenerate".into()))?;
    for body in [p, &k, &l, &both] {
        if !contains_origin_interior(body) {
            return Err(Error::InvalidSlab("a piece does not contain the origin in its interior".into()));
        }
    }
    Ok((k, l))
}

pub fn polytope_equal<T: Scalar>(p: &Polytope<T>, q: &Polytope<T>) -> bool {
    p == q
}

/// `P n { x_n = 0 }` as a polytope in `R^{n-1}`.
///
/// The section of `conv(V)` is spanned by the points of `V` on the
/// hyperplane together with the crossing points of segments joining
/// vertices on opposite sides.
pub fn section_at_last_zero<T: Scalar>(p: &Polytope<T>) -> Result<Polytope<T>> {
    let n = p.dim();
    if n < 2 {
        return Err(Error::WrongDimension { expected: 2, got: n });
    }
    let last = n - 1;
    let mut pts = Vec::new();
    let (below, rest): (Vec<&Vector<T>>, Vec<&Vector<T>>) = p.vertices().iter().partition(|v| v[last].is_negative());
    let above: Vec<&Vector<T>> = rest.iter().copied().filter(|v| v[last].is_positive()).collect();
    pts.extend(rest.iter().filter(|v| v[last].is_zero()).map(|v| v.truncate_last()));
    for u in &below {
        for w in &above {
            let t = u[last].clone() / (u[last].clone() - w[last].clone());
            pts.push(u.add(&w.sub(u).scale(&t)).truncate_last());
        }
    }
    convex_hull(&pts)
}
