use crate::error::Result;
use crate::linalg::Vector;
use crate::scalar::Scalar;

use super::{convex_hull, Halfspace, Polytope};

/// `[-1, 1]^n`.
pub fn cube<T: Scalar>(n: usize) -> Polytope<T> {
    let lo = vec![-T::one(); n];
    let hi = vec![T::one(); n];
    axis_box(&lo, &hi)
}

/// `prod_i [lo_i, hi_i]`; panics unless `lo_i < hi_i`.
pub fn axis_box<T: Scalar>(lo: &[T], hi: &[T]) -> Polytope<T> {
    let n = lo.len();
    assert_eq!(n, hi.len());
    assert!(lo.iter().zip(hi).all(|(a, b)| a < b), "empty box");
    let mut vertices: Vec<Vector<T>> = (0..1usize << n)
        .map(|mask| {
            Vector::new((0..n).map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() }).collect())
        })
        .collect();
    vertices.sort();
    let mut facets = Vec::with_capacity(2 * n);
    for i in 0..n {
        facets.push(Halfspace::new(Vector::unit(n, i), hi[i].clone()).normalized());
        facets.push(Halfspace::new(Vector::unit(n, i).neg(), -lo[i].clone()).normalized());
    }
    facets.sort();
    Polytope::from_extreme_points(n, vertices, Some(facets))
}

/// `conv{ +-e_i }`.
pub fn cross_polytope<T: Scalar>(n: usize) -> Polytope<T> {
    let mut vertices: Vec<Vector<T>> = (0..n).flat_map(|i| [Vector::unit(n, i), Vector::unit(n, i).neg()]).collect();
    vertices.sort();
    Polytope::from_extreme_points(n, vertices, None)
}

/// Hull of `n + 1` points; errors if they are affinely dependent.
pub fn simplex_hull<T: Scalar>(points: &[Vector<T>]) -> Result<Polytope<T>> {
    convex_hull(points)
}
