//! Double description method for polyhedral cones.
//!
//! Given homogeneous constraints `a_j . y <= 0` in `R^d`, computes a minimal
//! generating system: a basis of the lineality space and the extreme rays
//! modulo that space. Constraints are added one at a time; adjacency of rays
//! is decided with the combinatorial test on zero sets.

use crate::linalg::Vector;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn empty(m: usize) -> Self {
        ZeroSet(vec![0; m.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Self) -> Self {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray<T> {
    dir: Vector<T>,
    zeros: ZeroSet,
}

/// Generators of `{ y : a . y <= 0 for all a in constraints }`.
#[derive(Clone, Debug)]
pub struct ConeGenerators<T> {
    pub lineality: Vec<Vector<T>>,
    pub rays: Vec<Vector<T>>,
}

fn normalized<T: Scalar>(v: Vector<T>) -> Vector<T> {
    let mut c = v.into_coords();
    T::normalize_direction(&mut c);
    Vector::new(c)
}

/// Runs the double description method. All constraints must have length `d`.
pub fn cone_generators<T: Scalar>(d: usize, constraints: &[Vector<T>]) -> ConeGenerators<T> {
    let m = constraints.len();
    let mut lineality: Vec<Vector<T>> = (0..d).map(|i| Vector::unit(d, i)).collect();
    let mut rays: Vec<Ray<T>> = Vec::new();
    let mut processed = ZeroSet::empty(m);

    for (j, a) in constraints.iter().enumerate() {
        debug_assert_eq!(a.dim(), d);
        if let Some(idx) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lineality.swap_remove(idx);
            let mut al = a.dot(&l);
            if al.is_positive() {
                l = l.neg();
                al = -al;
            }
            for other in lineality.iter_mut() {
                let f = a.dot(other) / al.clone();
                if !f.is_zero() {
                    *other = other.sub(&l.scale(&f));
                }
            }
            for r in rays.iter_mut() {
                let f = a.dot(&r.dir) / al.clone();
                if !f.is_zero() {
                    r.dir = normalized(r.dir.sub(&l.scale(&f)));
                }
                r.zeros.insert(j);
            }
            rays.push(Ray { dir: normalized(l), zeros: processed.clone() });
        } else {
            let slacks: Vec<T> = rays.iter().map(|r| a.dot(&r.dir)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| slacks[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| slacks[i].is_negative()).collect();
            let min_common = (d - lineality.len()).saturating_sub(2);

            let mut fresh = Vec::new();
            for &p in &pos {
                for &q in &neg {
                    let common = rays[p].zeros.intersect(&rays[q].zeros);
                    if common.len() < min_common {
                        continue;
                    }
                    let blocked =
                        rays.iter().enumerate().any(|(r, ray)| r != p && r != q && common.is_subset_of(&ray.zeros));
                    if blocked {
                        continue;
                    }
                    let dir = rays[q].dir.scale(&slacks[p]).sub(&rays[p].dir.scale(&slacks[q]));
                    let mut zeros = common;
                    zeros.insert(j);
                    fresh.push(Ray { dir: normalized(dir), zeros });
                }
            }

            let mut kept: Vec<Ray<T>> = Vec::with_capacity(rays.len() + fresh.len());
            for (i, mut r) in rays.into_iter().enumerate() {
                if slacks[i].is_zero() {
                    r.zeros.insert(j);
                    kept.push(r);
                } else if slacks[i].is_negative() {
                    kept.push(r);
                }
            }
            kept.extend(fresh);
            rays = kept;
        }
        processed.insert(j);
    }

    ConeGenerators { lineality, rays: rays.into_iter().map(|r| r.dir).collect() }
}
