use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg::{affine_dimension, Vector};
use crate::scalar::Scalar;

use super::ops::contains_origin_interior;
use super::{Polytope, Simplex};

/// Pulling triangulation of the face spanned by `face` (vertex indices,
/// ascending) of affine dimension `k`: cone from the smallest vertex over
/// every facet of the face that misses it.
fn triangulate_face<T: Scalar>(
    vertices: &[Vector<T>],
    facet_sets: &[Vec<usize>],
    face: &[usize],
    k: usize,
) -> Vec<Vec<usize>> {
    let apex = face[0];
    if k == 0 {
        return vec![vec![apex]];
    }
    let mut subfaces = BTreeSet::new();
    for s in facet_sets {
        let g: Vec<usize> = face.iter().copied().filter(|i| s.binary_search(i).is_ok()).collect();
        if g.len() < k || g.len() == face.len() || g.first() == Some(&apex) {
            continue;
        }
        let pts: Vec<Vector<T>> = g.iter().map(|&i| vertices[i].clone()).collect();
        if affine_dimension(&pts) == k - 1 {
            subfaces.insert(g);
        }
    }
    let mut cells = Vec::new();
    for g in subfaces {
        for mut cell in triangulate_face(vertices, facet_sets, &g, k - 1) {
            cell.insert(0, apex);
            cells.push(cell);
        }
    }
    cells
}

fn cells_to_simplices<T: Scalar>(p: &Polytope<T>, cells: Vec<Vec<usize>>, origin: bool) -> Vec<Simplex<T>> {
    let n = p.dim();
    cells
        .into_iter()
        .map(|cell| {
            let mut vs: Vec<Vector<T>> = Vec::with_capacity(n + 1);
            if origin {
                vs.push(Vector::zeros(n));
            }
            vs.extend(cell.iter().map(|&i| p.vertices()[i].clone()));
            Simplex::new(vs).expect("triangulation cells are full-dimensional")
        })
        .collect()
}

/// Cones from the origin over a triangulation of each facet; each facet is
/// fanned from its lexicographically smallest vertex.
pub fn triangulate_fan<T: Scalar>(p: &Polytope<T>) -> Result<Vec<Simplex<T>>> {
    if !contains_origin_interior(p) {
        return Err(Error::OriginNotInterior);
    }
    let sets = p.facet_vertex_sets();
    let cells: Vec<Vec<usize>> =
        sets.iter().flat_map(|s| triangulate_face(p.vertices(), &sets, s, p.dim() - 1)).collect();
    Ok(cells_to_simplices(p, cells, true))
}

/// Pulling triangulation from the lexicographically smallest vertex; works
/// for any full-dimensional polytope.
pub fn triangulate<T: Scalar>(p: &Polytope<T>) -> Vec<Simplex<T>> {
    let sets = p.facet_vertex_sets();
    let all: Vec<usize> = (0..p.vertices().len()).collect();
    let cells = triangulate_face(p.vertices(), &sets, &all, p.dim());
    cells_to_simplices(p, cells, false)
}

/// Cells used for integration: the origin fan when it applies, otherwise
/// the pulling triangulation.
pub(crate) fn integration_cells<T: Scalar>(p: &Polytope<T>) -> Vec<Simplex<T>> {
    triangulate_fan(p).unwrap_or_else(|_| triangulate(p))
}

pub(crate) fn volume_of<T: Scalar>(p: &Polytope<T>) -> T {
    integration_cells(p).iter().fold(T::zero(), |acc, s| acc + s.volume())
}
