//! Vectors, square matrices and invertible linear maps over an exact field.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A point or direction in `R^n`. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Vector(coords)
    }

    pub fn zeros(n: usize) -> Self {
        Vector(vec![T::zero(); n])
    }

    /// The basis vector `e_{i+1}` of `R^n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<T> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(T::is_zero)
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() + b.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.clone() - b.clone()).collect())
    }

    pub fn scale(&self, k: &T) -> Self {
        Vector(self.0.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn neg(&self) -> Self {
        Vector(self.0.iter().map(|a| -a.clone()).collect())
    }

    /// Appends one coordinate: `(x, last)`.
    pub fn extend(&self, last: T) -> Self {
        let mut c = self.0.clone();
        c.push(last);
        Vector(c)
    }

    /// Drops the last coordinate.
    pub fn truncate_last(&self) -> Self {
        Vector(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Self>>(n: usize, it: I) -> Self {
        it.into_iter().fold(Self::zeros(n), |acc, v| acc.add(v))
    }
}

impl<T> std::ops::Index<usize> for Vector<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A dense rectangular matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// `u v^t`.
    pub fn outer(u: &Vector<T>, v: &Vector<T>) -> Self {
        let mut m = Self::zeros(u.dim(), v.dim());
        for i in 0..u.dim() {
            for j in 0..v.dim() {
                m.data[i * v.dim() + j] = u[i].clone() * v[j].clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    m.data[idx] = m.data[idx].clone() + a.clone() * other.get(k, j).clone();
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Vector<T> {
        assert_eq!(self.cols, v.dim());
        Vector::new(
            (0..self.rows)
                .map(|i| self.row(i).iter().zip(v.coords()).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, k: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * k.clone()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Exact determinant by Gaussian elimination. Panics if not square.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return T::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = det * pivot.clone();
            for r in col + 1..n {
                let f = a.get(r, col).clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c).clone() - f.clone() * a.get(col, c).clone();
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = T::one() / self.get(row, col).clone();
            for c in 0..self.cols {
                let v = self.get(row, c).clone() * inv.clone();
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let f = self.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..self.cols {
                    let v = self.get(r, c).clone() - f.clone() * self.get(row, c).clone();
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, T::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMap);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = rhs` for an overdetermined but consistent system.
    ///
    /// Returns `Err(SingularTrainingSet)` when the columns are dependent and
    /// `Ok(None)` when the system is inconsistent.
    pub fn solve_exact(&self, rhs: &[T]) -> Result<Option<Vec<T>>> {
        assert_eq!(rhs.len(), self.rows);
        let k = self.cols;
        let mut aug = Self::zeros(self.rows, k + 1);
        for i in 0..self.rows {
            for j in 0..k {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, k, rhs[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&k) {
            if self.rank() < k {
                return Err(Error::SingularTrainingSet);
            }
            return Ok(None);
        }
        if pivots.len() < k {
            return Err(Error::SingularTrainingSet);
        }
        Ok(Some((0..k).map(|i| aug.get(i, k).clone()).collect()))
    }
}

/// Rank of a set of vectors, all of the same dimension.
pub fn rank_of<T: Scalar>(vectors: &[Vector<T>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.iter().map(|v| v.coords().to_vec()).collect()).rank()
}

/// Dimension of the affine hull of `points` (`-1` is reported as `0` for an empty set).
pub fn affine_dimension<T: Scalar>(points: &[Vector<T>]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => rank_of(&rest.iter().map(|p| p.sub(p0)).collect::<Vec<_>>()),
    }
}

/// An `n x n` matrix together with its exact determinant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearMap<T> {
    matrix: Matrix<T>,
    det: T,
}

impl<T: Scalar> LinearMap<T> {
    /// Panics if `matrix` is not square.
    pub fn new(matrix: Matrix<T>) -> Self {
        let det = matrix.determinant();
        LinearMap { matrix, det }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("linear map must be a non-empty square grid".into()));
        }
        Ok(Self::new(Matrix::from_rows(rows)))
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n), det: T::one() }
    }

    pub fn diagonal(entries: &[T]) -> Self {
        Self::new(Matrix::diagonal(entries))
    }

    /// The reflection `diag(-1, 1, ..., 1)`.
    pub fn first_axis_reflection(n: usize) -> Self {
        let mut d = vec![T::one(); n];
        d[0] = -T::one();
        Self::diagonal(&d)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn det(&self) -> &T {
        &self.det
    }

    pub fn is_invertible(&self) -> bool {
        !self.det.is_zero()
    }

    pub fn apply(&self, v: &Vector<T>) -> Vector<T> {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, inner: &Self) -> Self {
        LinearMap { matrix: self.matrix.mul(&inner.matrix), det: self.det.clone() * inner.det.clone() }
    }

    pub fn transpose(&self) -> Self {
        LinearMap { matrix: self.matrix.transpose(), det: self.det.clone() }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::SingularMap);
        }
        Ok(LinearMap { matrix: self.matrix.inverse()?, det: T::one() / self.det.clone() })
    }

    /// `phi^{-t}`, the map acting on polar bodies.
    pub fn inverse_transpose(&self) -> Result<Self> {
        Ok(self.inverse()?.transpose())
    }

    /// `phi A phi^t`.
    pub fn congruence(&self, a: &Matrix<T>) -> Matrix<T> {
        self.matrix.mul(a).mul(&self.matrix.transpose())
    }
}
