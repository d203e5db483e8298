use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{is_double_pyramid, make_double_pyramid, DoublePyramidParams};
use crate::error::{Error, Result};
use crate::geometry::{apply_linear_map, axis_box, contains_origin_interior, convex_hull, cross_polytope, Polytope};
use crate::linalg::{LinearMap, Matrix, Vector};
use crate::scalar::Scalar;

use super::{DetSign, TrialBudget};

/// Hull attempts before giving up on an origin-interior sample.
pub const MAX_GENERATOR_RETRIES: usize = 100;

/// Diagonal entries for GL(n) samples.
const GL_DIAGONAL: [(i64, i64); 7] = [(1, 3), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1)];

/// Deterministic source of random exact data for one trial.
///
/// Each trial owns a ChaCha stream keyed by `(seed, trial index)`, so the data
/// a trial sees does not depend on which thread runs it or in what order.
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn for_trial(budget: &TrialBudget, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
        rng.set_stream(index);
        Sampler { rng, bound: budget.coeff_bound.max(1) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    /// `p / q` with `|p| <= bound`, `1 <= q <= bound`.
    pub fn rational<T: Scalar>(&mut self) -> T {
        let p = self.int(-self.bound, self.bound);
        let q = self.int(1, self.bound);
        T::ratio(p, q)
    }

    /// `p / q` with `1 <= p, q <= bound`.
    pub fn positive<T: Scalar>(&mut self) -> T {
        let p = self.int(1, self.bound);
        let q = self.int(1, self.bound);
        T::ratio(p, q)
    }

    pub fn point<T: Scalar>(&mut self, n: usize) -> Vector<T> {
        Vector::new((0..n).map(|_| self.rational()).collect())
    }

    /// Hull of `2n..=3n` random points, resampled until the origin is interior.
    pub fn random_hull<T: Scalar>(&mut self, n: usize) -> Result<Polytope<T>> {
        for _ in 0..MAX_GENERATOR_RETRIES {
            let k = self.int(2 * n as i64, 3 * n as i64) as usize;
            let pts: Vec<Vector<T>> = (0..k).map(|_| self.point(n)).collect();
            match convex_hull(&pts) {
                Ok(p) if contains_origin_interior(&p) => return Ok(p),
                Ok(_) | Err(Error::DegenerateInput(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::GeneratorExhausted(MAX_GENERATOR_RETRIES))
    }

    /// A box, a stretched cross-polytope or a double pyramid, with random
    /// rational parameters.
    pub fn structured<T: Scalar>(&mut self, n: usize) -> Polytope<T> {
        let family = if n == 1 { 0 } else { self.int(0, 2) };
        match family {
            0 => self.random_box(n),
            1 => {
                let diag: Vec<T> = (0..n).map(|_| self.positive()).collect();
                apply_linear_map(&LinearMap::diagonal(&diag), &cross_polytope(n)).expect("positive diagonal")
            }
            _ => make_double_pyramid(&self.double_pyramid_params(n)),
        }
    }

    fn random_box<T: Scalar>(&mut self, n: usize) -> Polytope<T> {
        let lo: Vec<T> = (0..n).map(|_| -self.positive::<T>()).collect();
        let hi: Vec<T> = (0..n).map(|_| self.positive()).collect();
        axis_box(&lo, &hi)
    }

    /// Random box base; apexes slanted on a coin flip when the slanted body is
    /// still a double pyramid, straight otherwise.
    pub fn double_pyramid_params<T: Scalar>(&mut self, n: usize) -> DoublePyramidParams<T> {
        assert!(n >= 2, "double pyramids need n >= 2");
        let base = self.random_box(n - 1);
        let (c, d) = (self.positive::<T>(), self.positive::<T>());
        let straight = DoublePyramidParams::new(base, c.clone(), d.clone(), Vector::zeros(n - 1), Vector::zeros(n - 1))
            .expect("box base contains the origin");
        if self.coin() {
            let (x, y) = (self.point(n - 1), self.point(n - 1));
            if let Ok(p) = straight.with_apexes(c, x, d, y) {
                if is_double_pyramid(&p) {
                    return p;
                }
            }
        }
        straight
    }

    /// Trial polytope: structured on every fifth trial, random hull otherwise.
    pub fn polytope<T: Scalar>(&mut self, n: usize, index: u64) -> Result<Polytope<T>> {
        if index.is_multiple_of(5) {
            Ok(self.structured(n))
        } else {
            self.random_hull(n)
        }
    }

    /// Signed permutation followed by up to six shears `I + s E_ij`,
    /// `s` in `{-2, -1, 1, 2}`; the first row is negated if needed to hit the
    /// requested determinant sign.
    pub fn unimodular<T: Scalar>(&mut self, n: usize, sign: DetSign) -> LinearMap<T> {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut self.rng);
        let mut m = Matrix::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            let s = if self.coin() { 1 } else { -1 };
            m.set(i, j, T::from_int(s));
        }
        if n >= 2 {
            for _ in 0..self.int(1, 6) {
                let i = self.int(0, n as i64 - 1) as usize;
                let mut j = self.int(0, n as i64 - 2) as usize;
                if j >= i {
                    j += 1;
                }
                let s = [-2, -1, 1, 2][self.int(0, 3) as usize];
                let mut shear = Matrix::identity(n);
                shear.set(i, j, T::from_int(s));
                m = shear.mul(&m);
            }
        }
        let want_positive = match sign {
            DetSign::Plus => true,
            DetSign::Minus => false,
            DetSign::Either => self.coin(),
        };
        if m.determinant().is_positive() != want_positive {
            for j in 0..n {
                let v = -m.get(0, j).clone();
                m.set(0, j, v);
            }
        }
        LinearMap::new(m)
    }

    /// Unimodular times a diagonal with entries in `[1/3, 3]`.
    pub fn general_linear<T: Scalar>(&mut self, n: usize) -> LinearMap<T> {
        let u = self.unimodular(n, DetSign::Either);
        let diag: Vec<T> = (0..n)
            .map(|_| {
                let (p, q) = GL_DIAGONAL[self.int(0, GL_DIAGONAL.len() as i64 - 1) as usize];
                T::ratio(p, q)
            })
            .collect();
        u.compose(&LinearMap::diagonal(&diag))
    }

    /// `(direction, lo, hi)` with `min d.v < lo < 0 < hi < max d.v` over the
    /// vertices of `p`, which must contain the origin in its interior.
    pub fn slab<T: Scalar>(&mut self, p: &Polytope<T>) -> (Vector<T>, T, T) {
        let n = p.dim();
        let d = loop {
            let d: Vector<T> = Vector::new((0..n).map(|_| T::from_int(self.int(-2, 2))).collect());
            if !d.is_zero() {
                break d;
            }
        };
        let heights: Vec<T> = p.vertices().iter().map(|v| d.dot(v)).collect();
        let max = heights.iter().max().expect("nonempty").clone();
        let min = heights.iter().min().expect("nonempty").clone();
        let hi = max * T::ratio(self.int(1, 3), 4);
        let lo = min * T::ratio(self.int(1, 3), 4);
        (d, lo, hi)
    }
}
