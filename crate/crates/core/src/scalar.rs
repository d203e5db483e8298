//! The exact field every kernel routine is generic over.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// An exact ordered field.
///
/// Every operation in the kernel is a comparison or a field operation, so any
/// implementor gives bit-for-bit reproducible results. Floating point types do
/// not qualify: they are neither `Ord` nor closed under exact division.
pub trait Scalar:
    Clone + Ord + Hash + Debug + Display + FromStr + Signed + FromPrimitive + Send + Sync + 'static
{
    /// `p / q` as a field element. Panics when `q == 0`.
    fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_i64(p).expect("i64 fits") / Self::from_i64(q).expect("i64 fits")
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits")
    }

    /// Integer power; negative exponents invert. Panics on `0^(-k)`.
    fn powi(&self, exp: i32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp.unsigned_abs() {
            acc = acc * self.clone();
        }
        if exp < 0 {
            assert!(!acc.is_zero(), "zero to a negative power");
            Self::one() / acc
        } else {
            acc
        }
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    /// The value as an `i64` when it is an integer in range.
    fn to_i64_exact(&self) -> Option<i64>;

    /// Rescales a nonzero direction by a positive factor into a canonical
    /// representative. The default divides by the largest absolute entry.
    fn normalize_direction(v: &mut [Self]) {
        let Some(m) = v.iter().map(Signed::abs).max() else {
            return;
        };
        if m.is_zero() {
            return;
        }
        for x in v.iter_mut() {
            *x = x.clone() / m.clone();
        }
    }
}

impl Scalar for Ratio<BigInt> {
    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// Primitive integer vector: clears denominators, then divides out the gcd.
    fn normalize_direction(v: &mut [Self]) {
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return;
        }
        for (x, i) in v.iter_mut().zip(ints) {
            *x = Ratio::from_integer(i / &g);
        }
    }
}
impl Scalar for Ratio<i64> {
    fn to_i64_exact(&self) -> Option<i64> {
        self.is_integer().then(|| *self.numer())
    }
}

impl Scalar for Ratio<i128> {
    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(*self.numer()).ok()
        } else {
            None
        }
    }
}

/// `n!` in the field.
pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, k| acc * T::from_int(k as i64))
}

/// Parses `"p/q"` or `"p"`, rejecting a zero denominator instead of panicking.
pub fn parse_scalar<T: Scalar>(s: &str) -> Option<T> {
    let s = s.trim();
    if let Some((_, den)) = s.split_once('/') {
        if den.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return None;
        }
    }
    T::from_str(s).ok()
}
