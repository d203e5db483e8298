//! Valuations on segments `[-a, b]` with `a, b > 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::functionals::{ValuationHandle, Value, ValueKind};
use crate::geometry::{axis_box, Polytope};
use crate::harness::{run_trials, CheckReport, Counterexample, Sampler, TrialBudget};
use crate::scalar::Scalar;

/// The segment `[-a, b]` with `a, b > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dim1Segment<T> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> Dim1Segment<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a.is_positive() && b.is_positive()) {
            return Err(Error::InvalidConfiguration("segment ends a, b must be positive".into()));
        }
        Ok(Dim1Segment { a, b })
    }

    pub fn from_polytope(p: &Polytope<T>) -> Result<Self> {
        if p.dim() != 1 {
            return Err(Error::WrongDimension { expected: 1, got: p.dim() });
        }
        let v = p.vertices();
        Self::new(-v[0][0].clone(), v[1][0].clone()).map_err(|_| Error::OriginNotInterior)
    }

    pub fn to_polytope(&self) -> Polytope<T> {
        axis_box(&[-self.a.clone()], std::slice::from_ref(&self.b))
    }

    /// `[-b, a]`, the image under `x -> -x`.
    pub fn reflected(&self) -> Self {
        Dim1Segment { a: self.b.clone(), b: self.a.clone() }
    }
}

/// Scalar handle `[-a, b] -> f(a, b)` on one-dimensional polytopes.
pub fn segment_handle<T, F>(name: impl Into<String>, f: F) -> ValuationHandle<T>
where
    T: Scalar,
    F: Fn(&T, &T) -> T + Send + Sync + 'static,
{
    ValuationHandle::new(name, ValueKind::Scalar, move |p| {
        let s = Dim1Segment::from_polytope(p)?;
        Ok(Value::Scalar(f(&s.a, &s.b)))
    })
}

/// `v_2(r)`: the exponent of 2 in a nonzero rational.
pub fn two_adic_valuation(r: &BigRational) -> i64 {
    assert!(!r.is_zero(), "v_2(0) is undefined");
    let v = |n: &BigInt| n.trailing_zeros().map_or(0, |z| z as i64);
    v(r.numer()) - v(r.denom())
}

/// `[-a, b] -> v_2(b) - v_2(a)`: odd, 0-homogeneous and rational-valued. It
/// solves `F(st) = F(s) + F(t)` on positive rationals without being a
/// multiple of `ln`, which no exact check can tell apart from `ln(b/a)`.
pub fn two_adic_log_handle() -> ValuationHandle<BigRational> {
    segment_handle("v2(b)-v2(a)", |a: &BigRational, b: &BigRational| {
        BigRational::from_int(two_adic_valuation(b) - two_adic_valuation(a))
    })
}

fn eval<T: Scalar>(mu: &ValuationHandle<T>, a: &T, b: &T) -> Result<T> {
    if mu.kind() != ValueKind::Scalar {
        return Err(Error::KindMismatch { expected: "scalar", got: mu.kind().name() });
    }
    let s = Dim1Segment::new(a.clone(), b.clone())?;
    Ok(mu.evaluate(&s.to_polytope())?.as_scalar()?.clone())
}

fn ab_inputs<T: Scalar>(a: &T, b: &T) -> Vec<(String, T)> {
    vec![("a".into(), a.clone()), ("b".into(), b.clone())]
}

fn random_ab<T: Scalar>(s: &mut Sampler) -> (T, T) {
    (s.positive(), s.positive())
}

/// First pair violating `mu[-a,b] = sign mu[-b,a]`, among `(1, 1)`, `(1, 2)`
/// and every trial's `(a, b)`.
fn parity_violation<T: Scalar>(budget: &TrialBudget, sign: T, mu: &ValuationHandle<T>) -> Result<Option<(T, T, T, T)>> {
    let fixed = [(T::one(), T::one()), (T::one(), T::from_int(2))];
    let mut pairs: Vec<(T, T)> = fixed.to_vec();
    pairs.extend((0..budget.trials as u64).map(|i| random_ab(&mut Sampler::for_trial(budget, i))));
    for (a, b) in pairs {
        let here = eval(mu, &a, &b)?;
        let there = eval(mu, &b, &a)? * sign.clone();
        if here != there {
            return Ok(Some((a, b, here, there)));
        }
    }
    Ok(None)
}

/// Even case: `mu[-a,b] = (mu[-a,a] + mu[-b,b]) / 2`. With a declared degree
/// `q`, also `mu[-a,b] = c (a^q + b^q)` with `c = mu[-1,1] / 2`.
pub fn dim1_even_representation<T: Scalar>(
    mu: &ValuationHandle<T>,
    degree: Option<i32>,
    budget: &TrialBudget,
) -> Result<CheckReport<T>> {
    if let Some((a, b, l, r)) = parity_violation(budget, T::one(), mu)? {
        return Err(Error::NotEven(format!("mu[-{a},{b}] = {l} but mu[-{b},{a}] = {r}")));
    }
    let half = T::half();
    let c = eval(mu, &T::one(), &T::one())? * half.clone();
    run_trials(budget, |s, _| {
        let (a, b) = random_ab::<T>(s);
        let lhs = eval(mu, &a, &b)?;
        let rhs = half.clone() * (eval(mu, &a, &a)? + eval(mu, &b, &b)?);
        if lhs != rhs {
            return Ok(Some(Counterexample::Scalars {
                identity: "mu[-a,b] = (mu[-a,a] + mu[-b,b]) / 2".into(),
                inputs: ab_inputs(&a, &b),
                lhs,
                rhs,
            }));
        }
        if let Some(q) = degree {
            let closed = c.clone() * (a.powi(q) + b.powi(q));
            if lhs != closed {
                return Ok(Some(Counterexample::Scalars {
                    identity: format!("mu[-a,b] = c (a^{q} + b^{q})"),
                    inputs: ab_inputs(&a, &b),
                    lhs,
                    rhs: closed,
                }));
            }
        }
        Ok(None)
    })
}

/// Odd case: `mu[-a,b] = mu[-1,b] - mu[-1,a]`. A declared degree `q != 0`
/// also checks `mu[-a,b] = c (b^q - a^q)` with `c = mu[-1,2] / (2^q - 1)`;
/// degree 0 checks `F(st) = F(s) + F(t)` for `F(r) = mu[-1,r]`, the defining
/// property of the logarithmic solution.
pub fn dim1_odd_representation<T: Scalar>(
    mu: &ValuationHandle<T>,
    degree: Option<i32>,
    budget: &TrialBudget,
) -> Result<CheckReport<T>> {
    if let Some((a, b, l, r)) = parity_violation(budget, -T::one(), mu)? {
        return Err(Error::NotOdd(format!("mu[-{a},{b}] = {l} but -mu[-{b},{a}] = {r}")));
    }
    let one = T::one();
    let two = T::from_int(2);
    let c = match degree {
        Some(q) if q != 0 => Some(eval(mu, &one, &two)? / (two.powi(q) - one.clone())),
        _ => None,
    };
    run_trials(budget, |s, _| {
        let (a, b) = random_ab::<T>(s);
        let lhs = eval(mu, &a, &b)?;
        let rhs = eval(mu, &one, &b)? - eval(mu, &one, &a)?;
        if lhs != rhs {
            return Ok(Some(Counterexample::Scalars {
                identity: "mu[-a,b] = mu[-1,b] - mu[-1,a]".into(),
                inputs: ab_inputs(&a, &b),
                lhs,
                rhs,
            }));
        }
        match degree {
            Some(0) => {
                let st = eval(mu, &one, &(a.clone() * b.clone()))?;
                let split = eval(mu, &one, &a)? + eval(mu, &one, &b)?;
                if st != split {
                    return Ok(Some(Counterexample::Scalars {
                        identity: "F(st) = F(s) + F(t), F(r) = mu[-1,r]".into(),
                        inputs: vec![("s".into(), a), ("t".into(), b)],
                        lhs: st,
                        rhs: split,
                    }));
                }
            }
            Some(q) => {
                let closed = c.clone().expect("set for q != 0") * (b.powi(q) - a.powi(q));
                if lhs != closed {
                    return Ok(Some(Counterexample::Scalars {
                        identity: format!("mu[-a,b] = c (b^{q} - a^{q})"),
                        inputs: ab_inputs(&a, &b),
                        lhs,
                        rhs: closed,
                    }));
                }
            }
            None => {}
        }
        Ok(None)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(p: i64) -> Q {
        Q::from_int(p)
    }

    fn b() -> TrialBudget {
        TrialBudget::new(40, 1, 5)
    }

    #[test]
    fn even_examples() {
        let len = segment_handle("len", |a: &Q, b: &Q| a.clone() + b.clone());
        assert!(dim1_even_representation(&len, Some(1), &b()).unwrap().passed);
        let cubes = segment_handle("a^3+b^3", |a: &Q, b: &Q| a.powi(3) + b.powi(3));
        assert!(dim1_even_representation(&cubes, Some(3), &b()).unwrap().passed);
        // ab at (1, 2): 2 against (1 + 4) / 2.
        let prod = segment_handle("ab", |a: &Q, b: &Q| a.clone() * b.clone());
        let r = dim1_even_representation(&prod, None, &b()).unwrap();
        assert!(!r.passed);
        let odd = segment_handle("b-a", |a: &Q, b: &Q| b.clone() - a.clone());
        assert!(matches!(dim1_even_representation(&odd, None, &b()), Err(Error::NotEven(_))));
    }

    #[test]
    fn product_counterexample_by_hand() {
        let prod = segment_handle("ab", |a: &Q, b: &Q| a.clone() * b.clone());
        let lhs = eval(&prod, &q(1), &q(2)).unwrap();
        let rhs = Q::half() * (eval(&prod, &q(1), &q(1)).unwrap() + eval(&prod, &q(2), &q(2)).unwrap());
        assert_eq!((lhs, rhs), (q(2), Q::ratio(5, 2)));
    }

    #[test]
    fn odd_examples() {
        let diff = segment_handle("b-a", |a: &Q, b: &Q| b.clone() - a.clone());
        assert!(dim1_odd_representation(&diff, Some(1), &b()).unwrap().passed);
        let cubes = segment_handle("b^3-a^3", |a: &Q, b: &Q| b.powi(3) - a.powi(3));
        assert!(dim1_odd_representation(&cubes, Some(3), &b()).unwrap().passed);
        let bad = segment_handle("b^2+a", |a: &Q, b: &Q| b.clone() * b.clone() + a.clone());
        assert!(matches!(dim1_odd_representation(&bad, None, &b()), Err(Error::NotOdd(_))));
        // Right parity, wrong degree.
        assert!(!dim1_odd_representation(&cubes, Some(2), &b()).unwrap().passed);
    }

    #[test]
    fn negative_degrees() {
        let inv = segment_handle("1/b-1/a", |a: &Q, b: &Q| b.powi(-1) - a.powi(-1));
        assert!(dim1_odd_representation(&inv, Some(-1), &b()).unwrap().passed);
        let inv2 = segment_handle("a^-2+b^-2", |a: &Q, b: &Q| a.powi(-2) + b.powi(-2));
        assert!(dim1_even_representation(&inv2, Some(-2), &b()).unwrap().passed);
    }

    #[test]
    fn two_adic_surrogate() {
        assert_eq!(two_adic_valuation(&Q::ratio(12, 5)), 2);
        assert_eq!(two_adic_valuation(&Q::ratio(3, 8)), -3);
        let mu = two_adic_log_handle();
        assert!(dim1_odd_representation(&mu, Some(0), &b()).unwrap().passed);
        // Not q-homogeneous for q != 0.
        assert!(!dim1_odd_representation(&mu, Some(1), &b()).unwrap().passed);
    }

    #[test]
    fn segments_round_trip() {
        let s = Dim1Segment::new(q(2), Q::ratio(1, 3)).unwrap();
        assert_eq!(Dim1Segment::from_polytope(&s.to_polytope()).unwrap(), s);
        assert_eq!(s.reflected().reflected(), s);
        assert!(Dim1Segment::from_polytope(&axis_box(&[q(1)], &[q(2)])).is_err());
    }
}
