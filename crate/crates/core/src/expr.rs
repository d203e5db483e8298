//! Rational-linear combinations of named handles, e.g. `2*m - 5*rot-polar-m`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := ['-'] [coeff '*'] name
//! coeff := int | int '/' int
//! name  := chi | V | polar-V | m | polar-m | rot-polar-m | M2 | polar-M2
//! ```
//!
//! Names contain `-`, so they are matched longest first.

use crate::error::{Error, Result};
use crate::functionals::{
    euler_handle, moment_handle, moment_matrix_handle, polar_composite, rotated, volume_handle, ValuationHandle,
};
use crate::scalar::{parse_scalar, Scalar};

/// Every name the language knows, longest first.
pub const HANDLE_NAMES: [&str; 8] = ["rot-polar-m", "polar-M2", "polar-V", "polar-m", "chi", "M2", "V", "m"];

pub fn handle_by_name<T: Scalar>(name: &str) -> Option<ValuationHandle<T>> {
    Some(match name {
        "chi" => euler_handle(),
        "V" => volume_handle(),
        "polar-V" => polar_composite(&volume_handle()),
        "m" => moment_handle(),
        "polar-m" => polar_composite(&moment_handle()),
        "rot-polar-m" => rotated(&polar_composite(&moment_handle())),
        "M2" => moment_matrix_handle(),
        "polar-M2" => polar_composite(&moment_matrix_handle()),
        _ => return None,
    })
}

/// `(coefficient, name)` pairs in source order.
pub fn parse_terms<T: Scalar>(src: &str) -> Result<Vec<(T, String)>> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| Error::Parse(format!("{msg} in mu expression {src:?}"));
    let mut rest = s.as_str();
    let mut terms = Vec::new();
    while !rest.is_empty() {
        let mut negative = false;
        if terms.is_empty() {
            if let Some(r) = rest.strip_prefix('-') {
                negative = true;
                rest = r;
            }
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            negative = true;
            rest = r;
        } else {
            return Err(err("expected '+' or '-'"));
        }
        let digits = rest.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(rest.len());
        let mut coeff = T::one();
        if digits > 0 {
            coeff = parse_scalar(&rest[..digits]).ok_or_else(|| err("bad coefficient"))?;
            rest = rest[digits..].strip_prefix('*').ok_or_else(|| err("expected '*' after coefficient"))?;
        }
        let name = HANDLE_NAMES
            .iter()
            .find(|n| rest.starts_with(*n) && !rest[n.len()..].starts_with(|c: char| c.is_ascii_alphanumeric()))
            .ok_or_else(|| err("unknown handle name"))?;
        rest = &rest[name.len()..];
        terms.push((if negative { -coeff } else { coeff }, name.to_string()));
    }
    if terms.is_empty() {
        return Err(err("empty expression"));
    }
    Ok(terms)
}

/// The handle denoted by `src`; terms must share one value kind.
pub fn parse_mu<T: Scalar>(src: &str) -> Result<ValuationHandle<T>> {
    let terms = parse_terms::<T>(src)?
        .into_iter()
        .map(|(k, n)| (k, handle_by_name(&n).expect("parser only yields known names")))
        .collect();
    Ok(ValuationHandle::linear_combination(terms)?.renamed(src.trim()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::basis_valuation_vector_2d;
    use crate::geometry::{convex_hull, cube};
    use crate::linalg::Vector;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(p: i64, d: i64) -> Q {
        Q::ratio(p, d)
    }

    #[test]
    fn parses_linear_combinations() {
        let t = parse_terms::<Q>("2*m-5*rot-polar-m").unwrap();
        assert_eq!(t, vec![(q(2, 1), "m".to_string()), (q(-5, 1), "rot-polar-m".to_string())]);
        let t = parse_terms::<Q>(" -polar-V + 1/2 * V ").unwrap();
        assert_eq!(t, vec![(q(-1, 1), "polar-V".to_string()), (q(1, 2), "V".to_string())]);
        assert_eq!(parse_terms::<Q>("M2").unwrap(), vec![(q(1, 1), "M2".to_string())]);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "2*", "mm", "2m", "m+", "m*2", "polar-X", "1/0*V", "V V"] {
            assert!(matches!(parse_terms::<Q>(bad), Err(Error::Parse(_))), "{bad:?}");
        }
        assert!(matches!(parse_mu::<Q>("m + V"), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn parsed_handle_matches_basis() {
        let kite = convex_hull(&[
            Vector::new(vec![q(-1, 1), q(0, 1)]),
            Vector::new(vec![q(2, 1), q(0, 1)]),
            Vector::new(vec![q(0, 1), q(1, 1)]),
            Vector::new(vec![q(0, 1), q(-1, 1)]),
        ])
        .unwrap();
        let mu = parse_mu::<Q>("2*m-5*rot-polar-m").unwrap();
        assert_eq!(mu.evaluate(&kite).unwrap(), basis_valuation_vector_2d(q(2, 1), q(-5, 1)).evaluate(&kite).unwrap());
        let v = parse_mu::<Q>("3*chi+polar-V").unwrap();
        assert_eq!(v.evaluate(&cube(2)).unwrap(), crate::functionals::Value::Scalar(q(5, 1)));
    }
}
