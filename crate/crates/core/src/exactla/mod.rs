//! Exact rational linear algebra.
//!
//! Everything downstream (structure constants, module actions, highest-weight
//! searches) reduces to row reduction over the rationals, so this module keeps
//! one deterministic pivot rule: leftmost pivot column, first nonzero row at or
//! below the current row.

mod matrix;
mod sparse;
mod span;

pub use matrix::RationalMatrix;
pub use sparse::SparseMatrix;
pub use span::{intersect_spans, nullspace, span_contains, sum_spans, EchelonBasis, Insertion};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("matrix is singular")]
    Singular,
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-5/2"`, `" 7 / 4 "`.
pub fn parse_rational(s: &str) -> Result<Rational, LinAlgError> {
    let err = || LinAlgError::ParseRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| err())?;
    let den: BigInt = d.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn to_i64(q: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit_vec(n: usize, k: usize) -> Vec<Rational> {
    let mut v = zero_vec(n);
    v[k] = Rational::one();
    v
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Scales `v` so its first nonzero entry is 1. Zero vectors are returned unchanged.
pub fn normalize_leading(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

/// If `v = c * w` for some scalar `c`, returns `c`. Both must be nonzero.
pub fn proportionality(v: &[Rational], w: &[Rational]) -> Option<Rational> {
    if v.len() != w.len() {
        return None;
    }
    let k = w.iter().position(|x| !x.is_zero())?;
    let c = &v[k] / &w[k];
    if c.is_zero() {
        return None;
    }
    v.iter().zip(w).all(|(a, b)| *a == &c * b).then_some(c)
}
