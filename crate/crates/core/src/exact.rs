//! Exact integer and rational arithmetic plus the combinatorial primitives
//! (factorials, binomials, rising and falling products) used everywhere else.
//!
//! Integers are arbitrary precision. Rationals are kept in lowest terms with a
//! positive denominator, so `==` on [`ExactRat`] is structural.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision signed integer.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, always normalized.
pub type ExactRat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero: {numerator} / 0")]
    DivisionByZero { numerator: ExactInt },
    #[error("inexact division: {numerator} is not divisible by {denominator}")]
    Inexact {
        numerator: ExactInt,
        denominator: ExactInt,
    },
    #[error("rational {0} is not an integer")]
    NotInteger(ExactRat),
}

/// Divides `numerator` by `denominator`, failing unless the quotient is exact.
pub fn exact_div(numerator: &ExactInt, denominator: &ExactInt) -> Result<ExactInt, ExactError> {
    if denominator.is_zero() {
        return Err(ExactError::DivisionByZero {
            numerator: numerator.clone(),
        });
    }
    let (q, r) = numerator.div_rem(denominator);
    if !r.is_zero() {
        return Err(ExactError::Inexact {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
        });
    }
    Ok(q)
}

/// Converts a rational to an integer, failing if the denominator is not 1.
pub fn rat_to_int(value: &ExactRat) -> Result<ExactInt, ExactError> {
    if value.is_integer() {
        Ok(value.numer().clone())
    } else {
        Err(ExactError::NotInteger(value.clone()))
    }
}

pub fn int(value: i64) -> ExactInt {
    ExactInt::from(value)
}

pub fn rat(numerator: i64, denominator: i64) -> ExactRat {
    ExactRat::new(int(numerator), int(denominator))
}

pub fn rat_from_int(value: ExactInt) -> ExactRat {
    ExactRat::from_integer(value)
}

pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(ExactInt::one(), |acc, i| acc * i)
}

/// `binom(a, b)` with the zero convention: 0 when `b < 0`, when `a < 0`,
/// or when `b > a`.
///
/// The negative-upper case is never needed by any sum in this crate: every
/// such term is multiplied by a factor that vanishes on the same range.
pub fn binomial(a: i64, b: i64) -> ExactInt {
    if b < 0 || a < 0 || b > a {
        return ExactInt::zero();
    }
    let b = b.min(a - b);
    let mut acc = ExactInt::one();
    for i in 0..b {
        // acc = binom(a, i) here, so the division is exact
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Rising factorial `a (a+1) ... (a+k-1)` over the integers.
pub fn raising_factorial(a: i64, k: u64) -> ExactInt {
    (0..k as i64).fold(ExactInt::one(), |acc, i| acc * (a + i))
}

/// Rising factorial over the rationals.
pub fn raising_factorial_rat(a: &ExactRat, k: u64) -> ExactRat {
    let mut acc = ExactRat::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += ExactRat::one();
    }
    acc
}

/// Falling factorial `a (a-1) ... (a-k+1)`.
pub fn lowering_factorial(a: i64, k: u64) -> ExactInt {
    (0..k as i64).fold(ExactInt::one(), |acc, i| acc * (a - i))
}
