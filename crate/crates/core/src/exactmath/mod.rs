//! Exact arithmetic: big rationals, univariate polynomials, rational
//! functions, and sign decisions over integer rays.
//!
//! Everything here works over `BigRational`; nothing rounds. The sign
//! machinery decides statements of the form "r(n) > 0 for every integer
//! n >= N" and returns explicit witnesses with every verdict.

mod expr;
mod intpoly;
mod polynomial;
mod rational_function;
mod sign;

pub use expr::{parse_expression, parse_rational_literal, ParseError};
pub use polynomial::Polynomial;
pub use rational_function::RationalFunction;
pub use sign::{
    integer_zeros, integer_zeros_from, poly_sign_by_shift, poly_sign_by_sturm, poly_sign_on_ray,
    sign_on_ray, smallest_ray_start, DecisionMethod, SignKind, SignVerdict, Witness,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use thiserror::Error;

/// Errors from exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactMathError {
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
    #[error("division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("denominator vanishes at {0}")]
    Pole(BigRational),
    #[error("denominator vanishes at the integer {0} on the ray")]
    PoleOnRay(i64),
}

/// Exact rational `num/den` from machine integers.
///
/// Panics if `den == 0`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Exact rational from a machine integer.
pub fn integer(value: i64) -> BigRational {
    BigRational::from_integer(value.into())
}

/// Parses a rational from its canonical display form (`"p"` or `"p/q"`).
pub fn rational_from_str(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.trim().parse().ok()?;
    let den: BigInt = den.trim().parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// Serde adapter storing a `BigRational` as its exact `"p/q"` string.
pub(crate) mod rat_string {
    use super::{rational_from_str, BigRational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(de)?;
        rational_from_str(&text)
            .ok_or_else(|| de::Error::custom(format!("invalid rational literal {text:?}")))
    }
}
