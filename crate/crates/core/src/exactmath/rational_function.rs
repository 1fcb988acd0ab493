//! Rational functions in one variable, kept in a canonical reduced form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use super::ExactMathError;

/// A quotient of polynomials `num/den`.
///
/// Canonical form: `gcd(num, den) = 1` and `den` is monic. This makes the
/// representation unique, so derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, ExactMathError> {
        if den.is_zero() {
            return Err(ExactMathError::DivisionByZeroFunction);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let lead = den.leading_coefficient().unwrap();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(value: BigRational) -> Self {
        RationalFunction::from_polynomial(Polynomial::constant(value))
    }

    pub fn zero() -> Self {
        RationalFunction::from_polynomial(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_polynomial(Polynomial::one())
    }

    /// The function `n`.
    pub fn variable() -> Self {
        RationalFunction::from_polynomial(Polynomial::variable())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is constant (the function is a polynomial).
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_constant() {
            // den is monic, hence exactly 1.
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Largest of the numerator and denominator degrees (zero function: 0).
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    /// Exact evaluation; reports a pole when the denominator vanishes.
    ///
    /// Pole reports follow the canonical form: a common zero of the original
    /// numerator and denominator is removable and does not count.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ExactMathError> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(ExactMathError::Pole(x.clone()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, x: i64) -> Result<BigRational, ExactMathError> {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// Returns `r(n + shift)`. Canonical form is preserved: shifting keeps
    /// both coprimality and the monic leading coefficient.
    pub fn shift(&self, shift: &BigRational) -> Self {
        RationalFunction {
            num: self.num.taylor_shift(shift),
            den: self.den.taylor_shift(shift),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactMathError> {
        if rhs.is_zero() {
            return Err(ExactMathError::DivisionByZeroFunction);
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn recip(&self) -> Result<Self, ExactMathError> {
        RationalFunction::one().checked_div(self)
    }

    /// Integer powers; negative exponents invert (error on the zero
    /// function), and `r^0 = 1` by convention.
    pub fn pow(&self, exponent: i32) -> Result<Self, ExactMathError> {
        if exponent == 0 {
            return Ok(RationalFunction::one());
        }
        let base = if exponent < 0 {
            self.recip()?
        } else {
            self.clone()
        };
        let e = exponent.unsigned_abs();
        Ok(RationalFunction {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.scale(factor),
            den: self.den.clone(),
        }
    }
}

/// Renders as `num` or `(num)/(den)`; the output re-parses to the same
/// function under the expression grammar.
impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

/// Panics when dividing by the zero function; use [`RationalFunction::checked_div`]
/// where the divisor is not known to be nonzero.
impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
        impl $trait<RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRepr {
    numerator: Vec<String>,
    denominator: Vec<String>,
}

impl Serialize for RationalFunction {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let repr = RationalFunctionRepr {
            numerator: self.num.coefficients().iter().map(|c| c.to_string()).collect(),
            denominator: self.den.coefficients().iter().map(|c| c.to_string()).collect(),
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = RationalFunctionRepr::deserialize(de)?;
        let parse = |coeffs: &[String]| -> Result<Polynomial, D::Error> {
            let mut out = Vec::with_capacity(coeffs.len());
            for c in coeffs {
                out.push(
                    super::rational_from_str(c)
                        .ok_or_else(|| D::Error::custom(format!("invalid rational {c:?}")))?,
                );
            }
            Ok(Polynomial::new(out))
        };
        let num = parse(&repr.numerator)?;
        let den = parse(&repr.denominator)?;
        RationalFunction::new(num, den).map_err(D::Error::custom)
    }
}
