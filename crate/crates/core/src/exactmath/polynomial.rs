//! Dense univariate polynomials over `BigRational` in the variable `n`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::ExactMathError;

/// A polynomial with exact rational coefficients.
///
/// Coefficients are stored in ascending degree order and the representation
/// is kept normalized: the last stored coefficient is nonzero, and the zero
/// polynomial stores no coefficients at all. Equality is therefore
/// structural equality of values.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    /// Builds a polynomial from ascending-degree coefficients, trimming
    /// trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(value: BigRational) -> Self {
        Polynomial::new(vec![value])
    }

    /// The polynomial `n`.
    pub fn variable() -> Self {
        Polynomial::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// `coefficient * n^degree`.
    pub fn monomial(coefficient: BigRational, degree: usize) -> Self {
        if coefficient.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = coefficient;
        Polynomial { coeffs }
    }

    /// Convenience constructor from machine integers in ascending degree
    /// order, e.g. `from_integers(&[1, 2, 1])` is `(n + 1)^2`.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Ascending-degree coefficient slice (empty for the zero polynomial).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `n^k` (zero beyond the degree).
    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// Returns `p(n + shift)` via in-place Horner composition.
    pub fn taylor_shift(&self, shift: &BigRational) -> Self {
        if self.coeffs.len() <= 1 || shift.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let d = c.len() - 1;
        for k in 0..d {
            for j in (k..d).rev() {
                let add = shift * &c[j + 1];
                c[j] = &c[j] + add;
            }
        }
        Polynomial::new(c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Polynomial::one();
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: returns `(q, r)` with `self = q * divisor + r`
    /// and `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), ExactMathError> {
        if divisor.is_zero() {
            return Err(ExactMathError::DivisionByZeroPolynomial);
        }
        let dd = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut quot = vec![BigRational::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dd - 1].clone();
            if top.is_zero() {
                continue;
            }
            let q = top / lead;
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                let sub = dc * &q;
                rem[k + i] = &rem[k + i] - sub;
            }
            quot[k] = q;
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact division; panics if the division leaves a remainder. Intended
    /// for cofactor divisions where exactness is guaranteed by construction.
    pub(crate) fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor).expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    ///
    /// Computed over the integers with a primitive pseudo-remainder sequence
    /// to avoid the coefficient blowup of the rational Euclid algorithm.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let a = IntPoly::from_polynomial(self);
        let b = IntPoly::from_polynomial(other);
        a.gcd(&b).to_polynomial().monic()
    }

    /// Scales the polynomial so its leading coefficient is one. The zero
    /// polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => Polynomial::zero(),
            Some(lead) if lead.is_one() => self.clone(),
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
        }
    }

    /// Content-free integer image together with the positive factor that was
    /// cleared. Used by the sign machinery; sign-preserving by construction.
    pub(crate) fn to_int_poly(&self) -> IntPoly {
        IntPoly::from_polynomial(self)
    }

    fn fmt_term(f: &mut fmt::Formatter<'_>, coeff: &BigRational, degree: usize, first: bool) -> fmt::Result {
        let negative = coeff.is_negative();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mag = coeff.abs();
        if degree == 0 {
            return write!(f, "{mag}");
        }
        if !mag.is_one() {
            write!(f, "{mag}*")?;
        }
        if degree == 1 {
            write!(f, "n")
        } else {
            write!(f, "n^{degree}")
        }
    }
}

/// Renders in the expression grammar (highest degree first), e.g.
/// `3*n^2 - 3*n + 1`. The output re-parses to the same polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            Polynomial::fmt_term(f, c, k, first)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[i + j] = &coeffs[i + j] + prod;
            }
        }
        Polynomial::new(coeffs)
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
