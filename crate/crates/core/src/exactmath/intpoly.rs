//! Integer-coefficient polynomial internals: primitive pseudo-remainder
//! sequences, Sturm chains, and root bounds.
//!
//! Conversions from the rational domain clear denominators with a positive
//! factor, so every sign observed here matches the sign of the original
//! polynomial at the same point. The pseudo-remainder loop likewise uses
//! only positive scale factors; this keeps Sturm sign variations faithful.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::polynomial::Polynomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub(crate) fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Clears denominators with the (positive) lcm and strips the (positive)
    /// content, preserving the sign of every value.
    pub(crate) fn from_polynomial(p: &Polynomial) -> Self {
        let mut lcm = BigInt::one();
        for c in p.coefficients() {
            lcm = lcm.lcm(c.denom());
        }
        let ints = p
            .coefficients()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        IntPoly::new(ints).primitive()
    }

    pub(crate) fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub(crate) fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub(crate) fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub(crate) fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::new(Vec::new());
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the positive content; the leading sign is unchanged.
    pub(crate) fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// Pseudo-remainder of `self` by `divisor` scaled so that the overall
    /// multiplier applied to `self` is positive. The result is the true
    /// remainder up to a positive rational factor.
    fn pseudo_rem_positive(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("pseudo-remainder by zero");
        let lead = divisor.leading().unwrap().clone();
        let lead_abs = lead.abs();
        let lead_sign_pos = lead.is_positive();
        let mut rem = self.coeffs.clone();
        loop {
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= db {
                break;
            }
            let shift = rem.len() - 1 - db;
            let top = rem.last().unwrap().clone();
            // rem := |lead| * rem - sign(lead) * top * n^shift * divisor;
            // the leading terms cancel and rem is scaled by |lead| > 0.
            for c in rem.iter_mut() {
                *c *= &lead_abs;
            }
            let adj = if lead_sign_pos { top } else { -top };
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &adj * dc;
            }
        }
        IntPoly::new(rem)
    }

    /// Primitive-PRS gcd with positive leading coefficient.
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.is_zero() {
            return b.positive_lead();
        }
        while !b.is_zero() {
            let r = a.pseudo_rem_positive(&b).primitive();
            a = b;
            b = r;
        }
        a.positive_lead()
    }

    fn positive_lead(&self) -> Self {
        if self.leading().is_some_and(|l| l.is_negative()) {
            IntPoly {
                coeffs: self.coeffs.iter().map(|c| -c).collect(),
            }
        } else {
            self.clone()
        }
    }

    /// `self / gcd(self, self')`: same distinct real roots, all simple, and
    /// the leading sign of `self` is preserved.
    pub(crate) fn squarefree_part(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive();
        }
        let quotient = self.to_polynomial().div_exact(&g.to_polynomial());
        IntPoly::from_polynomial(&quotient)
    }

    /// Integer upper bound for every real root: `1 + max |a_i| / |a_d|`.
    pub(crate) fn root_bound_ceil(&self) -> BigInt {
        let lead = match self.leading() {
            Some(l) => l.abs(),
            None => return BigInt::zero(),
        };
        let mut max_ratio = BigInt::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let ratio = c.abs().div_ceil(&lead);
            if ratio > max_ratio {
                max_ratio = ratio;
            }
        }
        max_ratio + BigInt::one()
    }

    /// Sturm chain of the squarefree part: `p, p', -prem(...), ...` with
    /// positive-only scaling, each member made primitive.
    pub(crate) fn sturm_chain(&self) -> Vec<IntPoly> {
        let sf = self.squarefree_part();
        if sf.coeffs.len() <= 1 {
            return vec![sf];
        }
        let mut chain = vec![sf.clone(), sf.derivative().primitive()];
        loop {
            let k = chain.len();
            if chain[k - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[k - 1].degree() == Some(0) {
                break;
            }
            let rem = chain[k - 2].pseudo_rem_positive(&chain[k - 1]);
            if rem.is_zero() {
                break;
            }
            let neg = IntPoly {
                coeffs: rem.primitive().coeffs.iter().map(|c| -c).collect(),
            };
            chain.push(neg);
        }
        chain
    }

    /// Number of distinct real roots of the chain's polynomial in `(x, inf)`.
    pub(crate) fn roots_after(chain: &[IntPoly], x: &BigInt) -> usize {
        let at_x = variations(chain.iter().map(|p| p.eval(x).sign_i8()));
        let at_inf = variations(chain.iter().map(|p| match p.leading() {
            Some(l) => l.sign_i8(),
            None => 0,
        }));
        at_x.saturating_sub(at_inf)
    }
}

trait SignI8 {
    fn sign_i8(&self) -> i8;
}

impl SignI8 for BigInt {
    fn sign_i8(&self) -> i8 {
        match self.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut count = 0;
    let mut last: Option<i8> = None;
    for s in signs {
        if s == 0 {
            continue;
        }
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}
