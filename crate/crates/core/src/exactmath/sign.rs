//! Sign decisions on integer rays.
//!
//! The central question answered here: what sign does `r(n)` take at every
//! integer `n >= N`? Two decision paths are implemented.
//!
//! 1. Shifted coefficients: if some Taylor shift of the polynomial to the
//!    origin has all-nonnegative (or all-nonpositive) coefficients, the sign
//!    beyond that point is settled; the handful of preceding integers is
//!    evaluated directly.
//! 2. Sturm bisection: a Sturm chain over the integers locates the last real
//!    root; every integer up to it is evaluated directly and the leading
//!    coefficient settles the tail.
//!
//! Both paths are exact. When neither can conclude within its work caps the
//! verdict is `Unknown`; the machinery never over-claims.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::intpoly::IntPoly;
use super::polynomial::Polynomial;
use super::rational_function::RationalFunction;
use super::ExactMathError;

/// Incremental Taylor shifts tried before falling back to Sturm.
const MAX_SHIFT_STEPS: i64 = 64;

/// Hard cap on pointwise integer evaluations in a single decision.
const EVAL_CAP: i64 = 1 << 18;

/// Clamp for root bounds so bisection stays within `i64`.
const ROOT_BOUND_CLAMP: i64 = i64::MAX / 4;

/// The sign pattern a function exhibits on an integer ray.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignKind {
    /// `> 0` at every integer of the ray.
    Positive,
    /// `>= 0` everywhere, with at least one zero and one positive value.
    Nonnegative,
    /// Identically zero.
    Zero,
    /// `<= 0` everywhere, with at least one zero and one negative value.
    Nonpositive,
    /// `< 0` at every integer of the ray.
    Negative,
    /// Takes both a negative and a positive value.
    Mixed,
    /// The decision procedures could not conclude within their work caps.
    Unknown,
}

impl SignKind {
    /// Does this verdict establish `claim` on the same ray?
    pub fn implies(self, claim: SignKind) -> bool {
        use SignKind::*;
        matches!(
            (self, claim),
            (Positive, Positive | Nonnegative)
                | (Negative, Negative | Nonpositive)
                | (Zero, Zero | Nonnegative | Nonpositive)
                | (Nonnegative, Nonnegative)
                | (Nonpositive, Nonpositive)
                | (Mixed, Mixed)
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SignKind::Positive => "positive",
            SignKind::Nonnegative => "nonnegative",
            SignKind::Zero => "zero",
            SignKind::Nonpositive => "nonpositive",
            SignKind::Negative => "negative",
            SignKind::Mixed => "mixed",
            SignKind::Unknown => "unknown",
        }
    }
}

impl std::fmt::Display for SignKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A concrete evaluation supporting a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: i64,
    #[serde(with = "super::rat_string")]
    pub value: BigRational,
}

/// Which decision path produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionMethod {
    ZeroFunction,
    ShiftedCoefficients,
    SturmBisection,
}

/// A sign decision together with supporting evaluations.
///
/// Witness shapes: `Positive`/`Negative`/`Zero` carry one supporting point;
/// `Nonnegative`/`Nonpositive` carry a vanishing point and a nonvanishing
/// one; `Mixed` carries the first negative and first positive points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignVerdict {
    pub kind: SignKind,
    pub method: DecisionMethod,
    pub witnesses: Vec<Witness>,
}

impl SignVerdict {
    fn unknown(method: DecisionMethod) -> Self {
        SignVerdict {
            kind: SignKind::Unknown,
            method,
            witnesses: Vec::new(),
        }
    }

    fn zero(at: i64) -> Self {
        SignVerdict {
            kind: SignKind::Zero,
            method: DecisionMethod::ZeroFunction,
            witnesses: vec![Witness {
                point: at,
                value: BigRational::zero(),
            }],
        }
    }
}

fn sign8(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Folds pointwise samples plus a strict-sign tail into a verdict.
///
/// `tail_sign` is the (nonzero) sign of every integer `>= tail_first`;
/// `eval` materializes values at tail points when a witness is needed there.
fn assemble(
    samples: Vec<(i64, BigRational)>,
    tail_first: i64,
    tail_sign: i8,
    method: DecisionMethod,
    eval: impl Fn(i64) -> BigRational,
) -> SignVerdict {
    debug_assert!(tail_sign != 0);
    let mut first_neg: Option<(i64, BigRational)> = None;
    let mut first_pos: Option<(i64, BigRational)> = None;
    let mut first_zero: Option<(i64, BigRational)> = None;
    for (x, v) in samples {
        let slot = match sign8(&v) {
            -1 => &mut first_neg,
            0 => &mut first_zero,
            _ => &mut first_pos,
        };
        if slot.is_none() {
            *slot = Some((x, v));
        }
    }
    let tail_witness = || (tail_first, eval(tail_first));
    let pos = first_pos.or_else(|| (tail_sign > 0).then(tail_witness));
    let neg = first_neg.or_else(|| (tail_sign < 0).then(tail_witness));
    let (kind, mut picked) = match (pos, neg, first_zero) {
        (Some(p), Some(n), _) => (SignKind::Mixed, vec![n, p]),
        (Some(p), None, None) => (SignKind::Positive, vec![p]),
        (Some(p), None, Some(z)) => (SignKind::Nonnegative, vec![z, p]),
        (None, Some(n), None) => (SignKind::Negative, vec![n]),
        (None, Some(n), Some(z)) => (SignKind::Nonpositive, vec![z, n]),
        (None, None, _) => unreachable!("tail sign is nonzero"),
    };
    picked.sort_by_key(|(x, _)| *x);
    SignVerdict {
        kind,
        method,
        witnesses: picked
            .into_iter()
            .map(|(point, value)| Witness { point, value })
            .collect(),
    }
}

/// Shifted-coefficients decision path for polynomials. Returns `None` when
/// no shift within `max_steps` has single-signed coefficients.
pub fn poly_sign_by_shift(p: &Polynomial, from: i64, max_steps: i64) -> Option<SignVerdict> {
    if p.is_zero() {
        return Some(SignVerdict::zero(from));
    }
    let one = BigRational::from_integer(1.into());
    let mut q = p.taylor_shift(&BigRational::from_integer(from.into()));
    let mut samples = Vec::new();
    for m in 0..=max_steps {
        let all_nonneg = q.coefficients().iter().all(|c| !c.is_negative());
        let all_nonpos = q.coefficients().iter().all(|c| !c.is_positive());
        samples.push((from + m, q.coefficient(0)));
        if all_nonneg || all_nonpos {
            let tail_sign = if all_nonneg { 1 } else { -1 };
            return Some(assemble(
                samples,
                from + m + 1,
                tail_sign,
                DecisionMethod::ShiftedCoefficients,
                |x| p.eval_int(x),
            ));
        }
        q = q.taylor_shift(&one);
    }
    None
}

/// Smallest `t >= from - 1` with no real roots of `chain`'s polynomial in
/// `(t, inf)`, or `None` when the root bound exceeds the clamp.
fn last_root_bracket(ip: &IntPoly, chain: &[IntPoly], from: i64) -> Option<i64> {
    let bound = ip.root_bound_ceil().to_i64().unwrap_or(ROOT_BOUND_CLAMP);
    let hi = bound.min(ROOT_BOUND_CLAMP).max(from - 1);
    if IntPoly::roots_after(chain, &BigInt::from(hi)) != 0 {
        return None;
    }
    let (mut lo, mut hi) = (from - 1, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if IntPoly::roots_after(chain, &BigInt::from(mid)) == 0 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(lo)
}

/// Sturm-bisection decision path for polynomials. Always conclusive except
/// when the work caps are exceeded.
pub fn poly_sign_by_sturm(p: &Polynomial, from: i64) -> SignVerdict {
    if p.is_zero() {
        return SignVerdict::zero(from);
    }
    let ip = p.to_int_poly();
    let chain = ip.sturm_chain();
    let t = match last_root_bracket(&ip, &chain, from) {
        Some(t) if t - from < EVAL_CAP => t,
        _ => return SignVerdict::unknown(DecisionMethod::SturmBisection),
    };
    let samples = (from..=t).map(|x| (x, p.eval_int(x))).collect();
    let tail_sign = if ip.leading().unwrap().is_positive() { 1 } else { -1 };
    assemble(samples, t + 1, tail_sign, DecisionMethod::SturmBisection, |x| {
        p.eval_int(x)
    })
}

/// Sign of `p(n)` for every integer `n >= from`, trying the cheap shifted
/// coefficient path first and Sturm bisection second.
pub fn poly_sign_on_ray(p: &Polynomial, from: i64) -> SignVerdict {
    match poly_sign_by_shift(p, from, MAX_SHIFT_STEPS) {
        Some(v) => v,
        None => poly_sign_by_sturm(p, from),
    }
}

/// All integer zeros of `p` at points `>= from`, or `None` when they cannot
/// be bounded within the work caps. Returns `None` for the zero polynomial
/// (every integer vanishes).
pub fn integer_zeros_from(p: &Polynomial, from: i64) -> Option<Vec<i64>> {
    if p.is_zero() {
        return None;
    }
    if p.is_constant() {
        return Some(Vec::new());
    }
    let ip = p.to_int_poly();
    let chain = ip.sturm_chain();
    let t = last_root_bracket(&ip, &chain, from)?;
    if t - from >= EVAL_CAP {
        return None;
    }
    Some((from..=t).filter(|&x| p.eval_int(x).is_zero()).collect())
}

/// All integer zeros of `p`, or `None` when they cannot be bounded.
pub fn integer_zeros(p: &Polynomial) -> Option<Vec<i64>> {
    if p.is_zero() {
        return None;
    }
    if p.is_constant() {
        return Some(Vec::new());
    }
    let bound = p.to_int_poly().root_bound_ceil().to_i64()?;
    integer_zeros_from(p, bound.checked_neg()?)
}

/// Sign of `r(n)` for every integer `n >= from`.
///
/// The ray must be pole-free: an integer zero of the denominator at or past
/// `from` is reported as [`ExactMathError::PoleOnRay`]. Soundness: the sign
/// of `r` at an integer equals the sign of `num * den` there, a polynomial,
/// so the polynomial paths carry over verbatim; witnesses are re-evaluated
/// through `r` itself.
pub fn sign_on_ray(r: &RationalFunction, from: i64) -> Result<SignVerdict, ExactMathError> {
    if r.is_zero() {
        return Ok(SignVerdict::zero(from));
    }
    match integer_zeros_from(r.denominator(), from) {
        None => return Ok(SignVerdict::unknown(DecisionMethod::SturmBisection)),
        Some(zeros) => {
            if let Some(&pole) = zeros.first() {
                return Err(ExactMathError::PoleOnRay(pole));
            }
        }
    }
    let prod = r.numerator() * r.denominator();
    let v = poly_sign_on_ray(&prod, from);
    let witnesses = v
        .witnesses
        .into_iter()
        .map(|w| Witness {
            value: r.eval_int(w.point).expect("pole-free ray"),
            point: w.point,
        })
        .collect();
    Ok(SignVerdict {
        kind: v.kind,
        method: v.method,
        witnesses,
    })
}

fn sign_satisfies(required: SignKind, s: i8) -> bool {
    match required {
        SignKind::Positive => s > 0,
        SignKind::Nonnegative => s >= 0,
        SignKind::Negative => s < 0,
        SignKind::Nonpositive => s <= 0,
        SignKind::Zero => s == 0,
        SignKind::Mixed | SignKind::Unknown => false,
    }
}

/// Smallest `s >= floor` such that `r(n)` satisfies `required` at every
/// integer `n >= s` (poles never satisfy anything), or `None` when no such
/// ray start exists or the search cannot conclude. `required` must be one of
/// the pointwise kinds (`Positive`, `Nonnegative`, `Zero`, `Nonpositive`,
/// `Negative`).
pub fn smallest_ray_start(r: &RationalFunction, floor: i64, required: SignKind) -> Option<i64> {
    if r.is_zero() {
        return sign_satisfies(required, 0).then_some(floor);
    }
    let num = r.numerator();
    let den = r.denominator();
    let prod = num * den;
    if prod.is_constant() {
        // Canonical form makes den == 1 here, so r is a nonzero constant.
        let s = sign8(&prod.coefficient(0));
        return sign_satisfies(required, s).then_some(floor);
    }
    let ip = prod.to_int_poly();
    let chain = ip.sturm_chain();
    let t = last_root_bracket(&ip, &chain, floor)?;
    if t - floor >= EVAL_CAP {
        return None;
    }
    let tail_sign = if ip.leading().unwrap().is_positive() { 1 } else { -1 };
    if !sign_satisfies(required, tail_sign) {
        return None;
    }
    let mut start = floor;
    for x in floor..=t {
        let denv = den.eval_int(x);
        let ok = !denv.is_zero()
            && sign_satisfies(required, sign8(&num.eval_int(x)) * sign8(&denv));
        if !ok {
            start = x + 1;
        }
    }
    Some(start)
}
