//! Mechanical certification of strict 2-log-convexity.
//!
//! For a positive log-convex sequence satisfying
//! `z_n = a(n) z_{n-1} + b(n) z_{n-2}` (n at or beyond some index), strict
//! log-convexity of `L(z)` follows from four sign conditions built out of
//! the cubic coefficients `c0..c3` below, provided the consecutive-term
//! ratios `z_n / z_{n-1}` are pinched between certified bounds `f` and `g`:
//!
//! * `c3(n) < 0` on a ray,
//! * `delta(n) = -6 c3(n) f(n) - 2 c2(n) >= 0` on a ray,
//! * `delta(n)^2 - Delta(n) >= 0` on a ray, where
//!   `Delta = 4 c2^2 - 12 c1 c3` (so `f` clears the relevant cubic root),
//! * `c3 g^3 + c2 g^2 + c1 g + c0 >= 0` on a ray.
//!
//! Everything is verified symbolically in exact arithmetic: the ratio
//! bounds by explicit induction certificates ([`certify_ratio_bound`]), the
//! sign claims by the ray machinery in [`crate::exactmath`], and the finite
//! prefix below the joined ray start by direct evaluation. The outcome is a
//! serializable [`Certificate`] that records every claim with witnesses.

mod certificate;

pub use certificate::{
    BaseCheck, BoundCertificate, CertVerdict, Certificate, PrefixCheck, RayClaim,
};

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{
    integer, integer_zeros, sign_on_ray, smallest_ray_start, ExactMathError, RationalFunction,
    SignKind, SignVerdict,
};
use crate::sequences::{check_log_behavior, l_transform, LogBehavior, Recurrence, SequencesError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CertifierError {
    #[error(transparent)]
    ExactMath(#[from] ExactMathError),
    #[error(transparent)]
    Sequences(#[from] SequencesError),
    #[error("expected the {expected} bound here, got the {got} bound")]
    BadBoundDirection { expected: Direction, got: Direction },
    #[error("the bound is not positive from n = {from}: its sign is {kind}")]
    BoundNotPositive { from: i64, kind: SignKind },
    #[error("the bound starts at n = {valid_from} but ratios only exist from n = {min}")]
    BadBoundRange { valid_from: i64, min: i64 },
    #[error("base case fails at n = {index}: ratio {ratio} vs bound {bound}")]
    BaseCaseFails {
        index: i64,
        // Boxed to keep the error type small; these are exact witnesses.
        ratio: Box<BigRational>,
        bound: Box<BigRational>,
    },
    #[error("coefficient b is {kind} on the ray; a {direction} bound induction needs it {needed}")]
    WrongCoefficientSign {
        kind: SignKind,
        direction: Direction,
        needed: &'static str,
    },
    #[error("the induction step gap is {kind} on its ray, not eventually positive")]
    StepNotPositive { kind: SignKind },
    #[error("could not decide the sign of the induction step gap")]
    StepSignUnknown,
    #[error("base cases reach n = {base_up_to} but the induction only starts at n = {needed}")]
    BaseRangeTooSmall { needed: i64, base_up_to: i64 },
    #[error("certification needs exact terms up to n = {needed} but the prefix stops at n = {got}")]
    PrefixTooShort { needed: i64, got: i64 },
    #[error("{what} has degree {degree}, above the cap of {cap}")]
    DegreeCapExceeded {
        what: String,
        degree: usize,
        cap: usize,
    },
    #[error("could not bound the integer zeros of {what}")]
    ZeroSetUnbounded { what: String },
}

/// Knobs for the certification pipeline.
#[derive(Debug, Clone)]
pub struct CertifyOptions {
    /// Upper bound on the degree of any symbolic witness; a safety valve
    /// against runaway expression growth.
    pub max_degree: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { max_degree: 64 }
    }
}

/// The recurrence rewritten as `z_n = a(n) z_{n-1} + b(n) z_{n-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedRecurrence {
    a: RationalFunction,
    b: RationalFunction,
    valid_from: i64,
}

impl NormalizedRecurrence {
    pub fn a(&self) -> &RationalFunction {
        &self.a
    }

    pub fn b(&self) -> &RationalFunction {
        &self.b
    }

    /// Smallest `n` for which `z_n = a(n) z_{n-1} + b(n) z_{n-2}` holds.
    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }
}

/// Rewrites `p2(n) z_{n+1} = p1(n) z_n + p0(n) z_{n-1}` as
/// `z_n = a(n) z_{n-1} + b(n) z_{n-2}` with `a(n) = p1(n-1)/p2(n-1)` and
/// `b(n) = p0(n-1)/p2(n-1)`.
///
/// Fails with a pole report when `p2` has an integer zero at or past the
/// recurrence start (the rewrite would divide by zero there).
pub fn normalize(rec: &Recurrence) -> Result<NormalizedRecurrence, CertifierError> {
    match integer_zeros(rec.p2()) {
        None => {
            return Err(CertifierError::ZeroSetUnbounded {
                what: "the leading coefficient p2".into(),
            })
        }
        Some(zeros) => {
            if let Some(&z) = zeros.iter().find(|&&z| z >= rec.start_index()) {
                return Err(ExactMathError::PoleOnRay(z).into());
            }
        }
    }
    let back = integer(-1);
    let p2 = rec.p2().taylor_shift(&back);
    let a = RationalFunction::new(rec.p1().taylor_shift(&back), p2.clone())?;
    let b = RationalFunction::new(rec.p0().taylor_shift(&back), p2)?;
    Ok(NormalizedRecurrence {
        a,
        b,
        valid_from: rec.start_index() + 1,
    })
}

/// The four cubic coefficients and the discriminant-like combination
/// `Delta = 4 c2^2 - 12 c1 c3`, all exact rational functions of `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChenXiaCoefficients {
    pub c0: RationalFunction,
    pub c1: RationalFunction,
    pub c2: RationalFunction,
    pub c3: RationalFunction,
    pub delta: RationalFunction,
}

/// Computes `c0..c3` and `Delta` from the normalized recurrence.
pub fn chenxia_coefficients(nr: &NormalizedRecurrence) -> ChenXiaCoefficients {
    let shift = |r: &RationalFunction, k: i64| r.shift(&integer(k));
    let a1 = shift(&nr.a, 1);
    let a2 = shift(&nr.a, 2);
    let a3 = shift(&nr.a, 3);
    let b1 = shift(&nr.b, 1);
    let b2 = shift(&nr.b, 2);
    let b3 = shift(&nr.b, 3);
    let by = |k: i64, r: RationalFunction| r.scale(&integer(k));

    let c0 = -(&b1 * &b1 * (&a2 * &a2 + &b1 - &a2 * &a3 - &b3));
    let c1 = &b1
        * (by(2, &a2 * &b1)
            + by(2, &a3 * &a2 * &a1)
            + &a3 * &b2
            + by(2, &a1 * &b3)
            - by(2, &a2 * &a2 * &a1)
            - by(2, &a2 * &b2)
            - by(3, &a1 * &b1));
    let c2 = by(4, &a1 * &a2 * &b1) + by(2, &b1 * &b2) + &a1 * &a1 * &a2 * &a3
        + &a1 * &a3 * &b2
        + &a1 * &a1 * &b3
        - by(3, &a1 * &a1 * &b1)
        - &a3 * &a2 * &b1
        - &a2 * &a2 * &a1 * &a1
        - &b3 * &b1
        - by(2, &a2 * &a1 * &b2)
        - &b2 * &b2;
    let c3 = by(2, &a1 * &a1 * &a2) + by(2, &a1 * &b2)
        - &a1 * &b3
        - &a1 * &a1 * &a1
        - &a1 * &a2 * &a3
        - &a3 * &b2;
    let delta = by(4, &c2 * &c2) - by(12, &c1 * &c3);
    ChenXiaCoefficients { c0, c1, c2, c3, delta }
}

/// Which side of the ratio `z_n / z_{n-1}` a bound sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Lower,
    Upper,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Lower => write!(f, "lower"),
            Direction::Upper => write!(f, "upper"),
        }
    }
}

/// A candidate bound for the consecutive-term ratio, positive on its ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioBound {
    expr: RationalFunction,
    direction: Direction,
    valid_from: i64,
}

impl RatioBound {
    /// Positivity of `expr` on `n >= valid_from` is verified here; a bound
    /// that can be zero or negative is rejected up front.
    pub fn new(
        expr: RationalFunction,
        direction: Direction,
        valid_from: i64,
    ) -> Result<Self, CertifierError> {
        let verdict = sign_on_ray(&expr, valid_from)?;
        if !verdict.kind.implies(SignKind::Positive) {
            return Err(CertifierError::BoundNotPositive {
                from: valid_from,
                kind: verdict.kind,
            });
        }
        Ok(RatioBound {
            expr,
            direction,
            valid_from,
        })
    }

    pub fn expr(&self) -> &RationalFunction {
        &self.expr
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn valid_from(&self) -> i64 {
        self.valid_from
    }
}

/// `delta(n) = -6 c3(n) f(n) - 2 c2(n)` for a lower bound `f`. Given
/// `c3 < 0`, `delta >= 0` together with `delta^2 >= Delta` says exactly
/// that `f` sits at or above the larger root of the derivative cubic.
pub fn delta_margin(
    c2: &RationalFunction,
    c3: &RationalFunction,
    lower: &RatioBound,
) -> Result<RationalFunction, CertifierError> {
    if lower.direction != Direction::Lower {
        return Err(CertifierError::BadBoundDirection {
            expected: Direction::Lower,
            got: lower.direction,
        });
    }
    Ok(c3.scale(&integer(-6)) * lower.expr() + c2.scale(&integer(-2)))
}

/// The cubic `c3 g^3 + c2 g^2 + c1 g + c0` evaluated at an upper bound `g`.
pub fn cubic_at_bound(
    coeffs: &ChenXiaCoefficients,
    upper: &RatioBound,
) -> Result<RationalFunction, CertifierError> {
    if upper.direction != Direction::Upper {
        return Err(CertifierError::BadBoundDirection {
            expected: Direction::Upper,
            got: upper.direction,
        });
    }
    let g = upper.expr();
    Ok(((&coeffs.c3 * g + &coeffs.c2) * g + &coeffs.c1) * g + &coeffs.c0)
}

fn check_degree(
    what: &str,
    r: &RationalFunction,
    opts: &CertifyOptions,
) -> Result<(), CertifierError> {
    let degree = r.degree();
    if degree > opts.max_degree {
        return Err(CertifierError::DegreeCapExceeded {
            what: what.into(),
            degree,
            cap: opts.max_degree,
        });
    }
    Ok(())
}

/// Integer points where any singular behavior of `r` can occur: zeros of
/// the denominator, and of the numerator too when `with_zeros` is set
/// (needed when `r` is later divided by).
fn singular_points(
    what: &str,
    r: &RationalFunction,
    with_zeros: bool,
) -> Result<Vec<i64>, CertifierError> {
    let mut points = integer_zeros(r.denominator()).ok_or_else(|| {
        CertifierError::ZeroSetUnbounded {
            what: format!("the denominator of {what}"),
        }
    })?;
    if with_zeros {
        let zeros = integer_zeros(r.numerator()).ok_or_else(|| {
            CertifierError::ZeroSetUnbounded {
                what: format!("the numerator of {what}"),
            }
        })?;
        points.extend(zeros);
    }
    Ok(points)
}

/// Certifies `ratio > f` (lower) or `ratio <= g` (upper) for every index
/// from the bound's start, by exact base cases on `[valid_from, base_up_to]`
/// plus an induction step whose gap is proven positive on a ray.
///
/// The induction uses the sign of `b` on the ray:
///
/// * `b <= 0`, lower `f`: gap `a(k+1) + b(k+1)/f(k) - f(k+1)`;
/// * `b <= 0`, upper `g`: gap `g(k+1) - a(k+1) - b(k+1)/g(k)`;
/// * `b >= 0`, lower `f`: gap `a(k+1) - f(k+1)` (the `b` term only helps);
/// * `b >= 0`, upper: rejected; one-sided induction cannot close it.
///
/// Soundness premise: terms are positive. For a lower certificate the bound
/// itself propagates positivity past the (positivity-checked) base range;
/// an upper certificate relies on positivity supplied elsewhere, e.g. by a
/// lower certificate, as in [`certify_two_log_convex`].
pub fn certify_ratio_bound(
    rec: &Recurrence,
    bound: &RatioBound,
    base_up_to: i64,
    opts: &CertifyOptions,
) -> Result<BoundCertificate, CertifierError> {
    let nr = normalize(rec)?;
    let min_ratio_index = rec.start_index();
    if bound.valid_from < min_ratio_index {
        return Err(CertifierError::BadBoundRange {
            valid_from: bound.valid_from,
            min: min_ratio_index,
        });
    }
    if base_up_to < bound.valid_from {
        return Err(CertifierError::BaseRangeTooSmall {
            needed: bound.valid_from,
            base_up_to,
        });
    }

    // Exact base cases, and positivity of every term they depend on.
    let terms = rec.generate_terms(base_up_to)?;
    for (index, value) in terms.iter() {
        if index >= bound.valid_from - 1 && !value.is_positive() {
            return Err(SequencesError::NonPositiveTerm {
                index,
                value: value.clone(),
            }
            .into());
        }
    }
    let mut base_checks = Vec::new();
    for (index, ratio) in terms.ratios()? {
        if index < bound.valid_from {
            continue;
        }
        let bound_value = bound.expr.eval_int(index)?;
        let ok = match bound.direction {
            Direction::Lower => ratio > bound_value,
            Direction::Upper => ratio <= bound_value,
        };
        if !ok {
            return Err(CertifierError::BaseCaseFails {
                index,
                ratio: Box::new(ratio),
                bound: Box::new(bound_value),
            });
        }
        base_checks.push(BaseCheck {
            strict: ratio != bound_value,
            index,
            ratio,
            bound: bound_value,
        });
    }

    // The step gap shape depends on the sign of b where the induction runs.
    let b_from = (bound.valid_from + 1).max(nr.valid_from);
    let b_verdict = sign_on_ray(&nr.b, b_from)?;
    let one = integer(1);
    let a_next = nr.a.shift(&one);
    let b_next = nr.b.shift(&one);
    let bound_next = bound.expr.shift(&one);
    let (step_gap, divides_by_bound) = match (bound.direction, b_verdict.kind) {
        (Direction::Lower, k) if k.implies(SignKind::Nonpositive) => (
            &a_next + b_next.checked_div(&bound.expr)? - &bound_next,
            true,
        ),
        (Direction::Lower, k) if k.implies(SignKind::Nonnegative) => (&a_next - &bound_next, false),
        (Direction::Upper, k) if k.implies(SignKind::Nonpositive) => (
            &bound_next - &a_next - b_next.checked_div(&bound.expr)?,
            true,
        ),
        (direction, kind) => {
            return Err(CertifierError::WrongCoefficientSign {
                kind,
                direction,
                needed: match direction {
                    Direction::Lower => "nonpositive or nonnegative",
                    Direction::Upper => "nonpositive",
                },
            })
        }
    };
    check_degree("the induction step gap", &step_gap, opts)?;

    // The gap claim must steer clear of every singular point: poles of the
    // shifted coefficients, poles of the bound at k and k+1, and zeros of
    // the bound when the gap divides by it. The recurrence itself must also
    // apply at k+1.
    let mut floor = nr.valid_from - 1;
    let mut singulars = singular_points("a(k+1)", &a_next, false)?;
    singulars.extend(singular_points("b(k+1)", &b_next, false)?);
    singulars.extend(singular_points(
        "the bound at k",
        &bound.expr,
        divides_by_bound,
    )?);
    singulars.extend(singular_points("the bound at k+1", &bound_next, false)?);
    if let Some(&worst) = singulars.iter().max() {
        floor = floor.max(worst + 1);
    }

    let step_from = match smallest_ray_start(&step_gap, floor, SignKind::Positive) {
        Some(k) => k,
        None => {
            return Err(match sign_on_ray(&step_gap, floor) {
                Ok(v) if v.kind == SignKind::Unknown => CertifierError::StepSignUnknown,
                Ok(v) => CertifierError::StepNotPositive { kind: v.kind },
                Err(e) => e.into(),
            })
        }
    };

    // Glue: the induction applies from max(valid_from, step_from); the base
    // cases must reach it.
    let induction_start = bound.valid_from.max(step_from);
    if base_up_to < induction_start {
        return Err(CertifierError::BaseRangeTooSmall {
            needed: induction_start,
            base_up_to,
        });
    }

    let step_verdict = sign_on_ray(&step_gap, step_from)?;
    debug_assert!(step_verdict.kind.implies(SignKind::Positive));
    Ok(BoundCertificate {
        direction: bound.direction,
        expr: bound.expr.clone(),
        valid_from: bound.valid_from,
        b_sign: b_verdict.kind,
        base_checks,
        step_gap,
        step_from,
        step_verdict,
    })
}

/// Outcomes `certify_two_log_convex` reports through a [`Certificate`]
/// rather than an error: failed preconditions map to `Inapplicable`, an
/// exact counterexample to `Refuted`, and inconclusive sign work to
/// `Unknown`. Hard errors (poles, degree caps, too-short prefixes) stay
/// `Err`.
struct Pipeline {
    rays: Vec<RayClaim>,
    witnesses: BTreeMap<String, RationalFunction>,
    bounds: Vec<BoundCertificate>,
}

impl Pipeline {
    fn abort(self, verdict: CertVerdict) -> Certificate {
        Certificate {
            verdict,
            strict: false,
            n0: None,
            rays: self.rays,
            witnesses: self.witnesses,
            prefix_checks: Vec::new(),
            bounds: self.bounds,
        }
    }

    /// Records a ray claim, or reports how it failed.
    fn claim(
        &mut self,
        name: &str,
        r: &RationalFunction,
        floor: i64,
        required: SignKind,
    ) -> Result<Option<i64>, CertifierError> {
        match smallest_ray_start(r, floor, required) {
            Some(from) => {
                let verdict = sign_on_ray(r, from)?;
                debug_assert!(verdict.kind.implies(required));
                self.rays.push(RayClaim {
                    name: name.into(),
                    from,
                    claim: required,
                    verdict,
                });
                Ok(Some(from))
            }
            None => {
                // Record what is known about the failed claim.
                let verdict = sign_on_ray(r, floor).unwrap_or(SignVerdict {
                    kind: SignKind::Unknown,
                    method: crate::exactmath::DecisionMethod::SturmBisection,
                    witnesses: Vec::new(),
                });
                self.rays.push(RayClaim {
                    name: name.into(),
                    from: floor,
                    claim: required,
                    verdict,
                });
                Ok(None)
            }
        }
    }
}

/// Certifies that the solution of `rec` is strictly 2-log-convex: writing
/// `s_n = z_{n-1} z_{n+1} - z_n^2`, proves `s_n s_{n+2} > s_{n+1}^2` for
/// every admissible `n`.
///
/// `lower` and `upper` pinch the consecutive-term ratio; `prefix_up_to`
/// controls how many exact terms back the base cases and the below-the-ray
/// checks. The certificate's `n0` is the joined ray start: beyond it the
/// symbolic claims apply, below it the inequality is checked term by term.
pub fn certify_two_log_convex(
    rec: &Recurrence,
    lower: &RatioBound,
    upper: &RatioBound,
    prefix_up_to: i64,
    opts: &CertifyOptions,
) -> Result<Certificate, CertifierError> {
    if lower.direction != Direction::Lower {
        return Err(CertifierError::BadBoundDirection {
            expected: Direction::Lower,
            got: lower.direction,
        });
    }
    if upper.direction != Direction::Upper {
        return Err(CertifierError::BadBoundDirection {
            expected: Direction::Upper,
            got: upper.direction,
        });
    }

    let nr = normalize(rec)?;
    let coeffs = chenxia_coefficients(&nr);
    let mut pipe = Pipeline {
        rays: Vec::new(),
        witnesses: BTreeMap::new(),
        bounds: Vec::new(),
    };
    for (name, r) in [
        ("c0", &coeffs.c0),
        ("c1", &coeffs.c1),
        ("c2", &coeffs.c2),
        ("c3", &coeffs.c3),
        ("Delta", &coeffs.delta),
    ] {
        check_degree(name, r, opts)?;
        pipe.witnesses.insert(name.into(), r.clone());
    }

    // The criterion hinges on c3 < 0; anything else makes it inapplicable.
    let ray_floor = nr.valid_from - 1;
    let c3_from = match pipe.claim("c3", &coeffs.c3, ray_floor, SignKind::Negative)? {
        Some(from) => from,
        None => {
            return Ok(pipe.abort(CertVerdict::Inapplicable {
                reason: format!(
                    "c3 is not eventually negative on the ray n >= {ray_floor}; \
                     the cubic criterion does not apply"
                ),
            }))
        }
    };

    // Positivity and log-convexity of the prefix: the premises of the
    // criterion. A log-convexity violation refutes 2-log-convexity itself.
    let terms = rec.generate_terms(prefix_up_to)?;
    if let Some((index, value)) = terms.first_nonpositive() {
        let value = value.clone();
        return Ok(pipe.abort(CertVerdict::Inapplicable {
            reason: format!("premise fails: z[{index}] = {value} is not positive"),
        }));
    }
    let convexity = check_log_behavior(&terms, LogBehavior::LogConvex, false)?;
    if let Some(v) = convexity.first_violation {
        return Ok(pipe.abort(CertVerdict::Refuted { violation: v }));
    }

    // Ratio pinching: both bound certificates. A bound that fails leaves
    // the verdict unknown (a different pair might still work), but a
    // coefficient sign the induction shapes cannot handle is a premise
    // failure of the method itself.
    for bound in [lower, upper] {
        match certify_ratio_bound(rec, bound, prefix_up_to, opts) {
            Ok(cert) => pipe.bounds.push(cert),
            Err(e @ CertifierError::WrongCoefficientSign { .. }) => {
                return Ok(pipe.abort(CertVerdict::Inapplicable {
                    reason: e.to_string(),
                }))
            }
            Err(
                e @ (CertifierError::BaseCaseFails { .. }
                | CertifierError::StepNotPositive { .. }
                | CertifierError::StepSignUnknown),
            ) => {
                return Ok(pipe.abort(CertVerdict::Unknown {
                    reason: format!("the {} bound certificate failed: {e}", bound.direction),
                }))
            }
            Err(e) => return Err(e),
        }
    }

    // The three remaining symbolic claims.
    let delta = delta_margin(&coeffs.c2, &coeffs.c3, lower)?;
    check_degree("delta", &delta, opts)?;
    pipe.witnesses.insert("delta".into(), delta.clone());
    let margin = &delta * &delta - &coeffs.delta;
    check_degree("delta^2 - Delta", &margin, opts)?;
    pipe.witnesses.insert("deltaSqMinusDelta".into(), margin.clone());
    let cubic = cubic_at_bound(&coeffs, upper)?;
    check_degree("the cubic at the upper bound", &cubic, opts)?;
    pipe.witnesses.insert("cubicAtUpperBound".into(), cubic.clone());
    pipe.witnesses
        .insert("lowerInductionGap".into(), pipe.bounds[0].step_gap.clone());
    pipe.witnesses
        .insert("upperInductionGap".into(), pipe.bounds[1].step_gap.clone());

    let f_floor = ray_floor.max(lower.valid_from);
    let g_floor = ray_floor.max(upper.valid_from);
    let mut starts = vec![c3_from, lower.valid_from, upper.valid_from];
    for (name, r, floor) in [
        ("delta", &delta, f_floor),
        ("deltaSqMinusDelta", &margin, f_floor),
        ("cubicAtUpperBound", &cubic, g_floor),
    ] {
        match pipe.claim(name, r, floor, SignKind::Nonnegative)? {
            Some(from) => starts.push(from),
            None => {
                return Ok(pipe.abort(CertVerdict::Unknown {
                    reason: format!("{name} is not eventually nonnegative on its ray"),
                }))
            }
        }
    }

    // Joined ray start, then the finite prefix below it.
    let n0 = starts.into_iter().max().expect("nonempty");
    let needed = n0 + 5;
    if prefix_up_to < needed {
        return Err(CertifierError::PrefixTooShort {
            needed,
            got: prefix_up_to,
        });
    }
    let s = l_transform(&terms)?;
    let mut prefix_checks = Vec::new();
    // Strict certification wants strictly signed ray verdicts (not just the
    // nonnegativity the conditions ask for) and strict prefix inequalities.
    let mut strict = pipe
        .rays
        .iter()
        .all(|r| matches!(r.verdict.kind, SignKind::Positive | SignKind::Negative));
    for index in s.origin()..=n0 + 2 {
        // Same orientation as the log-convexity checks: the middle-term
        // square on the left, required not to exceed its neighbors' product.
        let lhs = s.get(index + 1).unwrap() * s.get(index + 1).unwrap();
        let rhs = s.get(index).unwrap() * s.get(index + 2).unwrap();
        if lhs > rhs {
            return Ok(pipe.abort(CertVerdict::Refuted {
                violation: crate::sequences::Violation {
                    stage: 1,
                    index,
                    lhs,
                    rhs,
                },
            }));
        }
        let this_strict = lhs < rhs;
        strict &= this_strict;
        prefix_checks.push(PrefixCheck {
            index,
            lhs,
            rhs,
            strict: this_strict,
        });
    }

    Ok(Certificate {
        verdict: CertVerdict::Certified,
        strict,
        n0: Some(n0),
        rays: pipe.rays,
        witnesses: pipe.witnesses,
        prefix_checks,
        bounds: pipe.bounds,
    })
}

#[cfg(test)]
mod tests;
