//! Recurrence-defined sequences, exact term generation, and log-behavior
//! checks.
//!
//! A [`Recurrence`] describes `p2(n) z_{n+1} = p1(n) z_n + p0(n) z_{n-1}`
//! for `n >= start_index`, together with the two initial values
//! `z_{start_index - 1}` and `z_{start_index}`. Terms live in a
//! [`TermTable`] indexed by absolute position, and the checkers decide
//! log-concavity, log-convexity, log-balancedness, k-log-convexity, and
//! log-concavity of the quotient sequence, each in exact arithmetic with an
//! explicit first violation when one exists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequencesError {
    /// `p2` vanished at the index where the next term would be produced.
    #[error("leading coefficient p2({0}) = 0; the recurrence cannot produce the next term")]
    LeadingCoefficientZero(i64),
    #[error("too few terms: the check needs {needed} but the table holds {got}")]
    TooFewTerms { needed: usize, got: usize },
    #[error("term z[{index}] = {value} is not positive, as the check requires")]
    NonPositiveTerm { index: i64, value: BigRational },
    #[error("term z[{index}] = 0 cannot be a ratio denominator")]
    ZeroTerm { index: i64 },
    #[error("requested range ends at {n_max} but the recurrence starts at {start_index}")]
    InvalidRange { n_max: i64, start_index: i64 },
    #[error("{0}")]
    InvalidParameter(String),
}

/// `p2(n) z_{n+1} = p1(n) z_n + p0(n) z_{n-1}` for `n >= start_index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    p2: Polynomial,
    p1: Polynomial,
    p0: Polynomial,
    start_index: i64,
    initial: (BigRational, BigRational),
}

impl Recurrence {
    /// `initial` is `(z_{start_index - 1}, z_{start_index})`.
    pub fn new(
        p2: Polynomial,
        p1: Polynomial,
        p0: Polynomial,
        start_index: i64,
        initial: (BigRational, BigRational),
    ) -> Result<Self, SequencesError> {
        if p2.is_zero() {
            return Err(SequencesError::InvalidParameter(
                "p2 must not be the zero polynomial".into(),
            ));
        }
        Ok(Recurrence {
            p2,
            p1,
            p0,
            start_index,
            initial,
        })
    }

    pub fn p2(&self) -> &Polynomial {
        &self.p2
    }

    pub fn p1(&self) -> &Polynomial {
        &self.p1
    }

    pub fn p0(&self) -> &Polynomial {
        &self.p0
    }

    pub fn start_index(&self) -> i64 {
        self.start_index
    }

    pub fn initial(&self) -> &(BigRational, BigRational) {
        &self.initial
    }

    /// Index of the first stored term, `start_index - 1`.
    pub fn origin(&self) -> i64 {
        self.start_index - 1
    }

    /// Generates `z_{origin} ..= z_{n_max}` exactly.
    pub fn generate_terms(&self, n_max: i64) -> Result<TermTable, SequencesError> {
        if n_max < self.start_index {
            return Err(SequencesError::InvalidRange {
                n_max,
                start_index: self.start_index,
            });
        }
        let len = (n_max - self.origin() + 1) as usize;
        let mut values = Vec::with_capacity(len);
        values.push(self.initial.0.clone());
        values.push(self.initial.1.clone());
        for n in self.start_index..n_max {
            let lead = self.p2.eval_int(n);
            if lead.is_zero() {
                return Err(SequencesError::LeadingCoefficientZero(n));
            }
            let prev = &values[values.len() - 2];
            let cur = &values[values.len() - 1];
            let next = (self.p1.eval_int(n) * cur + self.p0.eval_int(n) * prev) / lead;
            values.push(next);
        }
        Ok(TermTable {
            origin: self.origin(),
            values,
        })
    }

    /// The sequence 1, 8, 80, 896, 10816, ... defined by
    /// `(n+1)^2 z_{n+1} = 8(3n^2+3n+1) z_n - 128 n^2 z_{n-1}`.
    pub fn catalan_larcombe_french() -> Recurrence {
        Recurrence::new(
            Polynomial::from_integers(&[1, 2, 1]),
            Polynomial::from_integers(&[8, 24, 24]),
            Polynomial::from_integers(&[0, 0, -128]),
            1,
            (BigRational::one(), BigRational::from_integer(8.into())),
        )
        .expect("constant-free construction")
    }
}

/// Exact terms `z_{origin} ..= z_{origin + len - 1}` of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermTable {
    origin: i64,
    values: Vec<BigRational>,
}

impl TermTable {
    pub fn new(origin: i64, values: Vec<BigRational>) -> Self {
        TermTable { origin, values }
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn last_index(&self) -> i64 {
        self.origin + self.values.len() as i64 - 1
    }

    pub fn get(&self, index: i64) -> Option<&BigRational> {
        let offset = usize::try_from(index.checked_sub(self.origin)?).ok()?;
        self.values.get(offset)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.values
            .iter()
            .enumerate()
            .map(|(k, v)| (self.origin + k as i64, v))
    }

    /// First index whose term is `<= 0`, if any.
    pub fn first_nonpositive(&self) -> Option<(i64, &BigRational)> {
        self.iter().find(|(_, v)| !v.is_positive())
    }

    /// True when every stored term is an integer.
    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.denom().is_one())
    }

    /// Consecutive ratios `(i, z_i / z_{i-1})` for `i > origin`.
    pub fn ratios(&self) -> Result<Vec<(i64, BigRational)>, SequencesError> {
        let mut out = Vec::with_capacity(self.values.len().saturating_sub(1));
        for w in self.values.windows(2).enumerate() {
            let (k, pair) = w;
            if pair[0].is_zero() {
                return Err(SequencesError::ZeroTerm {
                    index: self.origin + k as i64,
                });
            }
            out.push((self.origin + k as i64 + 1, &pair[1] / &pair[0]));
        }
        Ok(out)
    }

    fn require_len(&self, needed: usize) -> Result<(), SequencesError> {
        if self.values.len() < needed {
            return Err(SequencesError::TooFewTerms {
                needed,
                got: self.values.len(),
            });
        }
        Ok(())
    }

    fn require_positive(&self) -> Result<(), SequencesError> {
        if let Some((index, value)) = self.first_nonpositive() {
            return Err(SequencesError::NonPositiveTerm {
                index,
                value: value.clone(),
            });
        }
        Ok(())
    }
}

/// `L(z)_n = z_{n-1} z_{n+1} - z_n^2` on the interior indices; the result
/// starts at `origin + 1` and is two entries shorter.
pub fn l_transform(table: &TermTable) -> Result<TermTable, SequencesError> {
    table.require_len(3)?;
    let v = &table.values;
    let values = (1..v.len() - 1)
        .map(|k| &v[k - 1] * &v[k + 1] - &v[k] * &v[k])
        .collect();
    Ok(TermTable {
        origin: table.origin + 1,
        values,
    })
}

/// The log-behavior properties the checker decides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBehavior {
    /// `z_n^2 >= z_{n-1} z_{n+1}` at interior indices.
    LogConcave,
    /// `z_n^2 <= z_{n-1} z_{n+1}` at interior indices.
    LogConvex,
    /// Log-convex and `{z_n / n!}` log-concave; the second half is checked
    /// in the factorial-free form `(n+1) z_n^2 >= n z_{n+1} z_{n-1}`.
    LogBalanced,
    /// `L^j(z)` log-convex for every `j < k`.
    KLogConvex(u32),
    /// The quotient sequence `z_n / z_{n-1}` is log-concave, in the
    /// cross-multiplied form `z_{n-2} z_n^3 >= z_{n+1} z_{n-1}^3`.
    QuotientLogConcave,
}

impl std::fmt::Display for LogBehavior {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBehavior::LogConcave => write!(f, "log-concave"),
            LogBehavior::LogConvex => write!(f, "log-convex"),
            LogBehavior::LogBalanced => write!(f, "log-balanced"),
            LogBehavior::KLogConvex(k) => write!(f, "{k}-log-convex"),
            LogBehavior::QuotientLogConcave => write!(f, "quotient-log-concave"),
        }
    }
}

/// The first place a property fails.
///
/// `stage` selects the layer: the `L`-iterate for k-log-convexity (0 is the
/// sequence itself), or 0 = convex half / 1 = factorial-free concave half
/// for log-balancedness. The inequality that failed compared `lhs` against
/// `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub stage: u32,
    pub index: i64,
    #[serde(with = "crate::exactmath::rat_string")]
    pub lhs: BigRational,
    #[serde(with = "crate::exactmath::rat_string")]
    pub rhs: BigRational,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "stage {} at n = {}: {} vs {}",
            self.stage, self.index, self.lhs, self.rhs
        )
    }
}

/// Outcome of a log-behavior check over a concrete term table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorVerdict {
    pub property: LogBehavior,
    pub strict: bool,
    pub holds: bool,
    pub first_violation: Option<Violation>,
}

enum Direction {
    /// Require `lhs >= rhs` (or `>` when strict).
    AtLeast,
    /// Require `lhs <= rhs` (or `<` when strict).
    AtMost,
}

fn satisfied(lhs: &BigRational, rhs: &BigRational, dir: &Direction, strict: bool) -> bool {
    match (dir, strict) {
        (Direction::AtLeast, false) => lhs >= rhs,
        (Direction::AtLeast, true) => lhs > rhs,
        (Direction::AtMost, false) => lhs <= rhs,
        (Direction::AtMost, true) => lhs < rhs,
    }
}

/// Scans interior indices with a window inequality; returns the first
/// violation. `make` maps the window position to `(index, lhs, rhs)`.
fn scan(
    count: usize,
    stage: u32,
    dir: Direction,
    strict: bool,
    make: impl Fn(usize) -> (i64, BigRational, BigRational),
) -> Option<Violation> {
    for w in 0..count {
        let (index, lhs, rhs) = make(w);
        if !satisfied(&lhs, &rhs, &dir, strict) {
            return Some(Violation {
                stage,
                index,
                lhs,
                rhs,
            });
        }
    }
    None
}

fn convexity_violation(
    table: &TermTable,
    stage: u32,
    dir: Direction,
    strict: bool,
) -> Result<Option<Violation>, SequencesError> {
    table.require_len(3)?;
    let v = &table.values;
    Ok(scan(v.len() - 2, stage, dir, strict, |w| {
        let k = w + 1;
        (
            table.origin + k as i64,
            &v[k] * &v[k],
            &v[k - 1] * &v[k + 1],
        )
    }))
}

/// Decides `property` on the table, strictly or not. The verdict carries
/// the first violation when the property fails.
///
/// Positivity of every term is required for `LogBalanced` and
/// `QuotientLogConcave`; its absence is an error, not a failed verdict.
pub fn check_log_behavior(
    table: &TermTable,
    property: LogBehavior,
    strict: bool,
) -> Result<BehaviorVerdict, SequencesError> {
    let first_violation = match property {
        LogBehavior::LogConcave => convexity_violation(table, 0, Direction::AtLeast, strict)?,
        LogBehavior::LogConvex => convexity_violation(table, 0, Direction::AtMost, strict)?,
        LogBehavior::LogBalanced => {
            if table.origin < 0 {
                return Err(SequencesError::InvalidParameter(
                    "log-balanced is defined for tables starting at n >= 0".into(),
                ));
            }
            table.require_positive()?;
            let convex = convexity_violation(table, 0, Direction::AtMost, strict)?;
            match convex {
                Some(v) => Some(v),
                None => {
                    let v = &table.values;
                    scan(v.len() - 2, 1, Direction::AtLeast, strict, |w| {
                        let k = w + 1;
                        let n = table.origin + k as i64;
                        let rat_n = BigRational::from_integer(BigInt::from(n));
                        let rat_n1 = BigRational::from_integer(BigInt::from(n + 1));
                        (n, rat_n1 * &v[k] * &v[k], rat_n * &v[k + 1] * &v[k - 1])
                    })
                }
            }
        }
        LogBehavior::KLogConvex(k) => {
            if k == 0 {
                return Err(SequencesError::InvalidParameter(
                    "k-log-convexity needs k >= 1".into(),
                ));
            }
            table.require_len(2 * k as usize + 3)?;
            let mut current = table.clone();
            let mut found = None;
            for stage in 0..k {
                if let Some(mut v) =
                    convexity_violation(&current, stage, Direction::AtMost, strict)?
                {
                    v.stage = stage;
                    found = Some(v);
                    break;
                }
                if stage + 1 < k {
                    current = l_transform(&current)?;
                }
            }
            found
        }
        LogBehavior::QuotientLogConcave => {
            table.require_len(4)?;
            table.require_positive()?;
            let v = &table.values;
            scan(v.len() - 3, 0, Direction::AtLeast, strict, |w| {
                let k = w + 2;
                (
                    table.origin + k as i64,
                    &v[k - 2] * &v[k] * &v[k] * &v[k],
                    &v[k + 1] * &v[k - 1] * &v[k - 1] * &v[k - 1],
                )
            })
        }
    };
    Ok(BehaviorVerdict {
        property,
        strict,
        holds: first_violation.is_none(),
        first_violation,
    })
}

/// Closed form for the sequence of [`Recurrence::catalan_larcombe_french`]:
///
/// `z_n = 2^n * sum_k (-4)^k C(n-k, k) C(2n-2k, n-k)^2`,
///
/// where `C(a, b) = 0` outside `0 <= b <= a`. Consecutive summands are
/// related by small integer factors, so the sum runs in `O(n)` big-integer
/// operations.
pub fn clf_closed_form(n: u32) -> BigInt {
    let n = i64::from(n);
    // term(0) = C(2n, n)^2, multiplicatively.
    let mut central = BigInt::one();
    for i in 1..=n {
        central = central * BigInt::from(n + i) / BigInt::from(i);
    }
    let mut term = &central * &central;
    let mut sum = term.clone();
    let mut k = 0i64;
    while 2 * (k + 1) <= n {
        // term(k+1) = -term(k) (n-2k)(n-2k-1)(n-k) / ((k+1)(2n-2k-1)^2);
        // exact because each term is an integer.
        let numer = BigInt::from((n - 2 * k) * (n - 2 * k - 1) * (n - k));
        let denom = BigInt::from((k + 1) * (2 * n - 2 * k - 1) * (2 * n - 2 * k - 1));
        let scaled = -term * numer;
        debug_assert!((&scaled % &denom).is_zero());
        term = scaled / denom;
        sum += &term;
        k += 1;
    }
    sum << n
}
