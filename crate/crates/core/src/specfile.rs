//! The `.seq` sequence-specification file format.
//!
//! A spec is a line-oriented `key = value` document with sections, carrying
//! a three-term recurrence, optional ratio bounds, and an optional builtin
//! closed-form tag. `#` starts a comment; blank lines are ignored. All
//! values are exact: polynomial and rational-function values use the
//! expression grammar of [`crate::exactmath`].
//!
//! ```text
//! name = catalan-larcombe-french
//!
//! [recurrence]
//! p2 = (n + 1)^2          # of p2(n) z_{n+1} = p1(n) z_n + p0(n) z_{n-1}
//! p1 = 8*(3*n^2 + 3*n + 1)
//! p0 = -128*n^2
//! start = 1
//! initial = 1, 8          # z_{start-1}, z_{start}
//!
//! [closed-form]
//! builtin = clf-binomial-sum
//!
//! [bounds]
//! lower = 232*n / (15*(n + 2))
//! lower-from = 1
//! upper = 16 - 16/n - 16/n^3
//! upper-from = 6
//! ```
//!
//! [`parse_spec`] and [`SequenceSpec::render`] round-trip: parsing a
//! rendered spec reproduces it exactly.

use num_rational::BigRational;
use thiserror::Error;

use crate::certifier::{CertifierError, Direction, RatioBound};
use crate::exactmath::{
    parse_expression, parse_rational_literal, Polynomial, RationalFunction,
};
use crate::sequences::{Recurrence, SequencesError};

/// Closed-form tags the tools know how to evaluate independently.
pub const KNOWN_CLOSED_FORMS: &[&str] = &["clf-binomial-sum"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecFileError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: unknown key '{key}'")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: '{key}' was already given")]
    DuplicateKey { line: usize, key: String },
    #[error("missing required key '{key}'")]
    MissingKey { key: String },
    #[error("line {line}: {what} must be a polynomial in n, not a proper rational function")]
    NotPolynomial { line: usize, what: String },
}

/// Both ratio bounds, as parsed; positivity is checked when the bounds are
/// turned into [`RatioBound`]s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecBounds {
    pub lower: RationalFunction,
    pub lower_from: i64,
    pub upper: RationalFunction,
    pub upper_from: i64,
}

impl SpecBounds {
    pub fn lower_bound(&self) -> Result<RatioBound, CertifierError> {
        RatioBound::new(self.lower.clone(), Direction::Lower, self.lower_from)
    }

    pub fn upper_bound(&self) -> Result<RatioBound, CertifierError> {
        RatioBound::new(self.upper.clone(), Direction::Upper, self.upper_from)
    }
}

/// A parsed sequence specification.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceSpec {
    pub name: String,
    pub p2: Polynomial,
    pub p1: Polynomial,
    pub p0: Polynomial,
    pub start_index: i64,
    pub initial: (BigRational, BigRational),
    pub closed_form: Option<String>,
    pub bounds: Option<SpecBounds>,
}

impl SequenceSpec {
    pub fn recurrence(&self) -> Result<Recurrence, SequencesError> {
        Recurrence::new(
            self.p2.clone(),
            self.p1.clone(),
            self.p0.clone(),
            self.start_index,
            self.initial.clone(),
        )
    }

    /// Renders the spec in the file format; parsing the result reproduces
    /// `self` exactly.
    pub fn render(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out);
        let _ = writeln!(out, "[recurrence]");
        let _ = writeln!(out, "p2 = {}", self.p2);
        let _ = writeln!(out, "p1 = {}", self.p1);
        let _ = writeln!(out, "p0 = {}", self.p0);
        let _ = writeln!(out, "start = {}", self.start_index);
        let _ = writeln!(out, "initial = {}, {}", self.initial.0, self.initial.1);
        if let Some(tag) = &self.closed_form {
            let _ = writeln!(out);
            let _ = writeln!(out, "[closed-form]");
            let _ = writeln!(out, "builtin = {tag}");
        }
        if let Some(bounds) = &self.bounds {
            let _ = writeln!(out);
            let _ = writeln!(out, "[bounds]");
            let _ = writeln!(out, "lower = {}", bounds.lower);
            let _ = writeln!(out, "lower-from = {}", bounds.lower_from);
            let _ = writeln!(out, "upper = {}", bounds.upper);
            let _ = writeln!(out, "upper-from = {}", bounds.upper_from);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Top,
    Recurrence,
    ClosedForm,
    Bounds,
}

/// One `key = value` occurrence, with the position of the value for error
/// reporting.
struct RawValue {
    line: usize,
    col: usize,
    text: String,
}

impl RawValue {
    fn syntax(&self, message: impl Into<String>) -> SpecFileError {
        SpecFileError::Syntax {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }

    /// Re-anchors an expression-grammar error (positions relative to the
    /// value text, which is always a single line) onto the spec document.
    fn expression_error(&self, e: crate::exactmath::ParseError) -> SpecFileError {
        SpecFileError::Syntax {
            line: self.line,
            col: self.col + e.col - 1,
            message: e.message,
        }
    }

    fn expression(&self) -> Result<RationalFunction, SpecFileError> {
        parse_expression(&self.text).map_err(|e| self.expression_error(e))
    }

    fn polynomial(&self, what: &str) -> Result<Polynomial, SpecFileError> {
        self.expression()?
            .as_polynomial()
            .ok_or_else(|| SpecFileError::NotPolynomial {
                line: self.line,
                what: what.into(),
            })
    }

    fn integer(&self) -> Result<i64, SpecFileError> {
        self.text
            .parse()
            .map_err(|_| self.syntax(format!("expected an integer, got '{}'", self.text)))
    }
}

#[derive(Default)]
struct Slot(Option<RawValue>);

impl Slot {
    fn set(&mut self, key: &str, value: RawValue) -> Result<(), SpecFileError> {
        if self.0.is_some() {
            return Err(SpecFileError::DuplicateKey {
                line: value.line,
                key: key.into(),
            });
        }
        self.0 = Some(value);
        Ok(())
    }

    fn require(&self, key: &str) -> Result<&RawValue, SpecFileError> {
        self.0
            .as_ref()
            .ok_or_else(|| SpecFileError::MissingKey { key: key.into() })
    }
}

pub fn parse_spec(text: &str) -> Result<SequenceSpec, SpecFileError> {
    let mut section = Section::Top;
    let mut name = Slot::default();
    let mut p2 = Slot::default();
    let mut p1 = Slot::default();
    let mut p0 = Slot::default();
    let mut start = Slot::default();
    let mut initial = Slot::default();
    let mut builtin = Slot::default();
    let mut lower = Slot::default();
    let mut lower_from = Slot::default();
    let mut upper = Slot::default();
    let mut upper_from = Slot::default();

    for (line_no, raw_line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(section_name) = inner.strip_suffix(']') else {
                return Err(SpecFileError::Syntax {
                    line: line_no,
                    col: line.find('[').unwrap_or(0) + 1,
                    message: "unterminated section header".into(),
                });
            };
            section = match section_name.trim() {
                "recurrence" => Section::Recurrence,
                "closed-form" => Section::ClosedForm,
                "bounds" => Section::Bounds,
                other => {
                    return Err(SpecFileError::UnknownKey {
                        line: line_no,
                        key: format!("[{other}]"),
                    })
                }
            };
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(SpecFileError::Syntax {
                line: line_no,
                col: line.len() - line.trim_start().len() + 1,
                message: "expected 'key = value'".into(),
            });
        };
        let key = line[..eq].trim();
        let after_eq = &line[eq + 1..];
        let value_text = after_eq.trim();
        if value_text.is_empty() {
            return Err(SpecFileError::Syntax {
                line: line_no,
                col: eq + 2,
                message: format!("'{key}' has an empty value"),
            });
        }
        // Column of the first value character, 1-based in the raw line.
        let col = eq + 1 + (after_eq.len() - after_eq.trim_start().len()) + 1;
        let value = RawValue {
            line: line_no,
            col,
            text: value_text.to_string(),
        };
        let slot = match (section, key) {
            (Section::Top, "name") => &mut name,
            (Section::Recurrence, "p2") => &mut p2,
            (Section::Recurrence, "p1") => &mut p1,
            (Section::Recurrence, "p0") => &mut p0,
            (Section::Recurrence, "start") => &mut start,
            (Section::Recurrence, "initial") => &mut initial,
            (Section::ClosedForm, "builtin") => &mut builtin,
            (Section::Bounds, "lower") => &mut lower,
            (Section::Bounds, "lower-from") => &mut lower_from,
            (Section::Bounds, "upper") => &mut upper,
            (Section::Bounds, "upper-from") => &mut upper_from,
            (_, key) => {
                return Err(SpecFileError::UnknownKey {
                    line: line_no,
                    key: key.into(),
                })
            }
        };
        slot.set(key, value)?;
    }

    let initial = initial.require("initial")?;
    let parts: Vec<&str> = initial.text.split(',').collect();
    if parts.len() != 2 {
        return Err(initial.syntax(format!(
            "expected exactly two initial values separated by a comma, got {}",
            parts.len()
        )));
    }
    let mut offset = 0;
    let mut values = Vec::new();
    for part in &parts {
        let value = parse_rational_literal(part).map_err(|e| SpecFileError::Syntax {
            line: initial.line,
            col: initial.col + offset + e.col - 1,
            message: e.message,
        })?;
        values.push(value);
        offset += part.len() + 1;
    }
    let z1 = values.pop().expect("two values");
    let z0 = values.pop().expect("two values");

    let closed_form = match &builtin.0 {
        None => None,
        Some(v) => {
            if !KNOWN_CLOSED_FORMS.contains(&v.text.as_str()) {
                return Err(v.syntax(format!(
                    "unknown closed form '{}'; known: {}",
                    v.text,
                    KNOWN_CLOSED_FORMS.join(", ")
                )));
            }
            Some(v.text.clone())
        }
    };

    let bounds_given = [&lower, &lower_from, &upper, &upper_from]
        .iter()
        .any(|s| s.0.is_some());
    let bounds = if bounds_given {
        Some(SpecBounds {
            lower: lower.require("bounds.lower")?.expression()?,
            lower_from: lower_from.require("bounds.lower-from")?.integer()?,
            upper: upper.require("bounds.upper")?.expression()?,
            upper_from: upper_from.require("bounds.upper-from")?.integer()?,
        })
    } else {
        None
    };

    Ok(SequenceSpec {
        name: name.require("name")?.text.clone(),
        p2: p2.require("p2")?.polynomial("p2")?,
        p1: p1.require("p1")?.polynomial("p1")?,
        p0: p0.require("p0")?.polynomial("p0")?,
        start_index: start.require("start")?.integer()?,
        initial: (z0, z1),
        closed_form,
        bounds,
    })
}
