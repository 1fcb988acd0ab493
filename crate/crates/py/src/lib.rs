//! Python bindings for the seqcert core: exact term generation, log-behavior
//! checks, and 2-log-convexity certification, all exposed with exact values
//! (`int` / `fractions.Fraction`) on the Python side.
//!
//! Built as `seqcert_py`. The `extension-module` feature is deliberately not
//! enabled, so the crate also compiles as a plain library under
//! `cargo test --workspace`; the produced `libseqcert_py.so` imports fine
//! when renamed to `seqcert_py.so` (see `python/smoke_test.py`).

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::{PyIOError, PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use seqcert_core::certifier::{
    certify_two_log_convex, CertVerdict, Certificate as CoreCertificate, CertifyOptions,
    Direction, RatioBound,
};
use seqcert_core::exactmath::{parse_expression, RationalFunction as CoreRationalFunction};
use seqcert_core::sequences::{
    check_log_behavior, clf_closed_form as core_clf_closed_form, LogBehavior,
    Recurrence as CoreRecurrence, TermTable as CoreTermTable,
};
use seqcert_core::specfile::{parse_spec, SequenceSpec};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts either an `int` or a `fractions.Fraction`.
fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<BigRational> {
    if let Ok(r) = obj.extract::<BigRational>() {
        return Ok(r);
    }
    if let Ok(i) = obj.extract::<BigInt>() {
        return Ok(BigRational::from_integer(i));
    }
    Err(PyTypeError::new_err(
        "expected an int or fractions.Fraction",
    ))
}

fn parse_rf(text: &str) -> PyResult<CoreRationalFunction> {
    parse_expression(text).map_err(value_error)
}

fn behavior_from_name(name: &str, k: Option<u32>) -> PyResult<LogBehavior> {
    let behavior = match name {
        "log-concave" => LogBehavior::LogConcave,
        "log-convex" => LogBehavior::LogConvex,
        "log-balanced" => LogBehavior::LogBalanced,
        "quotient-log-concave" => LogBehavior::QuotientLogConcave,
        "k-log-convex" => {
            let k = k.ok_or_else(|| {
                PyValueError::new_err("property 'k-log-convex' requires the k argument")
            })?;
            return Ok(LogBehavior::KLogConvex(k));
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown property '{other}'; expected one of log-concave, log-convex, \
                 log-balanced, k-log-convex, quotient-log-concave"
            )))
        }
    };
    if k.is_some() {
        return Err(PyValueError::new_err(
            "the k argument only applies to 'k-log-convex'",
        ));
    }
    Ok(behavior)
}

/// A univariate rational function over exact rationals.
#[pyclass(name = "RationalFunction", module = "seqcert_py")]
struct PyRationalFunction {
    inner: CoreRationalFunction,
}

#[pymethods]
impl PyRationalFunction {
    /// Parses expressions like `"232*n / (15*(n + 2))"` or `"16 - 16/n"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self {
            inner: parse_rf(text)?,
        })
    }

    /// Exact value at the integer `n`, as a `fractions.Fraction`.
    fn eval(&self, n: i64) -> PyResult<BigRational> {
        self.inner.eval_int(n).map_err(value_error)
    }

    /// Max of numerator and denominator degrees.
    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RationalFunction('{}')", self.inner)
    }
}

/// Exactly generated terms `z_n` for `origin <= n <= last_index`.
#[pyclass(name = "TermTable", module = "seqcert_py")]
struct PyTermTable {
    inner: CoreTermTable,
}

#[pymethods]
impl PyTermTable {
    #[getter]
    fn origin(&self) -> i64 {
        self.inner.origin()
    }

    #[getter]
    fn last_index(&self) -> i64 {
        self.inner.last_index()
    }

    /// Term at index `n`, or None outside the generated range.
    fn get(&self, n: i64) -> Option<BigRational> {
        self.inner.get(n).cloned()
    }

    /// All terms in index order, as exact `fractions.Fraction` values.
    fn values(&self) -> Vec<BigRational> {
        self.inner.values().to_vec()
    }

    /// True when every generated term is an integer.
    fn is_integral(&self) -> bool {
        self.inner.is_integral()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "TermTable(origin={}, last_index={}, len={})",
            self.inner.origin(),
            self.inner.last_index(),
            self.inner.len()
        )
    }
}

/// Outcome of a log-behavior check on exact terms.
#[pyclass(name = "CheckOutcome", module = "seqcert_py")]
struct PyCheckOutcome {
    #[pyo3(get)]
    holds: bool,
    #[pyo3(get)]
    property: String,
    #[pyo3(get)]
    strict: bool,
    #[pyo3(get)]
    first_violation: Option<String>,
}

#[pymethods]
impl PyCheckOutcome {
    fn __bool__(&self) -> bool {
        self.holds
    }

    fn __repr__(&self) -> String {
        match &self.first_violation {
            Some(v) => format!(
                "CheckOutcome(property='{}', holds={}, first_violation='{v}')",
                self.property, self.holds
            ),
            None => format!(
                "CheckOutcome(property='{}', holds={})",
                self.property, self.holds
            ),
        }
    }
}

/// A 2-log-convexity certificate (or the reason there is none).
#[pyclass(name = "Certificate", module = "seqcert_py")]
struct PyCertificate {
    inner: CoreCertificate,
}

#[pymethods]
impl PyCertificate {
    /// One of `"certified"`, `"refuted"`, `"inapplicable"`, `"unknown"`.
    #[getter]
    fn verdict(&self) -> &'static str {
        match self.inner.verdict {
            CertVerdict::Certified => "certified",
            CertVerdict::Refuted { .. } => "refuted",
            CertVerdict::Inapplicable { .. } => "inapplicable",
            CertVerdict::Unknown { .. } => "unknown",
        }
    }

    /// Why certification stopped, for inapplicable/unknown/refuted verdicts.
    #[getter]
    fn reason(&self) -> Option<String> {
        match &self.inner.verdict {
            CertVerdict::Certified => None,
            CertVerdict::Refuted { violation } => Some(violation.to_string()),
            CertVerdict::Inapplicable { reason } | CertVerdict::Unknown { reason } => {
                Some(reason.clone())
            }
        }
    }

    #[getter]
    fn strict(&self) -> bool {
        self.inner.strict
    }

    /// Index from which the symbolic argument takes over from prefix checks.
    #[getter]
    fn n0(&self) -> Option<i64> {
        self.inner.n0
    }

    fn is_certified(&self) -> bool {
        self.inner.is_certified()
    }

    /// The full machine-checkable certificate as a JSON document.
    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "Certificate(verdict='{}', strict={}, n0={:?})",
            self.verdict(),
            self.inner.strict,
            self.inner.n0
        )
    }
}

/// `p2(n) z_{n+1} = p1(n) z_n + p0(n) z_{n-1}` with exact initial terms.
#[pyclass(name = "Recurrence", module = "seqcert_py")]
struct PyRecurrence {
    inner: CoreRecurrence,
}

impl PyRecurrence {
    fn certify_with(
        &self,
        lower: RatioBound,
        upper: RatioBound,
        to_prefix: i64,
        max_degree: usize,
    ) -> PyResult<PyCertificate> {
        let opts = CertifyOptions { max_degree };
        let cert = certify_two_log_convex(&self.inner, &lower, &upper, to_prefix, &opts)
            .map_err(value_error)?;
        Ok(PyCertificate { inner: cert })
    }
}

#[pymethods]
impl PyRecurrence {
    /// `initial` holds `(z_{start - 1}, z_start)` as ints or Fractions;
    /// the polynomials are text like `"(n + 1)^2"`.
    #[new]
    fn new(
        p2: &str,
        p1: &str,
        p0: &str,
        start: i64,
        initial: &Bound<'_, PyTuple>,
    ) -> PyResult<Self> {
        if initial.len() != 2 {
            return Err(PyValueError::new_err("initial must be a pair"));
        }
        let z_before = to_rational(&initial.get_item(0)?)?;
        let z_start = to_rational(&initial.get_item(1)?)?;
        let as_poly = |text: &str| -> PyResult<_> {
            parse_rf(text)?.as_polynomial().ok_or_else(|| {
                PyValueError::new_err(format!("'{text}' is not a polynomial in n"))
            })
        };
        let rec = CoreRecurrence::new(
            as_poly(p2)?,
            as_poly(p1)?,
            as_poly(p0)?,
            start,
            (z_before, z_start),
        )
        .map_err(value_error)?;
        Ok(Self { inner: rec })
    }

    /// The Catalan-Larcombe-French recurrence with its standard initials.
    #[staticmethod]
    fn catalan_larcombe_french() -> Self {
        Self {
            inner: CoreRecurrence::catalan_larcombe_french(),
        }
    }

    /// Smallest index carried by the recurrence (`start - 1`).
    #[getter]
    fn origin(&self) -> i64 {
        self.inner.origin()
    }

    /// Exact terms up to index `to`.
    fn generate(&self, to: i64) -> PyResult<PyTermTable> {
        let table = self.inner.generate_terms(to).map_err(value_error)?;
        Ok(PyTermTable { inner: table })
    }

    /// Checks a log-behavior property on exact terms up to index `to`.
    #[pyo3(signature = (property, to, strict = false, k = None))]
    fn check(
        &self,
        property: &str,
        to: i64,
        strict: bool,
        k: Option<u32>,
    ) -> PyResult<PyCheckOutcome> {
        let behavior = behavior_from_name(property, k)?;
        let table = self.inner.generate_terms(to).map_err(value_error)?;
        let verdict = check_log_behavior(&table, behavior, strict).map_err(value_error)?;
        Ok(PyCheckOutcome {
            holds: verdict.holds,
            property: verdict.property.to_string(),
            strict: verdict.strict,
            first_violation: verdict.first_violation.map(|v| v.to_string()),
        })
    }

    /// Attempts a strict 2-log-convexity certificate from explicit ratio
    /// bounds: `lower`/`upper` are expressions in `n`, each valid from the
    /// given index.
    #[pyo3(signature = (lower, lower_from, upper, upper_from, to_prefix, max_degree = 64))]
    fn certify(
        &self,
        lower: &str,
        lower_from: i64,
        upper: &str,
        upper_from: i64,
        to_prefix: i64,
        max_degree: usize,
    ) -> PyResult<PyCertificate> {
        let lower =
            RatioBound::new(parse_rf(lower)?, Direction::Lower, lower_from).map_err(value_error)?;
        let upper =
            RatioBound::new(parse_rf(upper)?, Direction::Upper, upper_from).map_err(value_error)?;
        self.certify_with(lower, upper, to_prefix, max_degree)
    }

    fn __repr__(&self) -> String {
        format!(
            "Recurrence(p2='{}', p1='{}', p0='{}', start={})",
            self.inner.p2(),
            self.inner.p1(),
            self.inner.p0(),
            self.inner.start_index()
        )
    }
}

/// A parsed `.seq` spec file.
#[pyclass(name = "Spec", module = "seqcert_py")]
struct PySpec {
    inner: SequenceSpec,
}

#[pymethods]
impl PySpec {
    #[getter]
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    #[getter]
    fn has_bounds(&self) -> bool {
        self.inner.bounds.is_some()
    }

    fn recurrence(&self) -> PyResult<PyRecurrence> {
        Ok(PyRecurrence {
            inner: self.inner.recurrence().map_err(value_error)?,
        })
    }

    /// Certifies strict 2-log-convexity using the spec's own [bounds].
    #[pyo3(signature = (to_prefix, max_degree = 64))]
    fn certify(&self, to_prefix: i64, max_degree: usize) -> PyResult<PyCertificate> {
        let bounds = self.inner.bounds.as_ref().ok_or_else(|| {
            PyValueError::new_err("the spec has no [bounds] section; certification needs them")
        })?;
        let lower = bounds.lower_bound().map_err(value_error)?;
        let upper = bounds.upper_bound().map_err(value_error)?;
        self.recurrence()?
            .certify_with(lower, upper, to_prefix, max_degree)
    }

    fn __repr__(&self) -> String {
        format!("Spec(name='{}')", self.inner.name)
    }
}

/// Reads and parses a `.seq` spec file.
#[pyfunction]
fn load_spec(path: &str) -> PyResult<PySpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PyIOError::new_err(format!("cannot read {path}: {e}")))?;
    Ok(PySpec {
        inner: parse_spec(&text).map_err(value_error)?,
    })
}

/// Parses a spec from text instead of a file.
#[pyfunction]
fn parse_spec_text(text: &str) -> PyResult<PySpec> {
    Ok(PySpec {
        inner: parse_spec(text).map_err(value_error)?,
    })
}

/// The Catalan-Larcombe-French term `P_n` via its binomial-sum closed form,
/// independent of the recurrence.
#[pyfunction]
fn clf_closed_form(n: u32) -> BigInt {
    core_clf_closed_form(n)
}

#[pymodule]
fn seqcert_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRationalFunction>()?;
    m.add_class::<PyTermTable>()?;
    m.add_class::<PyCheckOutcome>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyRecurrence>()?;
    m.add_class::<PySpec>()?;
    m.add_function(wrap_pyfunction!(load_spec, m)?)?;
    m.add_function(wrap_pyfunction!(parse_spec_text, m)?)?;
    m.add_function(wrap_pyfunction!(clf_closed_form, m)?)?;
    Ok(())
}
