//! Exact-arithmetic toolkit for integer sequences defined by three-term
//! recurrences with polynomial coefficients.
//!
//! The crate has four layers:
//!
//! * [`exactmath`]: arbitrary-precision rationals, univariate polynomials,
//!   rational functions in one variable `n`, and sound sign decisions on
//!   integer rays `n >= N`.
//! * [`sequences`]: recurrence descriptions, exact term generation, the `L`
//!   operator `L(z)_n = z_{n-1} z_{n+1} - z_n^2`, and checkers for
//!   log-concavity, log-convexity, log-balancedness, k-log-convexity, and
//!   quotient log-concavity.
//! * [`certifier`]: a mechanical certifier for strict 2-log-convexity of
//!   positive log-convex solutions of `z_n = a(n) z_{n-1} + b(n) z_{n-2}`,
//!   built from ratio-bound induction certificates and four symbolic sign
//!   claims on rays. Produces a serializable [`certifier::Certificate`].
//! * [`specfile`]: a small text format (`.seq`) describing a recurrence,
//!   initial values, and optional ratio bounds.
//!
//! Every check is exact: no floating point is used anywhere in a decision.

pub mod certifier;
pub mod exactmath;
pub mod sequences;
pub mod specfile;
