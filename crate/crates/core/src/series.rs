//! Truncation policy and diagnostics shared by every series evaluator.

use crate::error::{ensure, Result};
use crate::summation::Accumulator;
use std::fmt;

/// Truncation policy for infinite series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub max_terms: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub compensated: bool,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            max_terms: 2000,
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            compensated: true,
        }
    }
}

impl SeriesControl {
    pub fn validate(&self) -> Result<()> {
        ensure(
            self.max_terms >= 1,
            "max_terms must be at least 1",
            self.max_terms as f64,
        )?;
        ensure(
            self.abs_tol > 0.0 && self.abs_tol.is_finite(),
            "abs_tol must be positive",
            self.abs_tol,
        )?;
        ensure(
            self.rel_tol > 0.0 && self.rel_tol.is_finite(),
            "rel_tol must be positive",
            self.rel_tol,
        )?;
        Ok(())
    }

    /// Acceptance threshold for a tail estimate against a value.
    #[inline]
    pub fn threshold(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Converged,
    MaxTermsReached,
    /// The truncation rule was met but accumulated rounding (cancellation
    /// between large terms) exceeds the requested tolerance.
    PrecisionLoss,
    DomainError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::MaxTermsReached => "max_terms_reached",
            Status::PrecisionLoss => "precision_loss",
            Status::DomainError => "domain_error",
        }
    }

    /// Severity order used when aggregating statuses.
    fn rank(self) -> u8 {
        match self {
            Status::Converged => 0,
            Status::PrecisionLoss => 1,
            Status::MaxTermsReached => 2,
            Status::DomainError => 3,
        }
    }

    /// The more severe of two statuses.
    pub fn worst(self, other: Status) -> Status {
        if other.rank() > self.rank() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Side observations attached to an evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Mittag-Leffler value taken from the large-|z| asymptotic expansion.
    pub asymptotic: bool,
    /// Order parameter μ ≤ 0, outside the k-Bessel series' stated domain.
    pub nonpositive_order: bool,
    /// −1 < μ < 0: the kinetic solution is unbounded as t → 0⁺.
    pub singular_at_origin: bool,
}

impl Diagnostics {
    pub fn merge(self, other: Diagnostics) -> Diagnostics {
        Diagnostics {
            asymptotic: self.asymptotic || other.asymptotic,
            nonpositive_order: self.nonpositive_order || other.nonpositive_order,
            singular_at_origin: self.singular_at_origin || other.singular_at_origin,
        }
    }
}

/// Value plus convergence diagnostics of a series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub terms_used: usize,
    pub tail_estimate: f64,
    pub status: Status,
    pub diagnostics: Diagnostics,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            terms_used: 1,
            tail_estimate: 0.0,
            status: Status::Converged,
            diagnostics: Diagnostics::default(),
        }
    }

    pub fn domain_error() -> Self {
        Self {
            value: f64::NAN,
            terms_used: 0,
            tail_estimate: f64::INFINITY,
            status: Status::DomainError,
            diagnostics: Diagnostics::default(),
        }
    }

    pub fn is_converged(&self) -> bool {
        self.status == Status::Converged
    }

    /// Multiply the value (and its error estimate) by a constant.
    pub fn scaled(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.tail_estimate *= factor.abs();
        self
    }

    pub(crate) fn with_diagnostics(mut self, d: Diagnostics) -> Self {
        self.diagnostics = self.diagnostics.merge(d);
        self
    }
}

/// Sum `term(0) + term(1) + …` under `ctrl`.
///
/// Stops once two consecutive terms fall below
/// `max(abs_tol, rel_tol·|partial sum|)` and the latest is no larger than its
/// predecessor. The tail estimate is the last term's magnitude plus a
/// rounding bound of one unit of `EPSILON` per unit of Σ|term|.
pub(crate) fn sum_series(ctrl: &SeriesControl, mut term: impl FnMut(usize) -> f64) -> EvalResult {
    let mut acc = Accumulator::new(ctrl.compensated);
    let mut prev_small = false;
    let mut prev_abs = f64::INFINITY;
    let mut last_abs = f64::INFINITY;
    for n in 0..ctrl.max_terms {
        let t = term(n);
        if !t.is_finite() {
            return EvalResult {
                value: f64::NAN,
                terms_used: n + 1,
                tail_estimate: f64::INFINITY,
                status: Status::PrecisionLoss,
                diagnostics: Diagnostics::default(),
            };
        }
        acc.add(t);
        let abs = t.abs();
        last_abs = abs;
        let small = abs <= ctrl.threshold(acc.value());
        if small && prev_small && abs <= prev_abs {
            return finish(&acc, ctrl, n + 1, abs, true);
        }
        prev_small = small;
        prev_abs = abs;
    }
    finish(&acc, ctrl, ctrl.max_terms, last_abs, false)
}

fn finish(acc: &Accumulator, ctrl: &SeriesControl, terms: usize, last_abs: f64, stopped: bool) -> EvalResult {
    let value = acc.value();
    let tail = last_abs + f64::EPSILON * acc.abs_sum();
    let status = if !stopped {
        Status::MaxTermsReached
    } else if tail <= ctrl.threshold(value) {
        Status::Converged
    } else {
        Status::PrecisionLoss
    };
    EvalResult {
        value,
        terms_used: terms,
        tail_estimate: tail,
        status,
        diagnostics: Diagnostics::default(),
    }
}
