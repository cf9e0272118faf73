//! Ratio-recurrence summation shared by the hypergeometric and Lommel series.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// Hard cap on series length unless the caller configures another.
pub const DEFAULT_TERM_CAP: usize = 100_000;

/// Default relative truncation tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Consecutive small terms required before stopping.
const SMALL_RUN: usize = 3;

/// A summed series value with its truncation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEval {
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the absolute size of the discarded tail.
    pub truncation_estimate: f64,
    pub converged: bool,
}

impl SeriesEval {
    pub(crate) fn exact(value: f64) -> Self {
        SeriesEval { value, terms_used: 1, truncation_estimate: 0.0, converged: true }
    }

    /// Turn a capped, unconverged result into an error.
    pub fn require_converged(self, what: &'static str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence { what, terms: self.terms_used })
        }
    }
}

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol <= 1e-3 {
        Ok(())
    } else {
        Err(Error::domain(format!("tolerance must lie in (0, 1e-3], got {tol}")))
    }
}

/// Sum `first * Π ratio(j)` over k ≥ 0.
///
/// `ratio(k)` is term_{k+1}/term_k. The relative stopping test only counts
/// once k ≥ `peak_guard` and the ratio has dropped below one, so a series
/// whose terms climb for a while (large argument) is not cut off early.
/// `visit` sees every included term.
pub(crate) fn sum_ratio_series(
    first: f64,
    mut ratio: impl FnMut(usize) -> f64,
    peak_guard: usize,
    tol: f64,
    cap: usize,
    mut visit: impl FnMut(usize, f64),
) -> SeriesEval {
    if first == 0.0 {
        visit(0, 0.0);
        return SeriesEval::exact(0.0);
    }
    let mut acc = CompensatedSum::new();
    let mut term = first;
    let mut run = 0;
    for k in 0..cap {
        acc.add(term);
        visit(k, term);
        let r = ratio(k);
        let next = term * r;
        let sum = acc.value();
        if next == 0.0 {
            // terminating (polynomial) series
            return SeriesEval { value: sum, terms_used: k + 1, truncation_estimate: 0.0, converged: true };
        }
        let past_peak = k >= peak_guard && r.abs() < 1.0;
        if past_peak && term.abs() <= tol * sum.abs() {
            run += 1;
        } else {
            run = 0;
        }
        let estimate = 2.0 * term.abs();
        if run >= SMALL_RUN && estimate <= tol * sum.abs().max(1.0) {
            return SeriesEval { value: sum, terms_used: k + 1, truncation_estimate: estimate, converged: true };
        }
        term = next;
        if !term.is_finite() {
            break;
        }
    }
    SeriesEval { value: acc.value(), terms_used: cap, truncation_estimate: 2.0 * term.abs(), converged: false }
}
