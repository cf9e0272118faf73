//! Generalized hypergeometric series ₁F₂ and ₂F₃ by direct summation.
//!
//! Terms follow the running ratio
//! `Π(a_i + k) / Π(b_j + k) · z / (k + 1)`, accumulated with compensated
//! summation. Only real arguments and the convergent (p ≤ q) cases are
//! handled; there is no analytic continuation.

use crate::error::{Error, Result};
use crate::series::{check_tol, sum_ratio_series, SeriesEval, DEFAULT_TERM_CAP};

fn check_lower_params(b: &[f64]) -> Result<()> {
    for &bj in b {
        if bj <= 0.0 && bj == bj.floor() {
            return Err(Error::Pole { function: "hypergeometric lower parameter", arg: bj });
        }
    }
    Ok(())
}

/// Sum ₚF_q(a; b; z) with an explicit term cap.
///
/// Reaching the cap is not an error here; the result reports
/// `converged = false`. [`hyp1f2`] and [`hyp2f3`] turn that into an error.
pub fn pfq_capped(a: &[f64], b: &[f64], z: f64, tol: f64, cap: usize) -> Result<SeriesEval> {
    check_tol(tol)?;
    check_lower_params(b)?;
    if a.len() > b.len() + 1 {
        return Err(Error::domain("pFq with p > q + 1 diverges"));
    }
    if z == 0.0 {
        return Ok(SeriesEval::exact(1.0));
    }
    let peak_guard = a.iter().chain(b).fold(0.0_f64, |m, p| m.max(p.abs())).ceil() as usize;
    let ratio = |k: usize| {
        let kf = k as f64;
        let num: f64 = a.iter().map(|&ai| ai + kf).product();
        let den: f64 = b.iter().map(|&bj| bj + kf).product();
        num / den * z / (kf + 1.0)
    };
    Ok(sum_ratio_series(1.0, ratio, peak_guard, tol, cap, |_, _| {}))
}

/// ₁F₂(a1; b1, b2; z).
pub fn hyp1f2(a1: f64, b1: f64, b2: f64, z: f64, tol: f64) -> Result<SeriesEval> {
    pfq_capped(&[a1], &[b1, b2], z, tol, DEFAULT_TERM_CAP)?.require_converged("hyp1F2")
}

/// ₂F₃(a1, a2; b1, b2, b3; z).
pub fn hyp2f3(a1: f64, a2: f64, b1: f64, b2: f64, b3: f64, z: f64, tol: f64) -> Result<SeriesEval> {
    pfq_capped(&[a1, a2], &[b1, b2, b3], z, tol, DEFAULT_TERM_CAP)?.require_converged("hyp2F3")
}
