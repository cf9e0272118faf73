//! Modified Lommel functions of the first kind.
//!
//! The normalized function is
//!
//! ```text
//! t̃_{μ,ν}(x) = Σ_{k≥0} (x/2)^{μ+2k+1} / (Γ(k + (μ−ν+3)/2) Γ(k + (μ+ν+3)/2))
//! ```
//!
//! and the classical `t_{μ,ν}` is `2^{μ−1} Γ((μ−ν+1)/2) Γ((μ+ν+1)/2) t̃_{μ,ν}`.
//! The modified Struve function is the diagonal case `L_ν = t̃_{ν,ν}`.
//!
//! The series is summed by ratio recurrence from a first term built in log
//! space. Above x = 300 the terms are carried scaled by e^{−x} so that the
//! partial sums stay in range up to the supported limit of x = 700.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergeometric::hyp1f2;
use crate::series::{check_tol, sum_ratio_series, SeriesEval, DEFAULT_TERM_CAP, DEFAULT_TOL};
use crate::special::{ln_gamma_signed, recip_gamma_signed, SignedLogValue};
use crate::sum::CompensatedSum;

/// Largest supported argument.
pub const MAX_X: f64 = 700.0;

/// Above this argument the series is summed in e^{−x}-scaled form.
const SCALED_ABOVE: f64 = 300.0;

/// Truncation used internally where identities are checked at ulp level.
const TIGHT_TOL: f64 = 1e-15;

/// The order pair (μ, ν).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LommelParams {
    pub mu: f64,
    pub nu: f64,
}

/// Which of the two sufficient positivity conditions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositivityDomain {
    pub mu_minus_nu_ok: bool,
    pub mu_plus_nu_ok: bool,
}

impl PositivityDomain {
    /// Both conditions hold, so t̃_{μ,ν}(x) > 0 for every x > 0.
    pub fn holds(&self) -> bool {
        self.mu_minus_nu_ok && self.mu_plus_nu_ok
    }
}

impl LommelParams {
    pub const fn new(mu: f64, nu: f64) -> Self {
        LommelParams { mu, nu }
    }

    /// (μ + by, ν + by): the order shift that appears in every recurrence.
    pub fn shifted(self, by: f64) -> Self {
        LommelParams { mu: self.mu + by, nu: self.nu + by }
    }

    /// (μ − ν + 3)/2, the first gamma argument of the k = 0 term.
    pub fn lower_a(&self) -> f64 {
        0.5 * (self.mu - self.nu + 3.0)
    }

    /// (μ + ν + 3)/2.
    pub fn lower_b(&self) -> f64 {
        0.5 * (self.mu + self.nu + 3.0)
    }

    pub fn positivity(&self) -> PositivityDomain {
        PositivityDomain { mu_minus_nu_ok: self.mu - self.nu >= -3.0, mu_plus_nu_ok: self.mu + self.nu >= -3.0 }
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("x must be positive (got {x})")));
    }
    if x > MAX_X {
        return Err(Error::domain(format!("x = {x} exceeds the supported range x <= {MAX_X}")));
    }
    Ok(())
}

/// t̃_{μ,ν} with its gamma normalization precomputed, for repeated evaluation
/// at many arguments (quadrature, sweeps).
#[derive(Debug, Clone, Copy)]
pub struct LommelSeries {
    params: LommelParams,
    a: f64,
    b: f64,
    /// 1 / (Γ(a) Γ(b))
    coeff: SignedLogValue,
}

struct RawSum {
    eval: SeriesEval,
    derivative: f64,
}

impl LommelSeries {
    pub fn new(params: LommelParams) -> Result<Self> {
        if !params.mu.is_finite() || !params.nu.is_finite() {
            return Err(Error::domain("Lommel orders must be finite"));
        }
        let (a, b) = (params.lower_a(), params.lower_b());
        let coeff = recip_gamma_signed(a)? * recip_gamma_signed(b)?;
        Ok(LommelSeries { params, a, b, coeff })
    }

    pub fn params(&self) -> LommelParams {
        self.params
    }

    /// Sum the series scaled by e^{−shift}; optionally the termwise derivative.
    fn raw(&self, x: f64, tol: f64, shift: f64, with_derivative: bool) -> Result<RawSum> {
        check_x(x)?;
        check_tol(tol)?;
        let mu = self.params.mu;
        let mut seed = self.coeff.mul_pow(0.5 * x, mu + 1.0);
        seed.log_abs -= shift;
        let first = seed.value();
        let z = 0.25 * x * x;
        let (a, b) = (self.a, self.b);
        let ratio = |k: usize| {
            let kf = k as f64;
            z / ((kf + a) * (kf + b))
        };
        let peak_guard = a.abs().max(b.abs()).ceil() as usize;
        let mut deriv = CompensatedSum::new();
        let eval = sum_ratio_series(first, ratio, peak_guard, tol, DEFAULT_TERM_CAP, |k, t| {
            if with_derivative {
                deriv.add(t * (mu + 2.0 * k as f64 + 1.0) / x);
            }
        })
        .require_converged("modified Lommel series")?;
        Ok(RawSum { eval, derivative: deriv.value() })
    }

    /// t̃_{μ,ν}(x).
    pub fn eval(&self, x: f64, tol: f64) -> Result<SeriesEval> {
        Ok(self.eval_with_derivative(x, tol)?.0)
    }

    /// t̃_{μ,ν}(x) and its derivative from the termwise-differentiated series.
    pub fn eval_with_derivative(&self, x: f64, tol: f64) -> Result<(SeriesEval, f64)> {
        if x <= SCALED_ABOVE {
            let raw = self.raw(x, tol, 0.0, true)?;
            return Ok((raw.eval, raw.derivative));
        }
        let raw = self.raw(x, tol, x, true)?;
        let scale = x.exp();
        let value = raw.eval.value * scale;
        let derivative = raw.derivative * scale;
        if !value.is_finite() || !derivative.is_finite() {
            return Err(Error::Overflow("modified Lommel function"));
        }
        let eval = SeriesEval { value, truncation_estimate: raw.eval.truncation_estimate * scale, ..raw.eval };
        Ok((eval, derivative))
    }

    /// ln|t̃_{μ,ν}(x)| with sign; never overflows within the supported range.
    pub fn ln_eval(&self, x: f64, tol: f64) -> Result<SignedLogValue> {
        let shift = if x > SCALED_ABOVE { x } else { 0.0 };
        let raw = self.raw(x, tol, shift, false)?;
        let mut v = SignedLogValue::from_f64(raw.eval.value);
        v.log_abs += shift;
        Ok(v)
    }
}

/// Normalized modified Lommel function t̃_{μ,ν}(x).
pub fn t_tilde(p: LommelParams, x: f64, tol: f64) -> Result<SeriesEval> {
    LommelSeries::new(p)?.eval(x, tol)
}

/// Convenience wrapper returning only the value at the default tolerance.
pub fn t_tilde_value(p: LommelParams, x: f64) -> Result<f64> {
    Ok(t_tilde(p, x, DEFAULT_TOL)?.value)
}

/// 2^{μ−1} Γ((μ−ν+1)/2) Γ((μ+ν+1)/2), the factor t = factor · t̃.
pub fn normalization_factor(p: LommelParams) -> Result<SignedLogValue> {
    let g = ln_gamma_signed(0.5 * (p.mu - p.nu + 1.0))? * ln_gamma_signed(0.5 * (p.mu + p.nu + 1.0))?;
    Ok(g.mul_pow(2.0, p.mu - 1.0))
}

/// Unnormalized t_{μ,ν}(x).
pub fn t_unnormalized(p: LommelParams, x: f64, tol: f64) -> Result<f64> {
    let factor = normalization_factor(p)?;
    let tt = t_tilde(p, x, tol)?.value;
    let v = factor.value() * tt;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("t_unnormalized"))
    }
}

/// t_{μ,ν}(x) through x^{μ+1} ₁F₂(1; (μ−ν+3)/2, (μ+ν+3)/2; x²/4) / ((μ−ν+1)(μ+ν+1)).
pub fn t_unnormalized_hypergeometric(p: LommelParams, x: f64, tol: f64) -> Result<f64> {
    check_x(x)?;
    let denom = (p.mu - p.nu + 1.0) * (p.mu + p.nu + 1.0);
    if denom == 0.0 {
        return Err(Error::Pole { function: "t_unnormalized_hypergeometric", arg: denom });
    }
    let f = hyp1f2(1.0, p.lower_a(), p.lower_b(), 0.25 * x * x, tol)?.value;
    Ok(x.powf(p.mu + 1.0) / denom * f)
}

/// Modified Struve function L_ν(x) = t̃_{ν,ν}(x).
pub fn modified_struve_l(nu: f64, x: f64, tol: f64) -> Result<SeriesEval> {
    t_tilde(LommelParams::new(nu, nu), x, tol)
}

/// a_{μ,ν}(x) = (x/2)^μ / (Γ((μ−ν+1)/2) Γ((μ+ν+3)/2)); may be negative.
pub fn a_term(p: LommelParams, x: f64) -> Result<f64> {
    check_x(x)?;
    let g = recip_gamma_signed(0.5 * (p.mu - p.nu + 1.0))? * recip_gamma_signed(0.5 * (p.mu + p.nu + 3.0))?;
    g.mul_pow(0.5 * x, p.mu).try_value("a_term")
}

/// Residuals of the two three-term relations, with the largest participating
/// magnitude for relative comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceResiduals {
    /// t̃_{μ−1,ν−1} − t̃_{μ+1,ν+1} − (2ν/x) t̃_{μ,ν} − a_{μ,ν}(x)
    pub r1: f64,
    /// t̃_{μ−1,ν−1} + t̃_{μ+1,ν+1} − 2 t̃′_{μ,ν} + a_{μ,ν}(x)
    pub r2: f64,
    pub scale: f64,
}

pub fn recurrence_residuals(p: LommelParams, x: f64) -> Result<RecurrenceResiduals> {
    let below = t_tilde(p.shifted(-1.0), x, TIGHT_TOL)?.value;
    let above = t_tilde(p.shifted(1.0), x, TIGHT_TOL)?.value;
    let (mid, deriv) = LommelSeries::new(p)?.eval_with_derivative(x, TIGHT_TOL)?;
    let mid = mid.value;
    let a = a_term(p, x)?;
    let drift = 2.0 * p.nu / x * mid;
    let r1 = below - above - drift - a;
    let r2 = below + above - 2.0 * deriv + a;
    let scale = [below, above, drift, 2.0 * deriv, a].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    Ok(RecurrenceResiduals { r1, r2, scale })
}

/// Two-term small-argument form
/// (x/2)^{μ+1} / (Γ((μ−ν+3)/2) Γ((μ+ν+3)/2)) · (1 + x²/((μ+3)² − ν²)).
pub fn asymptotic_small_x(p: LommelParams, x: f64) -> Result<f64> {
    if !(p.mu > -3.0 && p.nu.abs() < p.mu + 3.0) {
        return Err(Error::domain(format!(
            "small-x form requires mu > -3 and |nu| < mu + 3 (got mu = {}, nu = {})",
            p.mu, p.nu
        )));
    }
    check_x(x)?;
    let lead = (recip_gamma_signed(p.lower_a())? * recip_gamma_signed(p.lower_b())?)
        .mul_pow(0.5 * x, p.mu + 1.0)
        .try_value("asymptotic_small_x")?;
    let m3 = p.mu + 3.0;
    Ok(lead * (1.0 + x * x / (m3 * m3 - p.nu * p.nu)))
}

/// Three-term large-argument form
/// e^x/√(2πx) · (1 − (4ν²−1)/(8x) + (4ν²−1)(4ν²−9)/(128x²)); independent of μ.
pub fn asymptotic_large_x(p: LommelParams, x: f64) -> Result<f64> {
    check_x(x)?;
    let ex = x.exp();
    if !ex.is_finite() {
        return Err(Error::Overflow("asymptotic_large_x"));
    }
    let m = 4.0 * p.nu * p.nu;
    let corr = 1.0 - (m - 1.0) / (8.0 * x) + (m - 1.0) * (m - 9.0) / (128.0 * x * x);
    Ok(ex / (2.0 * std::f64::consts::PI * x).sqrt() * corr)
}

/// Whether t̃_{μ,ν}(x) < t̃_{μ−1,ν−1}(x). Only defined where the inequality is
/// claimed: μ > −1/2, 1/2 ≤ ν < μ + 1.
pub fn check_monotonicity(p: LommelParams, x: f64) -> Result<bool> {
    if !(p.mu > -0.5 && p.nu >= 0.5 && p.nu < p.mu + 1.0) {
        return Err(Error::domain(format!(
            "monotonicity requires mu > -1/2 and 1/2 <= nu < mu + 1 (got mu = {}, nu = {})",
            p.mu, p.nu
        )));
    }
    let upper = t_tilde(p, x, DEFAULT_TOL)?.value;
    let lower = t_tilde(p.shifted(-1.0), x, DEFAULT_TOL)?.value;
    Ok(upper < lower)
}
