//! Integrals ∫₀ˣ e^{−βu} u^α t̃_{μ,ν}(u) du by three independent routes.
//!
//! * [`integral_closed_form`]: β = 0, a ₂F₃ expression.
//! * [`integral_exp_series`]: β > 0, a series of lower incomplete gamma functions.
//! * [`integral_quadrature`]: any β, adaptive Gauss–Kronrod on [δ, x] plus a
//!   termwise-integrated patch on [0, δ] that absorbs the u^{μ+α+1} endpoint
//!   behaviour.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergeometric::hyp2f3;
use crate::lommel::{LommelParams, LommelSeries};
use crate::quadrature::integrate;
use crate::series::{check_tol, SeriesEval, DEFAULT_TERM_CAP, DEFAULT_TOL};
use crate::special::{ln_scaled_lower_gamma, recip_gamma_signed, SignedLogValue};
use crate::sum::CompensatedSum;

const LN_2: f64 = std::f64::consts::LN_2;

/// Above this point the integrand is assembled in log space.
const LOG_SPACE_ABOVE: f64 = 300.0;

/// Subinterval budget for the adaptive rule.
const MAX_INTERVALS: usize = 5000;

/// One integral ∫₀^{upper_limit} e^{−βu} u^{weight_exponent} t̃_{μ,ν}(u) du.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralSpec {
    pub mu: f64,
    pub nu: f64,
    pub weight_exponent: f64,
    pub beta: f64,
    pub upper_limit: f64,
}

impl IntegralSpec {
    pub fn new(params: LommelParams, weight_exponent: f64, beta: f64, upper_limit: f64) -> Self {
        IntegralSpec { mu: params.mu, nu: params.nu, weight_exponent, beta, upper_limit }
    }

    /// The u^{±ν} weight of the two families in the theorems.
    pub fn signed_nu(params: LommelParams, sign: i8, beta: f64, upper_limit: f64) -> Self {
        let alpha = if sign >= 0 { params.nu } else { -params.nu };
        Self::new(params, alpha, beta, upper_limit)
    }

    pub fn params(&self) -> LommelParams {
        LommelParams::new(self.mu, self.nu)
    }

    /// μ + α + 2: the power of x at the origin. The integral exists iff positive.
    pub fn leading_power(&self) -> f64 {
        self.mu + self.weight_exponent + 2.0
    }

    pub fn with_upper_limit(self, upper_limit: f64) -> Self {
        IntegralSpec { upper_limit, ..self }
    }

    pub fn with_beta(self, beta: f64) -> Self {
        IntegralSpec { beta, ..self }
    }

    fn check(&self) -> Result<()> {
        if !(self.upper_limit > 0.0) {
            return Err(Error::domain(format!("upper limit must be positive (got {})", self.upper_limit)));
        }
        if !(self.beta >= 0.0) {
            return Err(Error::domain(format!("beta must be non-negative (got {})", self.beta)));
        }
        if !(self.leading_power() > 0.0) {
            return Err(Error::domain(format!(
                "integral diverges at 0: requires mu + alpha > -2 (mu = {}, alpha = {})",
                self.mu, self.weight_exponent
            )));
        }
        Ok(())
    }
}

/// 1 / (Γ(A) Γ(B)) for the series of t̃_{μ,ν}.
fn series_coeff(p: LommelParams) -> Result<SignedLogValue> {
    Ok(recip_gamma_signed(p.lower_a())? * recip_gamma_signed(p.lower_b())?)
}

/// β = 0 closed form:
/// x^{p} / (2^{μ+1} p Γ(A) Γ(B)) · ₂F₃(1, p/2; A, B, p/2 + 1; x²/4) with p = μ + α + 2.
pub fn integral_closed_form(spec: &IntegralSpec) -> Result<f64> {
    spec.check()?;
    if spec.beta != 0.0 {
        return Err(Error::domain(format!("closed form requires beta = 0 (got {})", spec.beta)));
    }
    let p = spec.params();
    let power = spec.leading_power();
    let x = spec.upper_limit;
    let prefactor = series_coeff(p)? * SignedLogValue::from_ln(power * x.ln() - (p.mu + 1.0) * LN_2 - power.ln());
    let f = hyp2f3(1.0, 0.5 * power, p.lower_a(), p.lower_b(), 0.5 * power + 1.0, 0.25 * x * x, DEFAULT_TOL)?;
    let mut v = prefactor;
    v.log_abs += f.value.ln();
    v.try_value("integral_closed_form")
}

/// β > 0 series
/// Σ_k 2^{−μ−2k−1} / (Γ(k+A) Γ(k+B)) · β^{−s_k} γ(s_k, βx), s_k = μ + α + 2 + 2k.
///
/// Each β^{−s}γ(s, βx) is formed as a single log-space quantity.
pub fn integral_exp_series(spec: &IntegralSpec, tol: f64) -> Result<SeriesEval> {
    spec.check()?;
    check_tol(tol)?;
    if !(spec.beta > 0.0) {
        return Err(Error::domain(format!("incomplete-gamma series requires beta > 0 (got {})", spec.beta)));
    }
    let p = spec.params();
    let (a, b) = (p.lower_a(), p.lower_b());
    let x = spec.upper_limit;
    let mut coeff = series_coeff(p)?;
    coeff.log_abs -= (p.mu + 1.0) * LN_2;
    let peak_guard = a.abs().max(b.abs()).ceil() as usize;

    let mut acc = CompensatedSum::new();
    let mut run = 0;
    let mut prev = f64::INFINITY;
    for k in 0..DEFAULT_TERM_CAP {
        let kf = k as f64;
        if k > 0 {
            // 1/Γ(k+A)Γ(k+B) from the previous index, and one more factor 1/4
            coeff = coeff / SignedLogValue::from_f64((kf - 1.0 + a) * (kf - 1.0 + b));
            coeff.log_abs -= 2.0 * LN_2;
        }
        let s = spec.leading_power() + 2.0 * kf;
        let term = if coeff.is_zero() {
            0.0
        } else {
            let mut t = coeff;
            t.log_abs += ln_scaled_lower_gamma(s, spec.beta, x)?;
            t.value()
        };
        if !term.is_finite() {
            return Err(Error::Overflow("integral_exp_series"));
        }
        acc.add(term);
        let sum = acc.value();
        let past_peak = k >= peak_guard && term.abs() < prev;
        prev = term.abs();
        if past_peak && term.abs() <= tol * sum.abs() {
            run += 1;
        } else {
            run = 0;
        }
        let estimate = 2.0 * term.abs();
        if run >= 3 && estimate <= tol * sum.abs().max(1.0) {
            return Ok(SeriesEval { value: sum, terms_used: k + 1, truncation_estimate: estimate, converged: true });
        }
    }
    Err(Error::NonConvergence { what: "integral_exp_series", terms: DEFAULT_TERM_CAP })
}

/// Default width of the analytic patch at the origin: min(1e−3, x/100).
pub fn default_patch_width(upper_limit: f64) -> f64 {
    (1e-3_f64).min(upper_limit / 100.0)
}

/// ∫₀^δ e^{−βu} u^{α} t̃_{μ,ν}(u) du by integrating the t̃ series and the
/// Taylor series of e^{−βu} term by term. δ is small, so a few terms of each
/// reach full precision.
fn origin_patch(spec: &IntegralSpec, delta: f64) -> Result<f64> {
    let p = spec.params();
    let (a, b) = (p.lower_a(), p.lower_b());
    let mut coeff = series_coeff(p)?;
    coeff.log_abs -= (p.mu + 1.0) * LN_2;
    let mut outer = CompensatedSum::new();
    for k in 0..64 {
        let kf = k as f64;
        if k > 0 {
            coeff = coeff / SignedLogValue::from_f64((kf - 1.0 + a) * (kf - 1.0 + b));
            coeff.log_abs -= 2.0 * LN_2;
        }
        let s = spec.leading_power() + 2.0 * kf;
        // ∫₀^δ u^{s−1} e^{−βu} du = δ^s Σ_j (−βδ)^j / (j! (s + j))
        let bd = spec.beta * delta;
        let mut inner = CompensatedSum::new();
        let mut pow = 1.0;
        for j in 0..64 {
            let jf = j as f64;
            if j > 0 {
                pow *= -bd / jf;
            }
            let t = pow / (s + jf);
            inner.add(t);
            if t.abs() <= 1e-18 * inner.value().abs() {
                break;
            }
        }
        let mut term = coeff;
        term.log_abs += s * delta.ln();
        let term = term.value() * inner.value();
        outer.add(term);
        if term.abs() <= 1e-18 * outer.value().abs() {
            break;
        }
    }
    Ok(outer.value())
}

/// Adaptive quadrature of the integral with the default origin patch.
pub fn integral_quadrature(spec: &IntegralSpec, tol: f64) -> Result<f64> {
    integral_quadrature_with_patch(spec, tol, default_patch_width(spec.upper_limit))
}

/// Adaptive quadrature with an explicit patch width δ ∈ (0, x).
pub fn integral_quadrature_with_patch(spec: &IntegralSpec, tol: f64, delta: f64) -> Result<f64> {
    spec.check()?;
    check_tol(tol)?;
    let x = spec.upper_limit;
    if !(delta > 0.0 && delta < x) {
        return Err(Error::domain(format!("patch width must lie in (0, x) (got {delta})")));
    }
    let series = LommelSeries::new(spec.params())?;
    let (alpha, beta) = (spec.weight_exponent, spec.beta);
    let integrand = |u: f64| -> Result<f64> {
        if u > LOG_SPACE_ABOVE {
            let mut v = series.ln_eval(u, 1e-15)?;
            v.log_abs += alpha * u.ln() - beta * u;
            v.try_value("quadrature integrand")
        } else {
            let t = series.eval(u, 1e-15)?.value;
            Ok((-beta * u).exp() * u.powf(alpha) * t)
        }
    };
    let patch = origin_patch(spec, delta)?;
    let body = integrate(integrand, delta, x, 0.25 * tol, 0.0, MAX_INTERVALS)?;
    let total = patch + body.value;
    if total.is_finite() {
        Ok(total)
    } else {
        Err(Error::Overflow("integral_quadrature"))
    }
}

/// Leading term of the β = 0 integral as x ↓ 0: x^{p} / (2^{μ+1} p Γ(A) Γ(B)).
pub fn integral_leading_term(spec: &IntegralSpec) -> Result<f64> {
    spec.check()?;
    let p = spec.params();
    let power = spec.leading_power();
    let v =
        series_coeff(p)? * SignedLogValue::from_ln(power * spec.upper_limit.ln() - (p.mu + 1.0) * LN_2 - power.ln());
    v.try_value("integral_leading_term")
}
