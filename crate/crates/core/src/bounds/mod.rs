//! Bounds on the integrals ∫₀ˣ e^{−βu} u^{±ν} t̃_{μ+n,ν+n}(u) du and on the
//! ₂F₃ expression F_{μ,ν}(x), checked against the integral oracles.

mod registry;
mod sampling;
mod tables;

pub use registry::{
    BetaRange, BoundParams, Direction, Endpoint, EqualityCondition, InequalityDescriptor, InequalityId, TightAtInfinity,
};
pub use sampling::{
    sample_checks, sample_checks_in, sample_params, sample_x, SampleBox, SAMPLE_BETA_MAX, SAMPLE_MU_MAX, SAMPLE_N_MAX,
    SAMPLE_X_MAX,
};
pub use tables::{
    paper_reference, reproduce_table, table_cell, table_grid, ReferenceCell, TableCell, TableKind, TABLE_ROWS, TABLE_X,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::integral::{integral_closed_form, integral_exp_series, integral_quadrature, IntegralSpec};
use crate::lommel::{t_tilde, LommelParams};
use crate::special::{ln_scaled_lower_gamma, recip_gamma_signed, SignedLogValue};

/// Truncation tolerance for the t̃ values inside bound expressions.
const BOUND_TOL: f64 = 1e-15;

/// Largest relative gap tolerated between quadrature and the incomplete-gamma
/// series before a check is abandoned.
pub const ORACLE_AGREEMENT: f64 = 1e-6;

/// Relative guard band on slack.
pub const GUARD_BAND: f64 = 1e-10;

/// a, b, c, d of the shifted-order theorems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

fn nonzero(constant: &'static str, what: &str, v: f64) -> Result<f64> {
    if v == 0.0 {
        Err(Error::domain(format!("constant {constant}: zero denominator factor {what}")))
    } else {
        Ok(v)
    }
}

/// 2^{−e} / (Γ((μ−ν+1)/2) Γ(g)).
fn gamma_part(constant: &'static str, mu: f64, nu: f64, g: f64, e: f64) -> Result<SignedLogValue> {
    let named = |arg: f64| {
        recip_gamma_signed(arg).map_err(|_| Error::domain(format!("constant {constant}: gamma pole at argument {arg}")))
    };
    Ok((named(0.5 * (mu - nu + 1.0))? * named(g)?).mul_pow(2.0, -e))
}

fn finish(constant: &'static str, g: SignedLogValue, rational: f64) -> Result<f64> {
    let v = g.value() * rational;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(format!("constant {constant} is not finite")))
    }
}

pub fn constant_a(mu: f64, nu: f64, n: f64) -> Result<f64> {
    let den = nonzero("a", "2nu+n+1", 2.0 * nu + n + 1.0)? * nonzero("a", "mu+nu+n+2", mu + nu + n + 2.0)?;
    let g = gamma_part("a", mu, nu, 0.5 * (mu + nu + 2.0 * n + 5.0), mu + n + 1.0)?;
    finish("a", g, (n + 1.0) / den)
}

pub fn constant_b(mu: f64, nu: f64, n: f64) -> Result<f64> {
    let den = nonzero("b", "mu-nu+n+2", mu - nu + n + 2.0)? * nonzero("b", "nu+n+1", nu + n + 1.0)?;
    let g = gamma_part("b", mu, nu, 0.5 * (mu + nu + 2.0 * n + 5.0), mu + n + 2.0)?;
    finish("b", g, (2.0 * nu + n + 1.0) / den)
}

pub fn constant_c(mu: f64, nu: f64, n: f64) -> Result<f64> {
    let den = nonzero("c", "n+1", n + 1.0)?
        * nonzero("c", "mu-nu+n+4", mu - nu + n + 4.0)?
        * nonzero("c", "nu+n+3", nu + n + 3.0)?;
    let g = gamma_part("c", mu, nu, 0.5 * (mu + nu + 2.0 * n + 9.0), mu + n + 4.0)?;
    finish("c", g, (2.0 * nu + n + 1.0) * (2.0 * nu + n + 3.0) / den)
}

pub fn constant_d(mu: f64, nu: f64, n: f64) -> Result<f64> {
    let den = nonzero("d", "n+1", n + 1.0)? * nonzero("d", "mu-nu+n+2", mu - nu + n + 2.0)?;
    let g = gamma_part("d", mu, nu, 0.5 * (mu + nu + 2.0 * n + 5.0), mu + n + 1.0)?;
    finish("d", g, (2.0 * nu + n + 1.0) / den)
}

pub fn theorem_constants(mu: f64, nu: f64, n: f64) -> Result<TheoremConstants> {
    Ok(TheoremConstants {
        a: constant_a(mu, nu, n)?,
        b: constant_b(mu, nu, n)?,
        c: constant_c(mu, nu, n)?,
        d: constant_d(mu, nu, n)?,
    })
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be positive (got {x})")))
    }
}

/// t̃_{μ+s,ν+s}(x)
fn tt(p: &BoundParams, s: f64, x: f64) -> Result<f64> {
    Ok(t_tilde(LommelParams::new(p.mu + s, p.nu + s), x, BOUND_TOL)?.value)
}

/// 1/(2^{μ+1} Γ((μ−ν+3)/2) Γ((μ+ν+3)/2))
fn leading_coeff(p: &BoundParams) -> Result<f64> {
    let lp = LommelParams::new(p.mu, p.nu);
    (recip_gamma_signed(lp.lower_a())? * recip_gamma_signed(lp.lower_b())?)
        .mul_pow(2.0, -(p.mu + 1.0))
        .try_value("leading coefficient")
}

/// The integral each id bounds, as an [`IntegralSpec`]; `None` for the
/// corollary ids, whose bounded quantity is F_{μ,ν}(x).
pub fn integral_spec(id: InequalityId, p: &BoundParams, x: f64) -> Option<IntegralSpec> {
    use InequalityId::*;
    let shifted = LommelParams::new(p.mu + p.n, p.nu + p.n);
    let plain = LommelParams::new(p.mu, p.nu);
    let (params, alpha) = match id {
        Besi11 | Besi22 => (shifted, p.nu),
        Fcp100 | Pron | Besi33 => (plain, p.nu),
        Besi44 | Besi55 => (plain, p.nu + 1.0),
        Bi1 | Bi4 | Bi5 => (plain, -p.nu),
        Bi2 | Bi3 => (shifted, -p.nu),
        CorLower | CorUpper => return None,
    };
    Some(IntegralSpec::new(params, alpha, p.beta, x))
}

/// Evaluate the bound side of inequality `id` at x.
pub fn bound_value(id: InequalityId, params: BoundParams, x: f64) -> Result<f64> {
    let desc = id.descriptor();
    let p = desc.effective(params);
    desc.check_domain(&p)?;
    check_x(x)?;
    bound_expression(id, &p, x)
}

fn bound_expression(id: InequalityId, p: &BoundParams, x: f64) -> Result<f64> {
    use InequalityId::*;
    let (mu, nu, n, beta) = (p.mu, p.nu, p.n, p.beta);
    let damp = (-beta * x).exp();
    let v = match id {
        Besi11 => damp * x.powf(nu) * tt(p, n + 1.0, x)?,
        Fcp100 => x.powf(nu) * tt(p, 0.0, x)?,
        Besi22 => {
            let inner = 2.0 * (nu + n + 1.0) * tt(p, n + 1.0, x)? - (n + 1.0) * tt(p, n + 3.0, x)?;
            x.powf(nu) / (2.0 * nu + n + 1.0) * inner - constant_a(mu, nu, n)? * x.powf(mu + nu + n + 2.0)
        }
        Pron => {
            let j = integral_closed_form(&IntegralSpec::new(LommelParams::new(mu, nu), nu, 0.0, x))?;
            damp / (1.0 - beta) * j
        }
        Besi33 => {
            // the n = 0 upper bound of besi22, scaled by e^{−βx}/(1−β) as a whole
            let inner = 2.0 * (nu + 1.0) * tt(p, 1.0, x)? - tt(p, 3.0, x)?;
            let unweighted = x.powf(nu) / (2.0 * nu + 1.0) * inner - constant_a(mu, nu, 0.0)? * x.powf(mu + nu + 2.0);
            damp / (1.0 - beta) * unweighted
        }
        Besi44 => damp * x.powf(nu + 1.0) * tt(p, 1.0, x)?,
        Besi55 => damp * x.powf(nu + 1.0) * tt(p, 1.0, x)? / (1.0 - beta),
        Bi1 => tt(p, 0.0, x)? / x.powf(nu) - leading_coeff(p)? * x.powf(mu - nu + 1.0),
        Bi2 => tt(p, n + 1.0, x)? / x.powf(nu) - constant_b(mu, nu, n)? * x.powf(mu - nu + n + 2.0),
        Bi3 => {
            let main = (2.0 * (nu + n + 1.0) * tt(p, n + 1.0, x)? - (2.0 * nu + n + 1.0) * tt(p, n + 3.0, x)?)
                / ((n + 1.0) * x.powf(nu));
            main + constant_c(mu, nu, n)? * x.powf(mu - nu + n + 4.0)
                - constant_d(mu, nu, n)? * x.powf(mu - nu + n + 2.0)
        }
        Bi4 => {
            let j = integral_closed_form(&IntegralSpec::new(LommelParams::new(mu, nu), -nu, 0.0, x))?;
            let g = beta * ln_scaled_lower_gamma(mu - nu + 2.0, beta, x)?.exp();
            (damp * j - leading_coeff(p)? * g) / (1.0 - beta)
        }
        Bi5 => {
            let g = x.powf(mu - nu + 1.0) + beta * ln_scaled_lower_gamma(mu - nu + 2.0, beta, x)?.exp();
            (damp * tt(p, 0.0, x)? / x.powf(nu) - leading_coeff(p)? * g) / (1.0 - beta)
        }
        CorLower => tt(p, 1.0, x)?,
        CorUpper => {
            let t1 = tt(p, 1.0, x)?;
            let t3 = tt(p, 3.0, x)?;
            t1 * (1.0 + (1.0 - t3 / t1) / (2.0 * nu + 1.0)) - constant_a(mu, nu, 0.0)? * x.powf(mu + 2.0)
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("bound_value"))
    }
}

/// F_{μ,ν}(x) = x^{μ+2} ₂F₃(1, (μ+ν+2)/2; (μ−ν+3)/2, (μ+ν+3)/2, (μ+ν+4)/2; x²/4)
/// / (2^{μ+1} (μ+ν+2) Γ((μ−ν+3)/2) Γ((μ+ν+3)/2)), i.e. x^{−ν} ∫₀ˣ u^ν t̃_{μ,ν}(u) du.
pub fn corollary_f(mu: f64, nu: f64, x: f64) -> Result<f64> {
    if !(mu > -1.5 && nu > -0.5 && nu < mu + 1.0) {
        return Err(Error::domain(format!("F requires mu > -3/2 and -1/2 < nu < mu+1 (got mu = {mu}, nu = {nu})")));
    }
    check_x(x)?;
    let j = integral_closed_form(&IntegralSpec::new(LommelParams::new(mu, nu), nu, 0.0, x))?;
    Ok(j / x.powf(nu))
}

/// The oracle value of the bounded quantity: the closed form when β = 0,
/// otherwise quadrature cross-checked against the incomplete-gamma series.
pub fn oracle_value(id: InequalityId, params: BoundParams, x: f64, tol: f64) -> Result<f64> {
    let p = id.descriptor().effective(params);
    match integral_spec(id, &p, x) {
        None => corollary_f(p.mu, p.nu, x),
        Some(spec) => integral_oracle(&spec, tol),
    }
}

/// Closed form at β = 0; quadrature agreeing with the series to
/// [`ORACLE_AGREEMENT`] otherwise.
pub fn integral_oracle(spec: &IntegralSpec, tol: f64) -> Result<f64> {
    if spec.beta == 0.0 {
        return integral_closed_form(spec);
    }
    let quad = integral_quadrature(spec, tol)?;
    let series = integral_exp_series(spec, tol.min(1e-13))?.value;
    let rel = ((quad - series) / quad).abs();
    if rel > ORACLE_AGREEMENT || !rel.is_finite() {
        return Err(Error::OracleDisagreement { left: quad, right: series, rel });
    }
    Ok(quad)
}

/// One bound compared against its oracle value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub id: InequalityId,
    pub mu: f64,
    pub nu: f64,
    pub n: f64,
    pub beta: f64,
    pub x: f64,
    /// The integral, or F_{μ,ν}(x) for the corollary ids.
    pub integral: f64,
    pub bound: f64,
    /// bound − integral for upper bounds, integral − bound for lower bounds.
    pub slack: f64,
    pub ratio: f64,
    pub satisfied: bool,
}

impl BoundCheck {
    pub fn from_values(id: InequalityId, p: BoundParams, x: f64, integral: f64, bound: f64) -> Self {
        let slack = if id.descriptor().direction.is_lower() { integral - bound } else { bound - integral };
        let atol = GUARD_BAND * integral.abs().max(bound.abs());
        BoundCheck {
            id,
            mu: p.mu,
            nu: p.nu,
            n: p.n,
            beta: p.beta,
            x,
            integral,
            bound,
            slack,
            ratio: bound / integral,
            satisfied: slack >= -atol,
        }
    }

    pub fn params(&self) -> BoundParams {
        BoundParams::new(self.mu, self.nu, self.n, self.beta)
    }

    /// slack / max(|integral|, |bound|)
    pub fn relative_slack(&self) -> f64 {
        self.slack / self.integral.abs().max(self.bound.abs())
    }
}

/// Evaluate both sides of `id` at x and compare.
pub fn verify_inequality(id: InequalityId, params: BoundParams, x: f64, tol: f64) -> Result<BoundCheck> {
    let desc = id.descriptor();
    let p = desc.effective(params);
    desc.check_domain(&p)?;
    check_x(x)?;
    let bound = bound_expression(id, &p, x)?;
    let integral = oracle_value(id, p, x, tol)?;
    Ok(BoundCheck::from_values(id, p, x, integral, bound))
}

/// [`verify_inequality`] at each point of an ascending grid.
pub fn tightness_sweep(id: InequalityId, params: BoundParams, grid: &[f64], tol: f64) -> Result<Vec<BoundCheck>> {
    if grid.is_empty() {
        return Err(Error::domain("tightness sweep needs a nonempty grid"));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("tightness sweep grid must be strictly ascending"));
    }
    grid.iter().map(|&x| verify_inequality(id, params, x, tol)).collect()
}

#[cfg(test)]
mod tests;
