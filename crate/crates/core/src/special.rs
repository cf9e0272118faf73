//! Gamma, signed log-gamma and the lower incomplete gamma function.

use std::f64::consts::PI;
use std::ops::{Div, Mul};

use crate::error::{Error, Result};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Lanczos shift g = 671/128.
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// Largest argument with a finite Γ.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

/// A real number stored as sign and log-magnitude, so that products of
/// gamma functions at large or negative arguments keep their sign without
/// passing through an overflowing intermediate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLogValue {
    pub log_abs: f64,
    pub sign: i8,
}

impl SignedLogValue {
    pub const ZERO: SignedLogValue = SignedLogValue { log_abs: f64::NEG_INFINITY, sign: 0 };
    pub const ONE: SignedLogValue = SignedLogValue { log_abs: 0.0, sign: 1 };

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::ZERO
        } else {
            SignedLogValue { log_abs: v.abs().ln(), sign: if v > 0.0 { 1 } else { -1 } }
        }
    }

    /// A positive value given by its logarithm.
    pub fn from_ln(log_abs: f64) -> Self {
        SignedLogValue { log_abs, sign: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// sign * exp(log_abs); may be infinite or underflow to zero.
    pub fn value(&self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_abs.exp(),
        }
    }

    /// Like [`value`](Self::value) but reports overflow as an error.
    pub fn try_value(&self, what: &'static str) -> Result<f64> {
        let v = self.value();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(what))
        }
    }

    pub fn recip(self) -> Self {
        match self.sign {
            0 => SignedLogValue { log_abs: f64::INFINITY, sign: 0 },
            s => SignedLogValue { log_abs: -self.log_abs, sign: s },
        }
    }

    /// Multiply by a positive power `base^exponent` (base > 0).
    pub fn mul_pow(self, base: f64, exponent: f64) -> Self {
        if self.sign == 0 {
            return self;
        }
        SignedLogValue { log_abs: self.log_abs + exponent * base.ln(), sign: self.sign }
    }
}

impl Mul for SignedLogValue {
    type Output = SignedLogValue;
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        SignedLogValue { log_abs: self.log_abs + rhs.log_abs, sign: self.sign * rhs.sign }
    }
}

impl Div for SignedLogValue {
    type Output = SignedLogValue;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

fn check_pole(function: &'static str, x: f64) -> Result<()> {
    if x.is_nan() {
        return Err(Error::domain(format!("{function}: NaN argument")));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole { function, arg: x });
    }
    Ok(())
}

/// sin(pi x) with exact argument reduction, exactly zero at integers.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let mut r = x % 2.0;
    if r < 0.0 {
        r += 2.0;
    }
    if r <= 0.25 {
        (PI * r).sin()
    } else if r <= 0.75 {
        (PI * (r - 0.5)).cos()
    } else if r <= 1.25 {
        (PI * (1.0 - r)).sin()
    } else if r <= 1.75 {
        -(PI * (r - 1.5)).cos()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

/// Lanczos sum sqrt(2 pi) * series / x, for x >= 0.5.
fn lanczos_sum(x: f64) -> f64 {
    let mut y = x;
    let mut ser = LANCZOS_C0;
    for c in LANCZOS_COEFFS {
        y += 1.0;
        ser += c / y;
    }
    SQRT_2PI * ser / x
}

fn ln_gamma_positive(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let t = x + LANCZOS_G;
    (x + 0.5) * t.ln() - t + lanczos_sum(x).ln()
}

/// Γ(x) for real x that is not a non-positive integer.
pub fn gamma(x: f64) -> Result<f64> {
    check_pole("gamma", x)?;
    if x > GAMMA_MAX_ARG {
        return Err(Error::Overflow("gamma"));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let reflected = 1.0 - x;
        if reflected > GAMMA_MAX_ARG {
            // |Γ(x)| underflows towards zero here; keep the sign.
            let lg = PI.ln() - s.abs().ln() - ln_gamma_positive(reflected);
            return Ok(s.signum() * lg.exp());
        }
        let g = PI / (s * gamma(reflected)?);
        return if g.is_finite() { Ok(g) } else { Err(Error::Overflow("gamma")) };
    }
    if x.fract() == 0.0 {
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * k as f64));
    }
    let t = x + LANCZOS_G;
    // Split the power so t^(x+1/2) does not overflow before e^-t is applied.
    let half = t.powf(0.5 * (x + 0.5));
    let g = half * ((-t).exp() * half) * lanczos_sum(x);
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::Overflow("gamma"))
    }
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma_signed(x: f64) -> Result<SignedLogValue> {
    check_pole("ln_gamma_signed", x)?;
    if x < 0.5 {
        let s = sin_pi(x);
        let log_abs = PI.ln() - s.abs().ln() - ln_gamma_positive(1.0 - x);
        return Ok(SignedLogValue { log_abs, sign: if s > 0.0 { 1 } else { -1 } });
    }
    Ok(SignedLogValue { log_abs: ln_gamma_positive(x), sign: 1 })
}

/// 1/Γ(x) as a signed log value.
pub fn recip_gamma_signed(x: f64) -> Result<SignedLogValue> {
    ln_gamma_signed(x).map(SignedLogValue::recip)
}

const INC_GAMMA_EPS: f64 = 1e-17;
const INC_GAMMA_MAX_ITER: usize = 100_000;
const TINY: f64 = 1e-300;

fn check_inc_gamma_domain(a: f64, x: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("lower incomplete gamma requires a > 0 (got a = {a})")));
    }
    if !(x >= 0.0) {
        return Err(Error::domain(format!("lower incomplete gamma requires x >= 0 (got x = {x})")));
    }
    Ok(())
}

/// Σ_{n≥0} x^n / (a (a+1) ... (a+n)); converges fast for x < a + 1.
fn inc_gamma_series(a: f64, x: f64) -> Result<f64> {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..INC_GAMMA_MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * INC_GAMMA_EPS {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { what: "incomplete gamma series", terms: INC_GAMMA_MAX_ITER })
}

/// e^x x^-a Γ(a, x) by modified Lentz; converges fast for x >= a + 1.
fn inc_gamma_cf(a: f64, x: f64) -> Result<f64> {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..INC_GAMMA_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < INC_GAMMA_EPS {
            return Ok(h);
        }
    }
    Err(Error::NonConvergence { what: "incomplete gamma continued fraction", terms: INC_GAMMA_MAX_ITER })
}

/// ln γ(a, x) for x > 0.
fn ln_lower_gamma(a: f64, x: f64) -> Result<f64> {
    if x < a + 1.0 {
        Ok(a * x.ln() - x + inc_gamma_series(a, x)?.ln())
    } else {
        let lg = ln_gamma_positive_any(a);
        let q = (a * x.ln() - x - lg).exp() * inc_gamma_cf(a, x)?;
        Ok(lg + (-q).ln_1p())
    }
}

fn ln_gamma_positive_any(a: f64) -> f64 {
    if a >= 0.5 {
        ln_gamma_positive(a)
    } else {
        // a in (0, 0.5): Γ(a) = Γ(a+1)/a
        ln_gamma_positive(a + 1.0) - a.ln()
    }
}

/// Lower incomplete gamma γ(a, x) = ∫₀ˣ u^{a−1} e^{−u} du.
pub fn lower_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    check_inc_gamma_domain(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let v = ln_lower_gamma(a, x)?.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow("lower_incomplete_gamma"))
    }
}

/// Regularized P(a, x) = γ(a, x) / Γ(a), in [0, 1].
pub fn regularized_lower_gamma(a: f64, x: f64) -> Result<f64> {
    check_inc_gamma_domain(a, x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let p = (ln_lower_gamma(a, x)? - ln_gamma_positive_any(a)).exp();
    Ok(p.clamp(0.0, 1.0))
}

/// ln(β^{−a} γ(a, βx)) evaluated as one quantity.
///
/// Equals ln ∫₀ˣ u^{a−1} e^{−βu} du, which stays moderate even when β^{−a}
/// and γ(a, βx) separately overflow or underflow.
pub fn ln_scaled_lower_gamma(a: f64, beta: f64, x: f64) -> Result<f64> {
    check_inc_gamma_domain(a, x)?;
    if !(beta > 0.0) {
        return Err(Error::domain(format!("scaled incomplete gamma requires beta > 0 (got {beta})")));
    }
    if x == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    let y = beta * x;
    if y < a + 1.0 {
        Ok(a * x.ln() - y + inc_gamma_series(a, y)?.ln())
    } else {
        Ok(ln_lower_gamma(a, y)? - a * beta.ln())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    /// Stirling series for ln Γ at large argument, pulled down by recurrence.
    /// Independent of the Lanczos path.
    fn stirling_gamma(x: f64) -> f64 {
        let mut shift = 1.0;
        let mut z = x;
        while z < 30.0 {
            shift *= z;
            z += 1.0;
        }
        let z2 = z * z;
        let series = 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2) + 1.0 / (1260.0 * z * z2 * z2)
            - 1.0 / (1680.0 * z * z2 * z2 * z2)
            + 1.0 / (1188.0 * z * z2 * z2 * z2 * z2);
        let half = z.powf(0.5 * (z - 0.5));
        half * ((-z).exp() * half) * SQRT_2PI * series.exp() / shift
    }

    #[test]
    fn gamma_known_values() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-15);
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-15);
        // 30-digit reference values
        assert!(rel(gamma(170.5).unwrap(), 5.56209241455999961070580965936e305) < 1e-13);
        assert!(rel(gamma(0.1).unwrap(), 9.51350769866873128580797989582) < 1e-14);
        assert!(rel(gamma(33.3).unwrap(), 7.48757759652263232744435445908e35) < 1e-13);
        assert!(rel(gamma(-4.5).unwrap(), -0.0600196013005042464270278936158) < 1e-14);
        assert!(rel(gamma(1e-5).unwrap(), 99999.4227942255594931878386261) < 1e-14);
    }

    #[test]
    fn gamma_negative_by_recurrence_shift() {
        // Γ(x) = Γ(x+3) / (x (x+1) (x+2)), with Γ(2.25) from the Stirling oracle.
        let x = -0.75;
        let oracle = stirling_gamma(x + 3.0) / (x * (x + 1.0) * (x + 2.0));
        let g = gamma(x).unwrap();
        assert!(g < 0.0);
        assert!(rel(g, oracle) < 1e-13, "{g} vs {oracle}");
        assert!(rel(g, -4.83414654429587774924091354116) < 1e-14);
    }

    #[test]
    fn gamma_matches_stirling_oracle_on_grid() {
        let mut x = 0.5;
        while x <= 170.0 {
            let g = gamma(x).unwrap();
            assert!(rel(g, stirling_gamma(x)) < 1e-13, "x = {x}");
            x += 0.731;
        }
    }

    #[test]
    fn gamma_poles_and_overflow() {
        for x in [0.0, -1.0, -2.0, -37.0] {
            assert!(matches!(gamma(x), Err(Error::Pole { .. })));
            assert!(matches!(ln_gamma_signed(x), Err(Error::Pole { .. })));
        }
        assert!(matches!(gamma(172.0), Err(Error::Overflow(_))));
        assert!(ln_gamma_signed(500.0).is_ok());
    }

    #[test]
    fn ln_gamma_signed_values() {
        let two = ln_gamma_signed(2.0).unwrap();
        assert!(two.log_abs.abs() < 1e-15 && two.sign == 1);
        let h = ln_gamma_signed(-0.5).unwrap();
        assert_eq!(h.sign, -1);
        assert!((h.log_abs - (2.0 * PI.sqrt()).ln()).abs() < 1e-14);
        // Γ(50.25) = Γ(1.25) Π_{k=0}^{48} (1.25 + k)
        let gamma_1_25 = 0.906402477055477077982671288967_f64;
        let oracle = gamma_1_25.ln() + (0..49).map(|k| (1.25 + k as f64).ln()).sum::<f64>();
        let lg = ln_gamma_signed(50.25).unwrap();
        assert!((lg.log_abs - oracle).abs() < 1e-12);
        assert!((lg.log_abs - 145.541871596332117966352578561).abs() < 1e-12);
    }

    #[test]
    fn ln_gamma_signed_consistent_with_gamma() {
        let mut x: f64 = -9.87;
        while x < 60.0 {
            if (x - x.round()).abs() > 1e-3 {
                let g = gamma(x).unwrap();
                let s = ln_gamma_signed(x).unwrap();
                assert!(rel(s.value(), g) < 1e-12, "x = {x}");
            }
            x += 0.173;
        }
    }

    #[test]
    fn signed_log_arithmetic() {
        let a = SignedLogValue::from_f64(-3.0);
        let b = SignedLogValue::from_f64(0.5);
        assert!(rel((a * b).value(), -1.5) < 1e-15);
        assert!(rel((a / b).value(), -6.0) < 1e-15);
        assert!((a * SignedLogValue::ZERO).is_zero());
        assert_eq!(SignedLogValue::ZERO.value(), 0.0);
        assert!(rel(b.mul_pow(2.0, 10.0).value(), 512.0) < 1e-14);
    }

    /// Adaptive Simpson on [a, b].
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, eps: f64) -> f64 {
        fn rec<F: Fn(f64) -> f64>(
            f: &F,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            whole: f64,
            eps: f64,
            depth: u32,
        ) -> f64 {
            let m = 0.5 * (a + b);
            let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
            let (flm, frm) = (f(lm), f(rm));
            let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if depth == 0 || (left + right - whole).abs() <= 15.0 * eps {
                return left + right + (left + right - whole) / 15.0;
            }
            rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
                + rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
        }
        let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        rec(f, a, b, fa, fm, fb, whole, eps, 50)
    }

    #[test]
    fn lower_incomplete_gamma_values() {
        assert!(rel(lower_incomplete_gamma(1.0, 2f64.ln()).unwrap(), 0.5) < 1e-15);
        assert_eq!(lower_incomplete_gamma(2.5, 0.0).unwrap(), 0.0);
        // u = t^2: γ(1/2, 1) = ∫₀¹ 2 e^{−t²} dt
        let oracle = simpson(&|t: f64| 2.0 * (-t * t).exp(), 0.0, 1.0, 1e-15);
        let g = lower_incomplete_gamma(0.5, 1.0).unwrap();
        assert!(rel(g, oracle) < 1e-12, "{g} vs {oracle}");
        assert!(rel(g, 1.49364826562485405079893487226) < 1e-14);
        assert!(rel(lower_incomplete_gamma(30.0, 25.0).unwrap(), 1.61011948320063065729325271336e30) < 1e-13);
        assert!(rel(lower_incomplete_gamma(2.5, 40.0).unwrap(), 1.32934038817913590491442004434) < 1e-14);
        assert!(rel(lower_incomplete_gamma(7.3, 7.3).unwrap(), 698.322045406032038461903163139) < 1e-13);
    }

    #[test]
    fn lower_incomplete_gamma_domain() {
        assert!(matches!(lower_incomplete_gamma(0.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(lower_incomplete_gamma(-1.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(lower_incomplete_gamma(1.0, -1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn scaled_lower_gamma_matches_unfused_where_finite() {
        for &(a, beta, x) in &[(3.5, 0.5, 5.0), (12.0, 0.9, 40.0), (2.2, 0.01, 3.0), (40.0, 0.3, 90.0)] {
            let fused = ln_scaled_lower_gamma(a, beta, x).unwrap().exp();
            let plain = beta.powf(-a) * lower_incomplete_gamma(a, beta * x).unwrap();
            assert!(rel(fused, plain) < 1e-12, "{a} {beta} {x}");
        }
        // β^{-a} alone overflows here; the fused value tends to x^a / a.
        let (a, x) = (80.0, 2.0);
        let v = ln_scaled_lower_gamma(a, 1e-9, x).unwrap();
        assert!((v - (a * x.ln() - a.ln())).abs() < 1e-6);
    }

    #[test]
    fn sin_pi_exact_at_integers() {
        for k in -10..10 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-2.5) + 1.0).abs() < 1e-16);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn incomplete_gamma_recurrence(a in 0.1f64..50.0, x in 0.01f64..100.0) {
                let lhs = lower_incomplete_gamma(a + 1.0, x).unwrap();
                let rhs = a * lower_incomplete_gamma(a, x).unwrap() - (a * x.ln() - x).exp();
                prop_assert!(((lhs - rhs) / lhs).abs() <= 1e-11, "a={} x={} lhs={} rhs={}", a, x, lhs, rhs);
            }

            #[test]
            fn reflection_consistency(x in -5.0f64..5.0) {
                prop_assume!((x - x.round()).abs() > 1e-6);
                let p = gamma(x).unwrap() * gamma(1.0 - x).unwrap() * sin_pi(x) / PI;
                prop_assert!((p - 1.0).abs() <= 1e-11);
            }

            #[test]
            fn regularized_in_unit_interval(a in 0.01f64..200.0, x in 0.0f64..500.0) {
                let p = regularized_lower_gamma(a, x).unwrap();
                prop_assert!((0.0..=1.0).contains(&p));
            }

            #[test]
            fn monotone_in_x(a in 0.1f64..50.0, x in 0.0f64..100.0, dx in 0.0f64..5.0) {
                let g0 = lower_incomplete_gamma(a, x).unwrap();
                let g1 = lower_incomplete_gamma(a, x + dx).unwrap();
                prop_assert!(g1 >= g0 * (1.0 - 1e-14));
            }
        }

        #[test]
        fn tends_to_complete_gamma() {
            for a in [0.3, 1.0, 4.5, 20.0] {
                let g = lower_incomplete_gamma(a, 400.0).unwrap();
                assert!(((g - gamma(a).unwrap()) / g).abs() < 1e-13);
            }
        }
    }
}
