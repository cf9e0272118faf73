use super::*;
use crate::special::gamma;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn bp(mu: f64, nu: f64, n: f64, beta: f64) -> BoundParams {
    BoundParams::new(mu, nu, n, beta)
}

#[test]
fn constant_a_by_substitution() {
    // (μ, ν, n) = (0, 0.5, 0): 1 / (2 · 2 · 2.5 · Γ(0.25) Γ(2.75))
    let expect = 1.0 / (2.0 * 2.0 * 2.5 * gamma(0.25).unwrap() * gamma(2.75).unwrap());
    assert!(rel(constant_a(0.0, 0.5, 0.0).unwrap(), expect) < 1e-14);
    assert_eq!(constant_a(0.3, 0.7, -1.0).unwrap(), 0.0);
}

#[test]
fn constants_match_direct_gamma_products() {
    let (mu, nu, n) = (2.0_f64, 1.0_f64, 0.5_f64);
    let g1 = gamma(0.5 * (mu - nu + 1.0)).unwrap();
    let g5 = gamma(0.5 * (mu + nu + 2.0 * n + 5.0)).unwrap();
    let g9 = gamma(0.5 * (mu + nu + 2.0 * n + 9.0)).unwrap();
    let a = (n + 1.0) / (2f64.powf(mu + n + 1.0) * (2.0 * nu + n + 1.0) * (mu + nu + n + 2.0) * g1 * g5);
    let b = (2.0 * nu + n + 1.0) / (2f64.powf(mu + n + 2.0) * (mu - nu + n + 2.0) * (nu + n + 1.0) * g1 * g5);
    let c = (2.0 * nu + n + 1.0) * (2.0 * nu + n + 3.0)
        / (2f64.powf(mu + n + 4.0) * (n + 1.0) * (mu - nu + n + 4.0) * (nu + n + 3.0) * g1 * g9);
    let d = (2.0 * nu + n + 1.0) / (2f64.powf(mu + n + 1.0) * (n + 1.0) * (mu - nu + n + 2.0) * g1 * g5);
    let k = theorem_constants(mu, nu, n).unwrap();
    for (got, want) in [(k.a, a), (k.b, b), (k.c, c), (k.d, d)] {
        assert!(rel(got, want) < 1e-13, "{got} vs {want}");
    }
}

#[test]
fn constants_report_the_failing_factor() {
    let err = constant_a(1.0, -0.5, 0.0).unwrap_err().to_string();
    assert!(err.contains("constant a") && err.contains("2nu+n+1"), "{err}");
    let err = constant_d(1.0, 0.0, -1.0).unwrap_err().to_string();
    assert!(err.contains("constant d"), "{err}");
    // (μ−ν+1)/2 = 0 is a pole
    let err = constant_b(0.0, 1.0, 0.0).unwrap_err().to_string();
    assert!(err.contains("constant b") && err.contains("pole"), "{err}");
}

#[test]
fn pron_is_exact_at_zero_beta() {
    let c = verify_inequality(InequalityId::Pron, bp(1.0, 0.75, 0.0, 0.0), 3.0, 1e-12).unwrap();
    assert!(c.slack.abs() <= 1e-10 * c.integral.abs());
}

#[test]
fn besi55_and_besi44_exact_at_zero_beta() {
    for id in [InequalityId::Besi44, InequalityId::Besi55] {
        let c = verify_inequality(id, bp(2.3, 0.4, 0.0, 0.0), 7.5, 1e-12).unwrap();
        assert!(c.relative_slack().abs() <= 1e-10, "{id}: {c:?}");
    }
}

#[test]
fn bi2_bi3_coincide_when_two_nu_plus_n_is_minus_one() {
    let p = bp(1.0, -0.25, -0.5, 0.0);
    for x in [0.3, 5.0, 40.0] {
        let lo = bound_value(InequalityId::Bi2, p, x).unwrap();
        let hi = bound_value(InequalityId::Bi3, p, x).unwrap();
        assert!(rel(lo, hi) < 1e-12);
        // and both equal the integral
        let c = verify_inequality(InequalityId::Bi2, p, x, 1e-12).unwrap();
        assert!(c.relative_slack().abs() < 1e-10, "{c:?}");
    }
}

#[test]
fn besi44_components() {
    let p = bp(0.0, 0.0, 0.0, 0.5);
    let t = crate::lommel::t_tilde_value(LommelParams::new(1.0, 1.0), 2.0).unwrap();
    let want = (-1.0_f64).exp() * 2.0 * t;
    assert!(rel(bound_value(InequalityId::Besi44, p, 2.0).unwrap(), want) < 1e-14);
}

#[test]
fn besi11_sample_point() {
    let c = verify_inequality(InequalityId::Besi11, bp(0.0, 0.5, 0.0, 0.3), 5.0, 1e-12).unwrap();
    assert!(c.satisfied && c.slack > 0.0, "{c:?}");
}

#[test]
fn cor_upper_table_cell() {
    let c = verify_inequality(InequalityId::CorUpper, bp(-0.5, 0.0, 0.0, 0.0), 5.0, 1e-12).unwrap();
    assert!((c.slack / c.integral - 0.1928).abs() < 1e-4);
}

#[test]
fn corollary_f_small_x() {
    let (mu, nu, x) = (0.7_f64, 0.2_f64, 1e-4_f64);
    let lead = 1.0
        / (2f64.powf(mu + 1.0)
            * (mu + nu + 2.0)
            * gamma(0.5 * (mu - nu + 3.0)).unwrap()
            * gamma(0.5 * (mu + nu + 3.0)).unwrap());
    assert!(rel(corollary_f(mu, nu, x).unwrap() / x.powf(mu + 2.0), lead) < 1e-8);
    assert!(corollary_f(mu, -0.5, 1.0).is_err());
}

#[test]
fn beta_is_ignored_where_the_integral_has_none() {
    let a = verify_inequality(InequalityId::Fcp100, bp(1.0, 0.75, 0.0, 0.4), 3.0, 1e-12).unwrap();
    let b = verify_inequality(InequalityId::Fcp100, bp(1.0, 0.75, 0.0, 0.0), 3.0, 1e-12).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.beta, 0.0);
}

#[test]
fn domain_violation_is_reported() {
    let r = verify_inequality(InequalityId::Pron, bp(1.0, 2.5, 0.0, 0.2), 1.0, 1e-12);
    assert!(matches!(r, Err(Error::Domain(_))));
}

#[test]
fn sweep_rejects_unsorted_grid() {
    let p = bp(1.0, 0.5, 0.0, 0.0);
    assert!(tightness_sweep(InequalityId::Besi22, p, &[], 1e-12).is_err());
    assert!(tightness_sweep(InequalityId::Besi22, p, &[2.0, 1.0], 1e-12).is_err());
}

#[test]
fn besi22_tight_at_origin() {
    let p = bp(1.0, 0.5, 0.0, 0.0);
    let s = tightness_sweep(InequalityId::Besi22, p, &[0.01, 0.1, 1.0], 1e-12).unwrap();
    assert!((s[0].ratio - 1.0).abs() < 1e-3);
    assert!(s.iter().all(|c| c.satisfied));
}

#[test]
fn slack_sign_follows_direction() {
    let p = bp(1.0, 0.5, 0.0, 0.0);
    let lower = BoundCheck::from_values(InequalityId::Bi1, p, 1.0, 2.0, 1.0);
    assert_eq!(lower.slack, 1.0);
    let upper = BoundCheck::from_values(InequalityId::Fcp100, p, 1.0, 2.0, 1.0);
    assert_eq!(upper.slack, -1.0);
    assert!(!upper.satisfied);
    // inside the guard band
    let edge = BoundCheck::from_values(InequalityId::Fcp100, p, 1.0, 1.0, 1.0 - 1e-11);
    assert!(edge.satisfied);
}
