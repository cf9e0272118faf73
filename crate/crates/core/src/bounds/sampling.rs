//! Seeded draws inside each inequality's domain.
//!
//! Every coordinate is uniform on its admissible interval, clipped to a
//! [`SampleBox`]. The default box is n ∈ (−1, 5], μ ∈ (lower bound, 15],
//! β capped at 2 where every β ≥ 0 is allowed, x ∈ (0, 100]. Each id draws
//! from its own ChaCha stream, so adding or removing ids does not change the
//! draws of the others.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::registry::{BetaRange, BoundParams, Endpoint, InequalityId};

pub const SAMPLE_N_MAX: f64 = 5.0;
pub const SAMPLE_MU_MAX: f64 = 15.0;
pub const SAMPLE_BETA_MAX: f64 = 2.0;
pub const SAMPLE_X_MAX: f64 = 100.0;

/// Upper limits of the sampling box; lower limits come from the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBox {
    pub n_max: f64,
    pub mu_max: f64,
    /// Cap on β, applied on top of the inequality's own range.
    pub beta_max: f64,
    pub x_max: f64,
}

impl SampleBox {
    /// The box for soundness sweeps.
    pub const DEFAULT: SampleBox =
        SampleBox { n_max: SAMPLE_N_MAX, mu_max: SAMPLE_MU_MAX, beta_max: SAMPLE_BETA_MAX, x_max: SAMPLE_X_MAX };

    /// Small orders and β ≤ 1/2, where x = 100 lies in the large-argument
    /// regime (x well above ν²/2 and (1 − β)x well above the order times ln x).
    pub const ASYMPTOTIC: SampleBox = SampleBox { n_max: 1.0, mu_max: 3.0, beta_max: 0.5, x_max: SAMPLE_X_MAX };
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox::DEFAULT
    }
}

/// Uniform on the interval between two endpoints, honouring openness.
fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: Endpoint, hi: Endpoint) -> f64 {
    loop {
        let v = lo.value + (hi.value - lo.value) * rng.gen::<f64>();
        let ok_lo = if lo.inclusive { v >= lo.value } else { v > lo.value };
        let ok_hi = if hi.inclusive { v <= hi.value } else { v < hi.value };
        if ok_lo && ok_hi {
            return v;
        }
    }
}

fn open(value: f64) -> Endpoint {
    Endpoint { value, inclusive: false }
}

fn closed(value: f64) -> Endpoint {
    Endpoint { value, inclusive: true }
}

pub fn sample_params<R: Rng + ?Sized>(id: InequalityId, bx: &SampleBox, rng: &mut R) -> BoundParams {
    let d = id.descriptor();
    let n = if d.uses_n { uniform(rng, open(-1.0), closed(bx.n_max)) } else { 0.0 };
    let mu = uniform(rng, open(d.mu_lower(n)), closed(bx.mu_max));
    let (lo, hi) = d.nu_range(mu, n);
    let nu = uniform(rng, lo, hi);
    let beta = match d.beta {
        BetaRange::Unused => 0.0,
        BetaRange::NonNegative if bx.beta_max >= 1.0 => uniform(rng, closed(0.0), open(bx.beta_max)),
        BetaRange::NonNegative | BetaRange::HalfOpenUnit => uniform(rng, closed(0.0), open(bx.beta_max.min(1.0))),
        BetaRange::OpenUnit => uniform(rng, open(0.0), open(bx.beta_max.min(1.0))),
    };
    BoundParams { mu, nu, n, beta }
}

pub fn sample_x<R: Rng + ?Sized>(bx: &SampleBox, rng: &mut R) -> f64 {
    uniform(rng, open(0.0), closed(bx.x_max))
}

/// `count` (params, x) draws for one id from the default box, reproducible
/// from `seed`.
pub fn sample_checks(id: InequalityId, count: usize, seed: u64) -> Vec<(BoundParams, f64)> {
    sample_checks_in(id, &SampleBox::DEFAULT, count, seed)
}

pub fn sample_checks_in(id: InequalityId, bx: &SampleBox, count: usize, seed: u64) -> Vec<(BoundParams, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id.index() as u64);
    (0..count)
        .map(|_| {
            let p = sample_params(id, bx, &mut rng);
            (p, sample_x(bx, &mut rng))
        })
        .collect()
}
