//! Scalar diagnostics of the decayed cat: normally ordered moments,
//! quadrature squeezing, photon statistics and the interference decay factor.

use num_complex::Complex64;

use crate::cat::TAIL_TOLERANCE;
use crate::decay::{log_overlap, phase_factor, DecayedCat, FockDensityMatrix};
use crate::error::{Error, Result};
use crate::specfun::log_factorial;

/// Default cut on `f` below which a cat counts as fully decohered.
pub const DEFAULT_DECOHERENCE_EPSILON: f64 = 0.0125;

/// Rounding noise tolerated on a probability before it is an error.
pub const NEGATIVE_PROBABILITY_FLOOR: f64 = -1e-15;

/// `S₁ = 4⟨(ΔX)²⟩ − 1` and `S₂ = 4⟨(ΔY)²⟩ − 1` for `X = (a + a†)/2`,
/// `Y = (a − a†)/2i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingFactors {
    pub s1: f64,
    pub s2: f64,
}

impl SqueezingFactors {
    /// Builds from `⟨a⟩, ⟨a†⟩, ⟨a²⟩, ⟨a†²⟩, ⟨a†a⟩`.
    pub fn from_moments(a: Complex64, ad: Complex64, a2: Complex64, ad2: Complex64, n: Complex64) -> Self {
        let s1 = 2.0 * n + a2 + ad2 - (a + ad) * (a + ad);
        let s2 = 2.0 * n - a2 - ad2 + (a - ad) * (a - ad);
        SqueezingFactors { s1: s1.re, s2: s2.re }
    }

    /// Quadrature variances straight from a number-basis density matrix.
    pub fn from_density_matrix(rho: &FockDensityMatrix) -> Self {
        Self::from_moments(
            rho.moment(0, 1),
            rho.moment(1, 0),
            rho.moment(0, 2),
            rho.moment(2, 0),
            rho.moment(1, 1),
        )
    }

    /// Either quadrature below the vacuum level.
    pub fn is_squeezed(&self) -> bool {
        self.s1 < 0.0 || self.s2 < 0.0
    }
}

/// `⟨a†ᵐ aⁿ⟩` of the decayed cat from its four-dyad closed form.
///
/// The overlap enters with exponent 1 here: the `1−μ` power carried by the
/// state combines with `⟨√μα_{j'}|√μα_j⟩ = ⟨α_{j'}|α_j⟩^μ`.
pub fn normally_ordered_moment(dc: &DecayedCat, m: u32, n: u32) -> Complex64 {
    let cat = dc.cat();
    let amplitudes = [cat.alpha(), -cat.alpha()];
    let scale = dc.mu().powf(0.5 * (m + n) as f64);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 1..=2 {
        for jp in 1..=2 {
            let phase = phase_factor(j, jp, cat.phi()).expect("indices in range");
            let overlap = log_overlap(amplitudes[j - 1], amplitudes[jp - 1]).exp();
            acc += Complex64::from_polar(overlap, phase)
                * amplitudes[j - 1].powu(n)
                * amplitudes[jp - 1].conj().powu(m);
        }
    }
    acc * (cat.norm() * scale)
}

/// Mean photon number `⟨a†a⟩`.
pub fn mean_photon_number(dc: &DecayedCat) -> f64 {
    normally_ordered_moment(dc, 1, 1).re
}

/// Squeezing factors for any phase, assembled from normally ordered moments.
pub fn squeezing_factors(dc: &DecayedCat) -> SqueezingFactors {
    SqueezingFactors::from_moments(
        normally_ordered_moment(dc, 0, 1),
        normally_ordered_moment(dc, 1, 0),
        normally_ordered_moment(dc, 0, 2),
        normally_ordered_moment(dc, 2, 0),
        normally_ordered_moment(dc, 1, 1),
    )
}

/// Closed-form squeezing of the even cat with real amplitude:
/// `S₁ = 4μα²/(1+e^{−2α²})`, `S₂ = −4μα²e^{−2α²}/(1+e^{−2α²})`.
pub fn squeezing_ecs_closed(alpha: f64, tau: f64) -> SqueezingFactors {
    let mu = (-tau).exp();
    let overlap = (-2.0 * alpha * alpha).exp();
    let base = 4.0 * mu * alpha * alpha / (1.0 + overlap);
    SqueezingFactors {
        s1: base,
        s2: -base * overlap,
    }
}

/// `f = exp(−2|α|²(1 − e^{−τ}))`.
pub fn interference_decay_factor(alpha_abs: f64, tau: f64) -> f64 {
    (2.0 * alpha_abs * alpha_abs * (-tau).exp_m1()).exp()
}

/// Smallest grid amplitude whose interference factor at `tau` is at most
/// `epsilon`; `None` when no grid point gets there.
pub fn decoherence_threshold_alpha(tau: f64, epsilon: f64, alpha_grid: &[f64]) -> Option<f64> {
    alpha_grid
        .iter()
        .copied()
        .find(|&a| interference_decay_factor(a, tau) <= epsilon)
}

/// Photon-number probabilities `P(0..=n_max)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonNumberDistribution {
    pub probs: Vec<f64>,
    pub n_max: usize,
}

impl PhotonNumberDistribution {
    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn get(&self, n: usize) -> f64 {
        self.probs.get(n).copied().unwrap_or(0.0)
    }
}

/// `P(n) = 2A e^{−μ|α|²} (μ|α|²)ⁿ/n! · (1 + (−1)ⁿ f cos φ)`, log domain.
pub fn photon_number_distribution(dc: &DecayedCat, n_max: usize) -> Result<PhotonNumberDistribution> {
    let cat = dc.cat();
    let mean = dc.mu() * cat.alpha().norm_sqr();
    let f_cos = dc.interference_factor() * cat.phi().cos();
    let mut probs = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let poisson = poisson_pmf(mean, n as u64);
        let parity = if n % 2 == 0 { 1.0 + f_cos } else { 1.0 - f_cos };
        let mut p = 2.0 * cat.norm() * poisson * parity;
        if p < 0.0 {
            if p < NEGATIVE_PROBABILITY_FLOOR {
                return Err(Error::NegativeProbability { n, value: p });
            }
            p = 0.0;
        }
        probs.push(p);
    }
    let dist = PhotonNumberDistribution { probs, n_max };
    let tail = 1.0 - dist.total();
    if tail.abs() > TAIL_TOLERANCE {
        log::warn!("photon-number distribution truncated at n = {n_max}: 1 - ΣP = {tail:e}");
    }
    Ok(dist)
}

/// `e^{−λ} λⁿ/n!`.
pub fn poisson_pmf(lambda: f64, n: u64) -> f64 {
    if lambda == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    (n as f64 * lambda.ln() - lambda - log_factorial(n)).exp()
}
