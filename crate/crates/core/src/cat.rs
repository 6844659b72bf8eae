//! Two-component cat states `√A (|α⟩ + e^{iφ}|−α⟩)`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::coherent_fock_log;

/// Smallest admissible value of `1 + cos φ · e^{-2|α|²}`.
pub const NORM_DENOMINATOR_FLOOR: f64 = 1e-12;

/// Smallest `|α|` accepted by [`CatState::odd`].
pub const ODD_ALPHA_FLOOR: f64 = 1e-4;

/// Tail mass above which a Fock expansion is reported as under-resolved.
pub const TAIL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatState {
    alpha: Complex64,
    phi: f64,
    norm: f64,
}

impl CatState {
    /// Superposition with relative phase `phi`.
    ///
    /// The normalization is `A = 1 / (2[1 + cos φ · e^{-2|α|²}])`, which is
    /// what `⟨α|−α⟩ = e^{-2|α|²}` gives for a unit-norm state.
    pub fn new(alpha: Complex64, phi: f64) -> Result<Self> {
        let denominator = 1.0 + phi.cos() * (-2.0 * alpha.norm_sqr()).exp();
        if !(denominator > NORM_DENOMINATOR_FLOOR) {
            return Err(Error::DegenerateNorm { denominator });
        }
        Ok(CatState {
            alpha,
            phi,
            norm: 1.0 / (2.0 * denominator),
        })
    }

    /// Even coherent state, `φ = 0`.
    pub fn even(alpha: Complex64) -> Result<Self> {
        Self::new(alpha, 0.0)
    }

    /// Odd coherent state, `φ = π`.
    pub fn odd(alpha: Complex64) -> Result<Self> {
        if alpha.norm() <= ODD_ALPHA_FLOOR {
            return Err(Error::OddCatTooSmall {
                alpha_abs: alpha.norm(),
            });
        }
        Self::new(alpha, PI)
    }

    /// Yurke–Stoler state, `φ = π/2`.
    pub fn yurke_stoler(alpha: Complex64) -> Result<Self> {
        Self::new(alpha, FRAC_PI_2)
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Normalization constant `A`.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// Fock amplitudes `c_n = √A (1 + e^{iφ}(−1)ⁿ) ⟨n|α⟩` for `n = 0..=n_max`.
    ///
    /// Amplitudes in the parity sector killed by `φ` are exactly zero for
    /// `φ ∈ {0, π}`.
    pub fn fock_amplitudes(&self, n_max: usize) -> Vec<Complex64> {
        let sqrt_a = self.norm.sqrt();
        let rotor = Complex64::from_polar(1.0, self.phi);
        let even_weight = parity_weight(Complex64::new(1.0, 0.0) + rotor);
        let odd_weight = parity_weight(Complex64::new(1.0, 0.0) - rotor);
        let amps: Vec<Complex64> = (0..=n_max)
            .map(|n| {
                let w = if n % 2 == 0 { even_weight } else { odd_weight };
                if w == Complex64::new(0.0, 0.0) {
                    return w;
                }
                sqrt_a * w * coherent_fock_log(self.alpha, n as u64).to_linear()
            })
            .collect();
        let tail = 1.0 - amps.iter().map(|c| c.norm_sqr()).sum::<f64>();
        if tail > TAIL_TOLERANCE {
            log::warn!("Fock expansion truncated at n = {n_max} leaves tail mass {tail:e}");
        }
        amps
    }
}

// Snap 1 ± e^{iφ} to zero when cancellation leaves only rounding noise,
// so the forbidden parity sector of ECS/OCS is exactly empty.
fn parity_weight(w: Complex64) -> Complex64 {
    if w.norm() < 1e-15 {
        Complex64::new(0.0, 0.0)
    } else {
        w
    }
}
