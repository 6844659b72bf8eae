//! Special functions shared by the analytic formulas and the Fock-space oracles.
//!
//! Everything carrying a factorial is evaluated in log domain so that
//! coherent amplitudes `αⁿ/√n!` stay finite for photon numbers well past
//! the point where `n!` overflows a double.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number stored as `sign_phase · exp(log_magnitude)`.
///
/// Zero is represented by `log_magnitude = -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogScalar {
    pub log_magnitude: f64,
    pub sign_phase: Complex64,
}

impl LogScalar {
    pub const ZERO: LogScalar = LogScalar {
        log_magnitude: f64::NEG_INFINITY,
        sign_phase: Complex64 { re: 1.0, im: 0.0 },
    };

    pub const ONE: LogScalar = LogScalar {
        log_magnitude: 0.0,
        sign_phase: Complex64 { re: 1.0, im: 0.0 },
    };

    /// Builds from a log-magnitude and an argument in radians.
    pub fn from_polar(log_magnitude: f64, arg: f64) -> Self {
        LogScalar {
            log_magnitude,
            sign_phase: Complex64::from_polar(1.0, arg),
        }
    }

    pub fn from_linear(z: Complex64) -> Self {
        let r = z.norm();
        if r == 0.0 {
            return Self::ZERO;
        }
        LogScalar {
            log_magnitude: r.ln(),
            sign_phase: z / r,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.log_magnitude == f64::NEG_INFINITY
    }

    pub fn to_linear(self) -> Complex64 {
        if self.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        self.sign_phase * self.log_magnitude.exp()
    }

    pub fn conj(self) -> Self {
        LogScalar {
            log_magnitude: self.log_magnitude,
            sign_phase: self.sign_phase.conj(),
        }
    }
}

impl std::ops::Mul for LogScalar {
    type Output = LogScalar;

    fn mul(self, rhs: LogScalar) -> LogScalar {
        if self.is_zero() || rhs.is_zero() {
            return LogScalar::ZERO;
        }
        let phase = self.sign_phase * rhs.sign_phase;
        LogScalar {
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
            // renormalize so |sign_phase| does not drift over long products
            sign_phase: phase / phase.norm(),
        }
    }
}

const EXACT_FACTORIALS: [u64; 21] = {
    let mut table = [1u64; 21];
    let mut i = 1;
    while i < 21 {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

/// `ln(n!)`.
///
/// Exact integer factorials up to 20, Stirling series with four correction
/// terms above (truncation error below 1e-17 at n = 21).
pub fn log_factorial(n: u64) -> f64 {
    if n <= 20 {
        return (EXACT_FACTORIALS[n as usize] as f64).ln();
    }
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let correction =
        inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    (x + 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + correction
}

/// Associated Laguerre polynomial `L_m^k(x)`.
///
/// Ascending three-term recurrence in `m`. A negative upper index is mapped
/// through `L_m^{-j}(x) = (-x)^j (m-j)!/m! · L_{m-j}^{j}(x)`, which requires
/// `m >= j`.
pub fn laguerre_assoc(m: u32, k: i64, x: f64) -> Result<f64> {
    if k >= 0 {
        return Ok(laguerre_recurrence(m, k as f64, x));
    }
    let j = k.unsigned_abs();
    if (m as u64) < j {
        return Err(Error::LaguerreDomain { m, k });
    }
    let j = j as u32;
    let reduced = laguerre_recurrence(m - j, j as f64, x);
    Ok(reflection_factor(m, j, x) * reduced)
}

/// `(-x)^j (m-j)!/m!`, the prefactor of the negative-index identity.
pub(crate) fn reflection_factor(m: u32, j: u32, x: f64) -> f64 {
    if j == 0 {
        return 1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    let log_mag = j as f64 * x.abs().ln() - (log_factorial(m as u64) - log_factorial((m - j) as u64));
    let sign = if x > 0.0 && j % 2 == 1 { -1.0 } else { 1.0 };
    sign * log_mag.exp()
}

fn laguerre_recurrence(m: u32, k: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for i in 1..m {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + k - x) * cur - (i + k) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_0^k(x), …, L_{m_max}^k(x)` for a non-negative `k`, one recurrence pass.
pub fn laguerre_column(m_max: usize, k: u32, x: f64) -> Vec<f64> {
    let k = k as f64;
    let mut out = Vec::with_capacity(m_max + 1);
    out.push(1.0);
    if m_max == 0 {
        return out;
    }
    out.push(1.0 + k - x);
    for i in 1..m_max {
        let fi = i as f64;
        let next = ((2.0 * fi + 1.0 + k - x) * out[i] - (fi + k) * out[i - 1]) / (fi + 1.0);
        out.push(next);
    }
    out
}

/// `⟨α|β⟩ = exp(-|α|²/2 - |β|²/2 + conj(α)·β)`.
pub fn coherent_overlap(alpha: Complex64, beta: Complex64) -> Complex64 {
    (-0.5 * alpha.norm_sqr() - 0.5 * beta.norm_sqr() + alpha.conj() * beta).exp()
}

/// `⟨n|α⟩` in log domain.
pub fn coherent_fock_log(alpha: Complex64, n: u64) -> LogScalar {
    let r = alpha.norm();
    if r == 0.0 {
        return if n == 0 { LogScalar::ONE } else { LogScalar::ZERO };
    }
    let log_mag = -0.5 * r * r + n as f64 * r.ln() - 0.5 * log_factorial(n);
    LogScalar::from_polar(log_mag, n as f64 * alpha.arg())
}

/// `⟨n|α⟩ = e^{-|α|²/2} αⁿ/√n!`, materialized from the log-domain value.
pub fn coherent_fock_amplitude(alpha: Complex64, n: u64) -> Complex64 {
    coherent_fock_log(alpha, n).to_linear()
}

/// `⟨0|α⟩, …, ⟨n_max|α⟩`.
pub fn coherent_fock_vector(alpha: Complex64, n_max: usize) -> Vec<Complex64> {
    (0..=n_max as u64)
        .map(|n| coherent_fock_amplitude(alpha, n))
        .collect()
}
