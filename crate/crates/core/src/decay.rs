//! Cat states decaying into a zero-temperature reservoir.
//!
//! Two independent routes to the state at scaled time `τ = γt`:
//!
//! * [`density_matrix`] assembles the exact four-dyad solution
//!   `ρ(τ) = A Σ e^{iφ_{jj'}} ⟨α_j|α_{j'}⟩^{1−μ} |√μ α_j⟩⟨√μ α_{j'}|` with
//!   `α₁ = α`, `α₂ = −α`, `μ = e^{−τ}`;
//! * [`lindblad_evolve`] integrates `dρ/dτ = ½(2aρa† − a†aρ − ρa†a)` with
//!   classical RK4 in a truncated number basis.
//!
//! The integrator is the correctness oracle for the closed form.

use ndarray::Array2;
use num_complex::Complex64;
use serde::Deserialize;

use crate::cat::{CatState, TAIL_TOLERANCE};
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::specfun::coherent_fock_vector;

/// Largest RK4 step accepted by [`lindblad_evolve`].
pub const MAX_STEP: f64 = 0.01;

/// Number-basis cutoff `⌈|α|² + 8|α| + 20⌉` for a state built on amplitude `|α|`.
pub fn truncation_n_max(alpha_abs: f64) -> usize {
    (alpha_abs * alpha_abs + 8.0 * alpha_abs + 20.0).ceil() as usize
}

/// A cat state after scaled decay time `tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayedCat {
    cat: CatState,
    tau: f64,
    mu: f64,
}

impl DecayedCat {
    pub fn new(cat: CatState, tau: f64) -> Result<Self> {
        if !(tau >= 0.0) || !tau.is_finite() {
            return Err(Error::InvalidTau(tau));
        }
        Ok(DecayedCat {
            cat,
            tau,
            mu: (-tau).exp(),
        })
    }

    pub fn cat(&self) -> &CatState {
        &self.cat
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Survival factor `μ = e^{−τ}`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Amplitude of the decayed components, `√μ·α`.
    pub fn decayed_alpha(&self) -> Complex64 {
        self.cat.alpha() * self.mu.sqrt()
    }

    /// The cutoff rule evaluated at the initial amplitude.
    pub fn default_n_max(&self) -> usize {
        truncation_n_max(self.cat.alpha().norm())
    }

    /// `f = ⟨α|−α⟩^{1−μ} = exp(−2|α|²(1−μ))`, the factor on every interference term.
    pub fn interference_factor(&self) -> f64 {
        ((1.0 - self.mu) * log_overlap(self.cat.alpha(), -self.cat.alpha())).exp()
    }
}

/// `ln⟨a|b⟩` for the real, positive overlaps of the `±α` family; taking the
/// log directly keeps `⟨α|−α⟩^{1−μ}` finite where the overlap underflows.
pub(crate) fn log_overlap(a: Complex64, b: Complex64) -> f64 {
    (-0.5 * a.norm_sqr() - 0.5 * b.norm_sqr() + a.conj() * b).re
}

/// Relative phase `φ_{jj'}` attached to the dyad `|α_j⟩⟨α_{j'}|`.
pub fn phase_factor(j: usize, jprime: usize, phi: f64) -> Result<f64> {
    for idx in [j, jprime] {
        if !(1..=2).contains(&idx) {
            return Err(Error::PhaseIndex(idx));
        }
    }
    Ok(match j.cmp(&jprime) {
        std::cmp::Ordering::Equal => 0.0,
        std::cmp::Ordering::Greater => phi,
        std::cmp::Ordering::Less => -phi,
    })
}

/// Truncated density matrix in the number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensityMatrix {
    entries: Array2<Complex64>,
}

#[derive(Deserialize)]
struct FockDensityMatrixDoc {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl FockDensityMatrix {
    pub fn from_entries(entries: Array2<Complex64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(Error::DimensionMismatch {
                left: rows,
                right: cols,
            });
        }
        Ok(FockDensityMatrix { entries })
    }

    /// Pure state `|ψ⟩⟨ψ|` from its amplitudes.
    pub fn pure(amplitudes: &[Complex64]) -> Self {
        let dim = amplitudes.len();
        let entries = Array2::from_shape_fn((dim, dim), |(m, n)| amplitudes[m] * amplitudes[n].conj());
        FockDensityMatrix { entries }
    }

    /// `|n⟩⟨n|` in a space of dimension `dim`.
    pub fn number_state(n: usize, dim: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[n] = Complex64::new(1.0, 0.0);
        Self::pure(&amps)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[[m, n]]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.diag().sum()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ ρ_mn ρ_nm = Σ |ρ_mn|² for Hermitian ρ
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max |ρ_mn − conj(ρ_nm)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for m in 0..dim {
            for n in m..dim {
                worst = worst.max((self.entries[[m, n]] - self.entries[[n, m]].conj()).norm());
            }
        }
        worst
    }

    /// Diagonal entries, real parts.
    pub fn populations(&self) -> Vec<f64> {
        self.entries.diag().iter().map(|z| z.re).collect()
    }

    /// `Tr(ρ a†ᵐ aⁿ)` evaluated directly on the matrix.
    pub fn moment(&self, m: usize, n: usize) -> Complex64 {
        // ⟨j| a†ᵐ aⁿ |k⟩ = √(j!/(j−m)!) √(k!/(k−n)!) δ_{j−m, k−n}
        let dim = self.dim();
        let falling = |k: usize, p: usize| -> f64 { ((k - p + 1)..=k).map(|i| (i as f64).sqrt()).product() };
        let mut acc = Complex64::new(0.0, 0.0);
        for k in n..dim {
            let j = k - n + m;
            if j >= dim {
                break;
            }
            acc += self.entries[[k, j]] * falling(j, m) * falling(k, n);
        }
        acc
    }

    /// JSON document `{ "dim": N, "re": [[..]], "im": [[..]] }`, row-major,
    /// 17 significant digits.
    pub fn to_json(&self) -> String {
        let dim = self.dim();
        let block = |part: fn(&Complex64) -> f64| -> String {
            let rows: Vec<String> = (0..dim)
                .map(|m| {
                    let cells: Vec<String> = (0..dim).map(|n| sig17(part(&self.entries[[m, n]]))).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]", rows.join(","))
        };
        format!(
            "{{\"dim\":{dim},\"re\":{},\"im\":{}}}",
            block(|z| z.re),
            block(|z| z.im)
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FockDensityMatrixDoc =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let shape_ok = doc.re.len() == doc.dim
            && doc.im.len() == doc.dim
            && doc.re.iter().chain(doc.im.iter()).all(|row| row.len() == doc.dim);
        if !shape_ok {
            return Err(Error::Format(format!("rows do not form a {0}x{0} matrix", doc.dim)));
        }
        let entries = Array2::from_shape_fn((doc.dim, doc.dim), |(m, n)| {
            Complex64::new(doc.re[m][n], doc.im[m][n])
        });
        Ok(FockDensityMatrix { entries })
    }
}

fn warn_on_trace(rho: &FockDensityMatrix, what: &str) {
    let deviation = (rho.trace().re - 1.0).abs();
    if deviation > TAIL_TOLERANCE {
        log::warn!(
            "{what}: trace deviates from 1 by {deviation:e} at dimension {}; raise the truncation",
            rho.dim()
        );
    }
}

/// Fock vectors of `|√μ α⟩` and `|−√μ α⟩`; the second is the first with
/// exact `(−1)ⁿ` signs so parity cancellations are exact.
fn decayed_components(dc: &DecayedCat, n_max: usize) -> (Vec<Complex64>, Vec<Complex64>) {
    let plus = coherent_fock_vector(dc.decayed_alpha(), n_max);
    let minus = plus
        .iter()
        .enumerate()
        .map(|(n, c)| if n % 2 == 0 { *c } else { -*c })
        .collect();
    (plus, minus)
}

/// Exact decayed state in a number basis truncated at `n_max`.
pub fn density_matrix(dc: &DecayedCat, n_max: usize) -> FockDensityMatrix {
    let cat = dc.cat();
    let (plus, minus) = decayed_components(dc, n_max);
    let components = [&plus, &minus];
    let amplitudes = [cat.alpha(), -cat.alpha()];
    let dim = n_max + 1;
    let mut entries = Array2::<Complex64>::zeros((dim, dim));
    for j in 1..=2 {
        for jp in 1..=2 {
            let phase = phase_factor(j, jp, cat.phi()).expect("indices in range");
            let overlap_power = ((1.0 - dc.mu()) * log_overlap(amplitudes[j - 1], amplitudes[jp - 1])).exp();
            let weight = Complex64::from_polar(cat.norm() * overlap_power, phase);
            let ket = components[j - 1];
            let bra = components[jp - 1];
            for m in 0..dim {
                let km = weight * ket[m];
                for n in 0..dim {
                    entries[[m, n]] += km * bra[n].conj();
                }
            }
        }
    }
    let rho = FockDensityMatrix { entries };
    warn_on_trace(&rho, "density_matrix");
    rho
}

/// Equal mixture `½(|√μα⟩⟨√μα| + |−√μα⟩⟨−√μα|)`: the cat with every
/// interference term removed.
pub fn mixture_reference(dc: &DecayedCat, n_max: usize) -> FockDensityMatrix {
    let (plus, minus) = decayed_components(dc, n_max);
    let dim = n_max + 1;
    let entries = Array2::from_shape_fn((dim, dim), |(m, n)| {
        0.5 * (plus[m] * plus[n].conj() + minus[m] * minus[n].conj())
    });
    let rho = FockDensityMatrix { entries };
    warn_on_trace(&rho, "mixture_reference");
    rho
}

/// Amplitude-damping generator in scaled time.
struct Damping {
    // √((m+1)(n+1)) for the a ρ a† term
    jump: Array2<f64>,
    // (m+n)/2
    decay: Array2<f64>,
}

impl Damping {
    fn new(dim: usize) -> Self {
        Damping {
            jump: Array2::from_shape_fn((dim, dim), |(m, n)| (((m + 1) * (n + 1)) as f64).sqrt()),
            decay: Array2::from_shape_fn((dim, dim), |(m, n)| 0.5 * (m + n) as f64),
        }
    }

    fn apply(&self, rho: &Array2<Complex64>, out: &mut Array2<Complex64>) {
        let dim = rho.nrows();
        for m in 0..dim {
            for n in 0..dim {
                let mut v = -self.decay[[m, n]] * rho[[m, n]];
                if m + 1 < dim && n + 1 < dim {
                    v += self.jump[[m, n]] * rho[[m + 1, n + 1]];
                }
                out[[m, n]] = v;
            }
        }
    }
}

/// Integrates the zero-temperature damping master equation from `rho0` over
/// scaled time `tau_final` in `steps` equal RK4 steps.
///
/// The state is re-symmetrized to `(ρ + ρ†)/2` after every step.
pub fn lindblad_evolve(rho0: &FockDensityMatrix, tau_final: f64, steps: usize) -> Result<FockDensityMatrix> {
    if steps == 0 {
        return Err(Error::ZeroSteps);
    }
    if !(tau_final >= 0.0) || !tau_final.is_finite() {
        return Err(Error::InvalidTau(tau_final));
    }
    let h = tau_final / steps as f64;
    if h > MAX_STEP {
        return Err(Error::StepTooLarge { step: h });
    }
    if tau_final == 0.0 {
        return Ok(rho0.clone());
    }
    let dim = rho0.dim();
    let generator = Damping::new(dim);
    let mut rho = rho0.entries.clone();
    let mut k1 = Array2::zeros((dim, dim));
    let mut k2 = Array2::zeros((dim, dim));
    let mut k3 = Array2::zeros((dim, dim));
    let mut k4 = Array2::zeros((dim, dim));
    for _ in 0..steps {
        generator.apply(&rho, &mut k1);
        let stage = &rho + &(&k1 * (0.5 * h));
        generator.apply(&stage, &mut k2);
        let stage = &rho + &(&k2 * (0.5 * h));
        generator.apply(&stage, &mut k3);
        let stage = &rho + &(&k3 * h);
        generator.apply(&stage, &mut k4);
        rho.zip_mut_with(&k1, |r, k| *r += k * (h / 6.0));
        rho.zip_mut_with(&k2, |r, k| *r += k * (h / 3.0));
        rho.zip_mut_with(&k3, |r, k| *r += k * (h / 3.0));
        rho.zip_mut_with(&k4, |r, k| *r += k * (h / 6.0));
        let adjoint = rho.t().mapv(|z| z.conj());
        rho.zip_mut_with(&adjoint, |r, a| *r = 0.5 * (*r + a));
    }
    Ok(FockDensityMatrix { entries: rho })
}

/// `√Σ|a_mn − b_mn|²`.
pub fn frobenius_distance(a: &FockDensityMatrix, b: &FockDensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(a.entries
        .iter()
        .zip(b.entries.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}
