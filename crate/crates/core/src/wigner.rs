//! Wigner function of the decayed cat, evaluated three independent ways.
//!
//! * [`wigner_closed`]: resummed closed form, two Gaussians plus a fringe term.
//! * [`wigner_series`]: double series in normally ordered moments with an
//!   associated-Laguerre kernel.
//! * [`wigner_parity_oracle`]: displaced-parity expectation on a number-basis
//!   density matrix.

use std::f64::consts::{FRAC_2_PI, LN_2, PI};

use ndarray::Array2;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::cat::TAIL_TOLERANCE;
use crate::decay::{truncation_n_max, DecayedCat, FockDensityMatrix};
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::specfun::{laguerre_column, log_factorial, LogScalar};

/// Largest cutoff tried by [`wigner_series_converged`].
pub const SERIES_CUTOFF_CAP: usize = 200;

/// A phase-space point `β = x + iy`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhasePoint {
    pub x: f64,
    pub y: f64,
}

impl PhasePoint {
    pub fn new(x: f64, y: f64) -> Self {
        PhasePoint { x, y }
    }

    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

impl From<Complex64> for PhasePoint {
    fn from(z: Complex64) -> Self {
        PhasePoint { x: z.re, y: z.im }
    }
}

/// `W(β) = (2A/π)[e^{−2|β−√μα|²} + e^{−2|β+√μα|²} + 2f e^{−2|β|²} cos(φ + 4√μ Im(α*β))]`.
///
/// For real `α` and `sin φ = 0` the fringe term is `2f cos φ cos(4α√μ Im β)`.
pub fn wigner_closed(dc: &DecayedCat, p: PhasePoint) -> f64 {
    let cat = dc.cat();
    let beta = p.beta();
    let centre = dc.decayed_alpha();
    let mixture = (-2.0 * (beta - centre).norm_sqr()).exp() + (-2.0 * (beta + centre).norm_sqr()).exp();
    let fringe_phase = cat.phi() + 4.0 * (centre.conj() * beta).im;
    let fringe = 2.0 * dc.interference_factor() * (-2.0 * beta.norm_sqr()).exp() * fringe_phase.cos();
    FRAC_2_PI * cat.norm() * (mixture + fringe)
}

/// Partial sums of the moment/Laguerre double series over the squares
/// `n, m ≤ c` for each requested cutoff `c` (ascending).
///
/// Terms are grouped by `d = n − m`; the `d < 0` half is the complex
/// conjugate of the `d > 0` half, so `β^{*(n−m)}` never meets a negative power.
fn series_partial_sums(dc: &DecayedCat, p: PhasePoint, cutoffs: &[usize]) -> Vec<f64> {
    let cat = dc.cat();
    let alpha = cat.alpha();
    let beta = p.beta();
    let x = 2.0 * beta.norm_sqr();
    let top = *cutoffs.last().expect("at least one cutoff");
    let overlap = (-2.0 * alpha.norm_sqr()).exp();
    let rotor = Complex64::from_polar(1.0, cat.phi());
    // K(n, m) = 1 + (−1)^{n+m} + e^{−iφ} o (−1)^m + e^{iφ} o (−1)^n
    let kernel = |n: usize, m: usize| -> Complex64 {
        let sn = if n % 2 == 0 { 1.0 } else { -1.0 };
        let sm = if m % 2 == 0 { 1.0 } else { -1.0 };
        Complex64::new(1.0 + sn * sm, 0.0) + overlap * (sm * rotor.conj() + sn * rotor)
    };
    let log_amp = (alpha.norm() * dc.mu().sqrt()).ln();
    let log_beta = beta.norm().ln();
    let arg_alpha = alpha.arg();
    let arg_beta_conj = -beta.arg();

    let mut diagonal = vec![0.0f64; cutoffs.len()];
    let mut off_diagonal = vec![Complex64::new(0.0, 0.0); cutoffs.len()];
    for d in 0..=top {
        if d > 0 && beta.norm() == 0.0 {
            break;
        }
        let lag = laguerre_column(top - d, d as u32, x);
        let beta_part = if d == 0 {
            LogScalar::ONE
        } else {
            LogScalar::from_polar(d as f64 * log_beta, d as f64 * arg_beta_conj)
        };
        for (m, &l) in lag.iter().enumerate() {
            let n = m + d;
            let k = kernel(n, m);
            if k == Complex64::new(0.0, 0.0) || l == 0.0 {
                continue;
            }
            // α^n α*^m μ^{(n+m)/2} 2^{n+1} / n!
            let power = if n + m == 0 {
                LogScalar::from_polar(LN_2, 0.0)
            } else if alpha.norm() == 0.0 {
                LogScalar::ZERO
            } else {
                LogScalar::from_polar(
                    (n + m) as f64 * log_amp + (n + 1) as f64 * LN_2 - log_factorial(n as u64),
                    (n as f64 - m as f64) * arg_alpha,
                )
            };
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let term = (power * beta_part * LogScalar::from_linear(k * (sign * l))).to_linear();
            for (slot, &c) in cutoffs.iter().enumerate() {
                if n <= c {
                    if d == 0 {
                        diagonal[slot] += term.re;
                    } else {
                        off_diagonal[slot] += term;
                    }
                }
            }
        }
    }
    let prefactor = cat.norm() * (-x).exp() / PI;
    diagonal
        .iter()
        .zip(off_diagonal.iter())
        .map(|(d0, off)| prefactor * (d0 + 2.0 * off.re))
        .collect()
}

/// Series value truncated at `n, m ≤ cutoff`.
///
/// Fails with [`Error::SeriesNotConverged`] when extending the cutoff by 10
/// moves the value by more than 1e-8.
pub fn wigner_series(dc: &DecayedCat, p: PhasePoint, cutoff: usize) -> Result<f64> {
    let cutoff = cutoff.max(1);
    let sums = series_partial_sums(dc, p, &[cutoff, cutoff + 10]);
    let delta = (sums[1] - sums[0]).abs();
    if !(delta <= 1e-8) {
        return Err(Error::SeriesNotConverged { cutoff, delta });
    }
    Ok(sums[0])
}

/// Series value with the cutoff doubled from 25 until successive values
/// agree within 1e-9, up to [`SERIES_CUTOFF_CAP`]. Returns the value and the
/// cutoff used.
pub fn wigner_series_converged(dc: &DecayedCat, p: PhasePoint) -> Result<(f64, usize)> {
    let mut cutoff = 25;
    let mut previous = series_partial_sums(dc, p, &[cutoff])[0];
    loop {
        let next_cutoff = (cutoff * 2).min(SERIES_CUTOFF_CAP);
        let next = series_partial_sums(dc, p, &[next_cutoff])[0];
        let delta = (next - previous).abs();
        if delta < 1e-9 {
            return Ok((next, next_cutoff));
        }
        if next_cutoff == SERIES_CUTOFF_CAP {
            return Err(Error::SeriesNotConverged {
                cutoff: next_cutoff,
                delta,
            });
        }
        cutoff = next_cutoff;
        previous = next;
    }
}

/// Displaced-parity value together with the probability mass the displaced
/// state leaks past the enlarged basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityEvaluation {
    pub value: f64,
    pub tail_mass: f64,
}

/// Rows `0..=rows-1` of `D(γ)` restricted to columns `0..cols`.
fn displacement_block(gamma: Complex64, rows: usize, cols: usize) -> Array2<Complex64> {
    let x = gamma.norm_sqr();
    let mut out = Array2::zeros((rows, cols));
    if x == 0.0 {
        for i in 0..rows.min(cols) {
            out[[i, i]] = Complex64::new(1.0, 0.0);
        }
        return out;
    }
    let log_r = gamma.norm().ln();
    // ⟨k|D|n⟩, k ≥ n: √(n!/k!) γ^{k−n} e^{−x/2} L_n^{k−n}(x)
    for d in 0..rows {
        let n_top = cols.min(rows - d);
        if n_top == 0 {
            break;
        }
        let lag = laguerre_column(n_top - 1, d as u32, x);
        for (n, &l) in lag.iter().enumerate() {
            let k = n + d;
            let mag = 0.5 * (log_factorial(n as u64) - log_factorial(k as u64)) + d as f64 * log_r - 0.5 * x;
            let v = LogScalar::from_polar(mag, d as f64 * gamma.arg()) * LogScalar::from_linear(Complex64::new(l, 0.0));
            out[[k, n]] = v.to_linear();
        }
    }
    // k < n: √(k!/n!) (−γ*)^{n−k} e^{−x/2} L_k^{n−k}(x)
    let minus_conj = -gamma.conj();
    for d in 1..cols {
        let k_top = rows.min(cols - d);
        if k_top == 0 {
            break;
        }
        let lag = laguerre_column(k_top - 1, d as u32, x);
        for (k, &l) in lag.iter().enumerate() {
            let n = k + d;
            let mag = 0.5 * (log_factorial(k as u64) - log_factorial(n as u64)) + d as f64 * log_r - 0.5 * x;
            let v = LogScalar::from_polar(mag, d as f64 * minus_conj.arg()) * LogScalar::from_linear(Complex64::new(l, 0.0));
            out[[k, n]] = v.to_linear();
        }
    }
    out
}

/// `W(β) = (2/π) Σ_k (−1)^k ⟨k|D(−β) ρ D(β)|k⟩` with the displaced state
/// represented in a basis enlarged by the cutoff rule for `|β|`.
pub fn wigner_parity_detailed(rho: &FockDensityMatrix, p: PhasePoint) -> ParityEvaluation {
    let beta = p.beta();
    let cols = rho.dim();
    let rows = cols + truncation_n_max(beta.norm());
    let shift = displacement_block(-beta, rows, cols);
    let entries = rho.entries();
    let mut parity = 0.0;
    let mut kept = 0.0;
    let mut scratch = vec![Complex64::new(0.0, 0.0); cols];
    for k in 0..rows {
        let row = shift.row(k);
        // (ρ D†)_{·k} then contract with row k of D
        for (m, slot) in scratch.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in 0..cols {
                acc += entries[[m, n]] * row[n].conj();
            }
            *slot = acc;
        }
        let pop: f64 = row.iter().zip(scratch.iter()).map(|(d, s)| (d * s).re).sum();
        kept += pop;
        parity += if k % 2 == 0 { pop } else { -pop };
    }
    let tail_mass = rho.trace().re - kept;
    if tail_mass.abs() > TAIL_TOLERANCE {
        log::warn!("displaced state leaks {tail_mass:e} past dimension {rows} at β = {beta}");
    }
    ParityEvaluation {
        value: FRAC_2_PI * parity,
        tail_mass,
    }
}

/// Displaced-parity Wigner value of an arbitrary number-basis state.
pub fn wigner_parity_oracle(rho: &FockDensityMatrix, p: PhasePoint) -> f64 {
    wigner_parity_detailed(rho, p).value
}

/// Uniform raster bounds and resolution; endpoints are sampled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub ny: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            x_min: -4.0,
            x_max: 4.0,
            nx: 129,
            y_min: -4.0,
            y_max: 4.0,
            ny: 129,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let bounds = [self.x_min, self.x_max, self.y_min, self.y_max];
        if bounds.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points per axis, got {}x{}", self.nx, self.ny)));
        }
        if !(self.x_max > self.x_min && self.y_max > self.y_min) {
            return Err(Error::InvalidGrid("max must exceed min on both axes".into()));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * self.dy()
    }
}

/// Sampled Wigner function; `values[[j, i]]` sits at `(x(i), y(j))`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    pub spec: GridSpec,
    pub values: Array2<f64>,
}

impl WignerGrid {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Interior grid points that dominate their 8 neighbours and reach at
    /// least `fraction` of the global maximum, in row-major order.
    pub fn local_maxima(&self, fraction: f64) -> Vec<PhasePoint> {
        let (ny, nx) = self.values.dim();
        let floor = fraction * self.max();
        let mut peaks = Vec::new();
        for j in 1..ny.saturating_sub(1) {
            for i in 1..nx.saturating_sub(1) {
                let v = self.values[[j, i]];
                if v < floor {
                    continue;
                }
                let dominant = (j - 1..=j + 1)
                    .flat_map(|jj| (i - 1..=i + 1).map(move |ii| (jj, ii)))
                    .filter(|&(jj, ii)| (jj, ii) != (j, i))
                    .all(|(jj, ii)| v >= self.values[[jj, ii]]);
                if dominant {
                    peaks.push(PhasePoint::new(self.spec.x(i), self.spec.y(j)));
                }
            }
        }
        peaks
    }

    /// CSV with header `x,y,w`, one row per sample, y-major.
    pub fn to_csv(&self) -> String {
        let (ny, nx) = self.values.dim();
        let mut out = String::with_capacity(ny * nx * 72 + 6);
        out.push_str("x,y,w\n");
        for j in 0..ny {
            let y = sig17(self.spec.y(j));
            for i in 0..nx {
                out.push_str(&sig17(self.spec.x(i)));
                out.push(',');
                out.push_str(&y);
                out.push(',');
                out.push_str(&sig17(self.values[[j, i]]));
                out.push('\n');
            }
        }
        out
    }

    /// `{ "bounds": {..}, "nx": .., "ny": .., "values": [[row y0], ..] }`.
    pub fn to_json(&self) -> String {
        let s = &self.spec;
        let rows: Vec<String> = self
            .values
            .rows()
            .into_iter()
            .map(|row| format!("[{}]", row.iter().map(|v| sig17(*v)).collect::<Vec<_>>().join(",")))
            .collect();
        format!(
            "{{\"bounds\":{{\"x_min\":{},\"x_max\":{},\"y_min\":{},\"y_max\":{}}},\"nx\":{},\"ny\":{},\"values\":[{}]}}",
            sig17(s.x_min),
            sig17(s.x_max),
            sig17(s.y_min),
            sig17(s.y_max),
            s.nx,
            s.ny,
            rows.join(",")
        )
    }
}

/// Rasterizes [`wigner_closed`]; rows are evaluated in parallel and each
/// sample depends only on its own coordinates.
pub fn wigner_grid(dc: &DecayedCat, spec: &GridSpec) -> Result<WignerGrid> {
    spec.validate()?;
    let rows: Vec<Vec<f64>> = (0..spec.ny)
        .into_par_iter()
        .map(|j| {
            let y = spec.y(j);
            (0..spec.nx).map(|i| wigner_closed(dc, PhasePoint::new(spec.x(i), y))).collect()
        })
        .collect();
    let values = Array2::from_shape_fn((spec.ny, spec.nx), |(j, i)| rows[j][i]);
    Ok(WignerGrid { spec: *spec, values })
}

/// `Σ W · Δx · Δy`.
pub fn grid_integral(g: &WignerGrid) -> f64 {
    g.values.sum() * g.spec.dx() * g.spec.dy()
}

/// `Σ max(0, −W) · Δx · Δy`.
pub fn negativity_volume(g: &WignerGrid) -> f64 {
    g.values.iter().map(|v| (-v).max(0.0)).sum::<f64>() * g.spec.dx() * g.spec.dy()
}

/// Fringe amplitude at the origin relative to a mixture peak, read off the
/// closed form term by term: `2f|cos φ| / (1 + e^{−8μ|α|²})`.
pub fn interference_contrast(dc: &DecayedCat) -> f64 {
    let fringe = 2.0 * dc.interference_factor() * dc.cat().phi().cos().abs();
    let peak = 1.0 + (-8.0 * dc.decayed_alpha().norm_sqr()).exp();
    fringe / peak
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::CatState;
    use crate::decay::density_matrix;
    use approx::assert_relative_eq;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn ecs(alpha: f64, tau: f64) -> DecayedCat {
        DecayedCat::new(CatState::even(re(alpha)).unwrap(), tau).unwrap()
    }

    fn ocs(alpha: f64, tau: f64) -> DecayedCat {
        DecayedCat::new(CatState::odd(re(alpha)).unwrap(), tau).unwrap()
    }

    #[test]
    fn closed_form_at_origin() {
        for a in [0.3, 1.0, 2.0, 3.5] {
            assert_relative_eq!(wigner_closed(&ecs(a, 0.0), PhasePoint::new(0.0, 0.0)), FRAC_2_PI, epsilon = 1e-15);
        }
        assert_relative_eq!(wigner_closed(&ocs(1.0, 0.0), PhasePoint::new(0.0, 0.0)), -FRAC_2_PI, epsilon = 1e-15);
    }

    #[test]
    fn long_decay_collapses_to_vacuum() {
        let dc = ecs(1.0, 20.0);
        for p in [PhasePoint::new(0.0, 0.0), PhasePoint::new(0.4, -0.9)] {
            let vacuum = FRAC_2_PI * (-2.0 * p.beta().norm_sqr()).exp();
            assert!((wigner_closed(&dc, p) - vacuum).abs() < 1e-7);
        }
    }

    #[test]
    fn series_examples() {
        let dc = ecs(1.0, 0.3);
        let p = PhasePoint::new(0.5, 0.5);
        assert!((wigner_series(&dc, p, 60).unwrap() - wigner_closed(&dc, p)).abs() < 1e-9);
        let origin = PhasePoint::new(0.0, 0.0);
        assert!((wigner_series(&ecs(1.0, 0.0), origin, 60).unwrap() - FRAC_2_PI).abs() < 1e-9);
        let vac = ecs(0.0, 0.4);
        let q = PhasePoint::new(0.7, -0.2);
        let expected = FRAC_2_PI * (-2.0 * q.beta().norm_sqr()).exp();
        assert_relative_eq!(wigner_series(&vac, q, 1).unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn series_reports_non_convergence() {
        let dc = ecs(2.0, 0.0);
        let p = PhasePoint::new(1.0, 1.0);
        assert!(matches!(wigner_series(&dc, p, 3), Err(Error::SeriesNotConverged { cutoff: 3, .. })));
        let (v, c) = wigner_series_converged(&dc, p).unwrap();
        assert!(c <= SERIES_CUTOFF_CAP);
        assert!((v - wigner_closed(&dc, p)).abs() < 1e-9);
    }

    #[test]
    fn parity_examples() {
        let origin = PhasePoint::new(0.0, 0.0);
        let vac = FockDensityMatrix::number_state(0, 6);
        let one = FockDensityMatrix::number_state(1, 6);
        assert_relative_eq!(wigner_parity_oracle(&vac, origin), FRAC_2_PI, epsilon = 1e-15);
        assert_relative_eq!(wigner_parity_oracle(&one, origin), -FRAC_2_PI, epsilon = 1e-15);
        let dc = ecs(2.0, 0.3);
        let rho = density_matrix(&dc, dc.default_n_max());
        let p = PhasePoint::new(1.0, 0.3);
        let eval = wigner_parity_detailed(&rho, p);
        assert!((eval.value - wigner_closed(&dc, p)).abs() < 1e-8);
        assert!(eval.tail_mass.abs() < 1e-10);
    }

    #[test]
    fn displacement_of_vacuum_is_coherent() {
        let gamma = Complex64::new(0.6, -1.1);
        let d = displacement_block(gamma, 30, 4);
        for k in 0..30 {
            let expected = crate::specfun::coherent_fock_amplitude(gamma, k as u64);
            assert!((d[[k, 0]] - expected).norm() < 1e-14, "k = {k}");
        }
    }

    #[test]
    fn grid_spec_validation() {
        assert!(GridSpec::default().validate().is_ok());
        let bad = GridSpec { nx: 1, ..GridSpec::default() };
        assert!(matches!(bad.validate(), Err(Error::InvalidGrid(_))));
        let bad = GridSpec { x_max: -5.0, ..GridSpec::default() };
        assert!(bad.validate().is_err());
        let bad = GridSpec { y_min: f64::NAN, ..GridSpec::default() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn tiny_grid_is_pure_sampling() {
        let dc = ecs(1.0, 0.3);
        let spec = GridSpec { x_min: -1.0, x_max: 1.0, nx: 2, y_min: 0.0, y_max: 0.5, ny: 2 };
        let g = wigner_grid(&dc, &spec).unwrap();
        assert_eq!(g.values.len(), 4);
        assert_eq!(g.values[[1, 0]], wigner_closed(&dc, PhasePoint::new(-1.0, 0.5)));
        assert_eq!(g.values[[0, 1]], wigner_closed(&dc, PhasePoint::new(1.0, 0.0)));
    }

    #[test]
    fn integrals_on_default_grid() {
        let spec = GridSpec::default();
        let vac = wigner_grid(&ecs(0.0, 0.0), &spec).unwrap();
        assert!((grid_integral(&vac) - 1.0).abs() < 1e-4);
        assert_eq!(negativity_volume(&vac), 0.0);
        let odd = wigner_grid(&ocs(1.0, 0.0), &spec).unwrap();
        assert!((grid_integral(&odd) - 1.0).abs() < 5e-3);
        assert!(negativity_volume(&odd) > 0.0);
        let even = wigner_grid(&ecs(1.0, 0.3), &spec).unwrap();
        assert!((grid_integral(&even) - 1.0).abs() < 5e-3);
    }

    #[test]
    fn constant_grid_integral() {
        let spec = GridSpec { x_min: 0.0, x_max: 2.0, nx: 3, y_min: 0.0, y_max: 1.0, ny: 2 };
        let g = WignerGrid { spec, values: Array2::from_elem((2, 3), 0.25) };
        // six samples with cell area 1·1
        assert_relative_eq!(grid_integral(&g), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn contrast_examples() {
        let yss = DecayedCat::new(CatState::yurke_stoler(re(1.0)).unwrap(), 0.2).unwrap();
        assert!(interference_contrast(&yss) < 1e-15);
        assert_relative_eq!(interference_contrast(&ecs(1.0, 0.0)), 2.0 / (1.0 + (-8.0f64).exp()), epsilon = 1e-15);
        let dc = ecs(2.0, 0.3);
        let expected = 2.0 * dc.interference_factor() / (1.0 + (-8.0 * dc.mu() * 4.0).exp());
        assert_relative_eq!(interference_contrast(&dc), expected, epsilon = 1e-15);
        assert!((interference_contrast(&dc) - 0.2516).abs() < 1e-3);
    }

    #[test]
    fn exports() {
        let dc = ecs(1.0, 0.3);
        let spec = GridSpec { x_min: -1.0, x_max: 1.0, nx: 3, y_min: -1.0, y_max: 1.0, ny: 2 };
        let g = wigner_grid(&dc, &spec).unwrap();
        let csv = g.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "x,y,w");
        assert_eq!(lines.len(), 7);
        let first: Vec<f64> = lines[1].split(',').map(|s| s.parse().unwrap()).collect();
        assert_eq!(first, vec![-1.0, -1.0, g.values[[0, 0]]]);
        let json: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(json["nx"], 3);
        assert_eq!(json["values"][1][2].as_f64().unwrap(), g.values[[1, 2]]);
    }
}
