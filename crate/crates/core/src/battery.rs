//! Cross-checks between every analytic formula and its independent oracle.
//!
//! Each check records the worst error seen against its tolerance. The battery
//! is deterministic: the random phase-space points come from a fixed-seed
//! generator.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cat::CatState;
use crate::decay::{density_matrix, frobenius_distance, lindblad_evolve, DecayedCat};
use crate::observables::{
    decoherence_threshold_alpha, normally_ordered_moment, photon_number_distribution, poisson_pmf,
    squeezing_ecs_closed, squeezing_factors, SqueezingFactors, DEFAULT_DECOHERENCE_EPSILON,
};
use crate::specfun::{coherent_fock_amplitude, laguerre_assoc, log_factorial};
use crate::wigner::{grid_integral, wigner_closed, wigner_grid, wigner_parity_detailed, wigner_series, GridSpec, PhasePoint};

/// RK4 step used when the battery integrates the master equation.
pub const BATTERY_STEP: f64 = 1e-3;

/// Cutoff used for the series leg of the Wigner comparison.
pub const BATTERY_SERIES_CUTOFF: usize = 80;

const BATTERY_SEED: u64 = 0xca7d_eca7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckGroup {
    Specfun,
    Dynamics,
    Observables,
    Wigner,
}

impl CheckGroup {
    pub const ALL: [CheckGroup; 4] = [
        CheckGroup::Specfun,
        CheckGroup::Dynamics,
        CheckGroup::Observables,
        CheckGroup::Wigner,
    ];
}

impl fmt::Display for CheckGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckGroup::Specfun => "specfun",
            CheckGroup::Dynamics => "dynamics",
            CheckGroup::Observables => "observables",
            CheckGroup::Wigner => "wigner",
        })
    }
}

impl FromStr for CheckGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "specfun" => Ok(CheckGroup::Specfun),
            "dynamics" => Ok(CheckGroup::Dynamics),
            "observables" => Ok(CheckGroup::Observables),
            "wigner" => Ok(CheckGroup::Wigner),
            other => Err(format!(
                "unknown check group '{other}' (expected specfun, dynamics, observables or wigner)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub group: CheckGroup,
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct BatteryConfig {
    /// Groups to run; empty means all.
    pub groups: Vec<CheckGroup>,
    /// Replaces the cutoff rule everywhere a number basis is built.
    pub n_max_override: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct BatteryReport {
    pub checks: Vec<CheckResult>,
}

impl BatteryReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// The 3 × 3 amplitude/phase product used throughout the battery.
pub fn battery_cats() -> Vec<CatState> {
    let mut out = Vec::new();
    for alpha in [0.5, 1.0, 2.0] {
        for phi in [0.0, PI, FRAC_PI_2] {
            out.push(CatState::new(Complex64::new(alpha, 0.0), phi).expect("battery cats are non-degenerate"));
        }
    }
    out
}

/// 25 fixed pseudo-random points in `[-4, 4]²`.
pub fn battery_points() -> Vec<PhasePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(BATTERY_SEED);
    (0..25)
        .map(|_| PhasePoint::new(rng.random_range(-4.0..=4.0), rng.random_range(-4.0..=4.0)))
        .collect()
}

/// RK4 step count for `tau` at [`BATTERY_STEP`].
pub fn battery_steps(tau: f64) -> usize {
    ((tau / BATTERY_STEP).round() as usize).max(1)
}

struct Ctx {
    n_max_override: Option<usize>,
}

impl Ctx {
    fn n_max(&self, dc: &DecayedCat) -> usize {
        self.n_max_override.unwrap_or_else(|| dc.default_n_max())
    }
}

fn check(group: CheckGroup, name: &str, max_error: f64, tolerance: f64, detail: String) -> CheckResult {
    CheckResult {
        group,
        name: name.to_string(),
        max_error,
        tolerance,
        passed: max_error < tolerance,
        detail,
    }
}

fn decayed(cat: CatState, tau: f64) -> DecayedCat {
    DecayedCat::new(cat, tau).expect("battery decay times are valid")
}

fn describe(dc: &DecayedCat) -> String {
    format!("alpha={} phi={:.4} tau={}", dc.cat().alpha(), dc.cat().phi(), dc.tau())
}

pub fn run_battery(config: &BatteryConfig) -> BatteryReport {
    let ctx = Ctx {
        n_max_override: config.n_max_override,
    };
    let selected = |g: CheckGroup| config.groups.is_empty() || config.groups.contains(&g);
    let mut checks = Vec::new();
    if selected(CheckGroup::Specfun) {
        checks.extend(specfun_checks(&ctx));
    }
    if selected(CheckGroup::Dynamics) {
        checks.extend(dynamics_checks(&ctx));
    }
    if selected(CheckGroup::Observables) {
        checks.extend(observables_checks(&ctx));
    }
    if selected(CheckGroup::Wigner) {
        checks.extend(wigner_checks(&ctx));
    }
    BatteryReport { checks }
}

fn specfun_checks(ctx: &Ctx) -> Vec<CheckResult> {
    let g = CheckGroup::Specfun;
    let mut out = Vec::new();

    let mut cumulative = 0.0f64;
    let mut worst = 0.0f64;
    for n in 1..=170u64 {
        cumulative += (n as f64).ln();
        worst = worst.max(((log_factorial(n) - cumulative) / cumulative).abs());
    }
    out.push(check(g, "log_factorial vs cumulative sum", worst, 1e-13, "n = 1..170".into()));

    // explicit sum Σ_i (−1)^i C(m+k, m−i) x^i / i!
    let mut worst = 0.0f64;
    for m in 0..=20u32 {
        for k in 0..=10i64 {
            for x in [0.0, 0.5, 2.0, 7.5] {
                let mut sum = 0.0;
                let mut scale = 0.0;
                for i in 0..=m as u64 {
                    let log_c = log_factorial(m as u64 + k as u64) - log_factorial(m as u64 - i) - log_factorial(k as u64 + i);
                    let mag = if i == 0 { log_c.exp() } else { (log_c + i as f64 * f64::ln(x) - log_factorial(i)).exp() };
                    let term = if i % 2 == 0 { mag } else { -mag };
                    sum += term;
                    scale += mag;
                }
                let rec = laguerre_assoc(m, k, x).expect("k >= 0");
                worst = worst.max((rec - sum).abs() / scale.max(1.0));
            }
        }
    }
    out.push(check(g, "laguerre recurrence vs explicit sum", worst, 1e-9, "m <= 20, k <= 10".into()));

    let mut worst = 0.0f64;
    let mut detail = String::new();
    for a in [0.5, 1.0, 2.0, 3.0] {
        let alpha = Complex64::new(a, 0.0);
        let n_max = ctx.n_max_override.unwrap_or_else(|| crate::decay::truncation_n_max(a));
        let mass: f64 = (0..=n_max as u64).map(|n| coherent_fock_amplitude(alpha, n).norm_sqr()).sum();
        let err = (mass - 1.0).abs();
        if err > worst {
            worst = err;
            detail = format!("|alpha|={a} n_max={n_max} tail mass {err:e}");
        }
    }
    out.push(check(g, "coherent completeness at truncation", worst, 1e-12, detail));
    out
}

fn dynamics_checks(ctx: &Ctx) -> Vec<CheckResult> {
    let g = CheckGroup::Dynamics;
    let mut out = Vec::new();
    let mut worst_solution = (0.0f64, String::new());
    let mut worst_trace = (0.0f64, String::new());
    let mut worst_herm = 0.0f64;
    let mut worst_energy = (0.0f64, String::new());
    for cat in battery_cats() {
        let start = decayed(cat, 0.0);
        let n_max = ctx.n_max(&start);
        let rho0 = density_matrix(&start, n_max);
        let n0 = rho0.moment(1, 1).re;
        for tau in [0.1, 0.3, 1.0] {
            let dc = decayed(cat, tau);
            let exact = density_matrix(&dc, n_max);
            let evolved = lindblad_evolve(&rho0, tau, battery_steps(tau)).expect("battery step within guard");
            let d = frobenius_distance(&evolved, &exact).expect("same dimension");
            if d > worst_solution.0 {
                worst_solution = (d, describe(&dc));
            }
            let t = (exact.trace().re - 1.0).abs().max((evolved.trace().re - 1.0).abs());
            if t > worst_trace.0 {
                worst_trace = (t, format!("{} dim={}", describe(&dc), exact.dim()));
            }
            worst_herm = worst_herm.max(exact.hermiticity_error()).max(evolved.hermiticity_error());
            let e = (exact.moment(1, 1).re - dc.mu() * n0).abs();
            if e > worst_energy.0 {
                worst_energy = (e, describe(&dc));
            }
        }
    }
    out.push(check(g, "master-equation integration vs exact solution", worst_solution.0, 1e-8, worst_solution.1));
    out.push(check(g, "unit trace of both constructions", worst_trace.0, 1e-10, worst_trace.1));
    out.push(check(g, "hermiticity of both constructions", worst_herm, 1e-12, String::new()));
    out.push(check(g, "energy decays as mu", worst_energy.0, 1e-10, worst_energy.1));

    let mut worst = (0.0f64, String::new());
    for cat in battery_cats().into_iter().step_by(2) {
        let (t1, t2) = (0.2, 0.3);
        let first = decayed(cat, t1);
        let n_max = ctx.n_max(&first);
        let mid = density_matrix(&first, n_max);
        let evolved = lindblad_evolve(&mid, t2, battery_steps(t2)).expect("battery step within guard");
        let exact = density_matrix(&decayed(cat, t1 + t2), n_max);
        let d = frobenius_distance(&evolved, &exact).expect("same dimension");
        if d > worst.0 {
            worst = (d, describe(&first));
        }
    }
    out.push(check(g, "semigroup property", worst.0, 1e-8, worst.1));
    out
}

fn observables_checks(ctx: &Ctx) -> Vec<CheckResult> {
    let g = CheckGroup::Observables;
    let mut out = Vec::new();
    let mut cats = battery_cats();
    cats.push(CatState::new(Complex64::new(0.9, 1.3), 0.4).expect("non-degenerate"));

    let mut worst_diag = (0.0f64, String::new());
    let mut worst_norm = (0.0f64, String::new());
    let mut worst_var = (0.0f64, String::new());
    let mut worst_scaling = 0.0f64;
    for cat in &cats {
        let s0 = squeezing_factors(&decayed(*cat, 0.0));
        for tau in [0.0, 0.3, 1.0] {
            let dc = decayed(*cat, tau);
            let n_max = ctx.n_max(&dc);
            let rho = density_matrix(&dc, n_max);
            let pnd = match photon_number_distribution(&dc, n_max) {
                Ok(p) => p,
                Err(e) => {
                    out.push(check(g, "photon-number distribution", f64::INFINITY, 0.0, e.to_string()));
                    continue;
                }
            };
            let diag = rho.populations();
            let e = pnd.probs.iter().zip(diag.iter()).map(|(p, d)| (p - d).abs()).fold(0.0, f64::max);
            if e > worst_diag.0 {
                worst_diag = (e, describe(&dc));
            }
            let e = (pnd.total() - 1.0).abs();
            if e > worst_norm.0 {
                worst_norm = (e, format!("{} n_max={n_max}", describe(&dc)));
            }
            let sq = squeezing_factors(&dc);
            let fock = SqueezingFactors::from_density_matrix(&rho);
            let e = (sq.s1 - fock.s1).abs().max((sq.s2 - fock.s2).abs());
            if e > worst_var.0 {
                worst_var = (e, describe(&dc));
            }
            worst_scaling = worst_scaling
                .max((sq.s1 - dc.mu() * s0.s1).abs())
                .max((sq.s2 - dc.mu() * s0.s2).abs());
        }
    }
    out.push(check(g, "P(n) vs Fock diagonal", worst_diag.0, 1e-10, worst_diag.1));
    out.push(check(g, "P(n) normalization", worst_norm.0, 1e-10, worst_norm.1));
    out.push(check(g, "squeezing vs Fock variances", worst_var.0, 1e-9, worst_var.1));
    out.push(check(g, "squeezing decays as mu", worst_scaling, 1e-10, String::new()));

    let mut worst = 0.0f64;
    for alpha in [0.5, 1.0, 1.5, 2.0] {
        for i in 0..=30 {
            let tau = 0.1 * i as f64;
            let closed = squeezing_ecs_closed(alpha, tau);
            let general = squeezing_factors(&decayed(CatState::even(Complex64::new(alpha, 0.0)).expect("valid"), tau));
            worst = worst.max((closed.s1 - general.s1).abs()).max((closed.s2 - general.s2).abs());
        }
    }
    out.push(check(g, "even-cat closed squeezing vs moments", worst, 1e-12, String::new()));

    let mut worst = 0.0f64;
    for alpha in [0.5, 1.0, 2.0] {
        for tau in [0.0, 0.1, 1.0] {
            let dc = decayed(CatState::yurke_stoler(Complex64::new(alpha, 0.0)).expect("valid"), tau);
            let n_max = ctx.n_max(&dc);
            if let Ok(p) = photon_number_distribution(&dc, n_max) {
                let lambda = dc.mu() * alpha * alpha;
                for (n, v) in p.probs.iter().enumerate() {
                    worst = worst.max((v - poisson_pmf(lambda, n as u64)).abs());
                }
            }
        }
    }
    out.push(check(g, "Yurke-Stoler P(n) is Poissonian", worst, 1e-12, String::new()));

    let mut worst = 0.0f64;
    let mut detail = String::new();
    for cat in &cats {
        let dc = decayed(*cat, 0.0);
        let rho = density_matrix(&dc, ctx.n_max(&dc));
        for (m, n) in [(1, 1), (0, 2), (2, 0), (0, 1), (2, 2)] {
            let e = (normally_ordered_moment(&dc, m as u32, n as u32) - rho.moment(m, n)).norm();
            if e > worst {
                worst = e;
                detail = format!("{} moment ({m},{n})", describe(&dc));
            }
        }
    }
    out.push(check(g, "normally ordered moments vs Fock trace", worst, 1e-9, detail));

    let grid: Vec<f64> = (1..=10).map(f64::from).collect();
    let found: Vec<Option<f64>> = [0.1, 0.3, 0.8]
        .iter()
        .map(|&tau| decoherence_threshold_alpha(tau, DEFAULT_DECOHERENCE_EPSILON, &grid))
        .collect();
    let ok = found == [Some(5.0), Some(3.0), Some(2.0)];
    out.push(check(
        g,
        "decoherence thresholds at default epsilon",
        if ok { 0.0 } else { 1.0 },
        0.5,
        format!("{found:?}"),
    ));
    out
}

fn wigner_checks(ctx: &Ctx) -> Vec<CheckResult> {
    let g = CheckGroup::Wigner;
    let mut out = Vec::new();
    let points = battery_points();
    let mut worst_series = (0.0f64, String::new());
    let mut worst_parity = (0.0f64, String::new());
    let mut worst_tail = (0.0f64, String::new());
    let mut series_failure = None;
    let mut worst_integral = (0.0f64, String::new());
    let mut worst_bound = 0.0f64;
    for cat in battery_cats() {
        for tau in [0.0, 0.3, 1.0] {
            let dc = decayed(cat, tau);
            let rho = density_matrix(&dc, ctx.n_max(&dc));
            for p in &points {
                let closed = wigner_closed(&dc, *p);
                match wigner_series(&dc, *p, BATTERY_SERIES_CUTOFF) {
                    Ok(s) => {
                        let e = (s - closed).abs();
                        if e > worst_series.0 {
                            worst_series = (e, format!("{} beta={}", describe(&dc), p.beta()));
                        }
                    }
                    Err(e) => series_failure = Some(format!("{} beta={}: {e}", describe(&dc), p.beta())),
                }
                let parity = wigner_parity_detailed(&rho, *p);
                let e = (parity.value - closed).abs();
                if e > worst_parity.0 {
                    worst_parity = (e, format!("{} beta={}", describe(&dc), p.beta()));
                }
                if parity.tail_mass.abs() > worst_tail.0 {
                    worst_tail = (parity.tail_mass.abs(), format!("{} dim={} beta={}", describe(&dc), rho.dim(), p.beta()));
                }
            }
            let grid = wigner_grid(&dc, &GridSpec::default()).expect("default grid is valid");
            let e = (grid_integral(&grid) - 1.0).abs();
            if e > worst_integral.0 {
                worst_integral = (e, describe(&dc));
            }
            worst_bound = worst_bound.max(grid.values.iter().map(|v| v.abs() - FRAC_2_PI).fold(f64::NEG_INFINITY, f64::max));
        }
    }
    match series_failure {
        Some(msg) => out.push(check(g, "closed form vs series", f64::INFINITY, 1e-8, msg)),
        None => out.push(check(g, "closed form vs series", worst_series.0, 1e-8, worst_series.1)),
    }
    out.push(check(g, "closed form vs displaced parity", worst_parity.0, 1e-8, worst_parity.1));
    out.push(check(g, "displaced-state truncation", worst_tail.0, 1e-10, worst_tail.1));
    out.push(check(g, "grid integral", worst_integral.0, 5e-3, worst_integral.1));
    out.push(check(g, "|W| <= 2/pi", worst_bound.max(0.0), 1e-12, String::new()));

    let origin = PhasePoint::new(0.0, 0.0);
    let mut worst = 0.0f64;
    for a in [0.5, 1.0, 2.0] {
        let even = decayed(CatState::even(Complex64::new(a, 0.0)).expect("valid"), 0.0);
        let odd = decayed(CatState::odd(Complex64::new(a, 0.0)).expect("valid"), 0.0);
        worst = worst
            .max((wigner_closed(&even, origin) - FRAC_2_PI).abs())
            .max((wigner_closed(&odd, origin) + FRAC_2_PI).abs());
    }
    out.push(check(g, "W(0) = +-2/pi for even/odd cats", worst, 1e-10, String::new()));
    out
}
