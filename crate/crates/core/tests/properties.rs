use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use catdecay::specfun::coherent_overlap;
use catdecay::wigner::wigner_series_converged;
use catdecay::{
    density_matrix, frobenius_distance, interference_contrast, interference_decay_factor, lindblad_evolve,
    mean_photon_number, negativity_volume, photon_number_distribution, squeezing_factors, wigner_closed,
    wigner_grid, wigner_parity_oracle, CatState, Complex64, DecayedCat, FockDensityMatrix, GridSpec, PhasePoint,
    SqueezingFactors,
};
use proptest::prelude::*;

const PHASES: [f64; 3] = [0.0, PI, FRAC_PI_2];

fn complex(max_abs: f64) -> impl Strategy<Value = Complex64> {
    (0.0..max_abs, 0.0..2.0 * PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

fn named_phase() -> impl Strategy<Value = f64> {
    prop::sample::select(PHASES.to_vec())
}

fn decayed(alpha: Complex64, phi: f64, tau: f64) -> DecayedCat {
    DecayedCat::new(CatState::new(alpha, phi).unwrap(), tau).unwrap()
}

/// Cholesky of `ρ + shift·I`; succeeds iff the smallest eigenvalue exceeds
/// `−shift`.
fn is_psd(rho: &FockDensityMatrix, shift: f64) -> bool {
    let n = rho.dim();
    let mut l = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = rho.get(i, j);
            if i == j {
                s += shift;
            }
            for k in 0..j {
                s -= l[i][k] * l[j][k].conj();
            }
            if i == j {
                if s.re <= 0.0 {
                    return false;
                }
                l[i][i] = Complex64::new(s.re.sqrt(), 0.0);
            } else {
                l[i][j] = s / l[j][j].re;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn overlap_is_hermitian_symmetric(a in complex(4.0), b in complex(4.0)) {
        let ab = coherent_overlap(a, b);
        let ba = coherent_overlap(b, a);
        prop_assert!((ab - ba.conj()).norm() < 1e-15);
        prop_assert!((ab.norm() - (-0.5 * (a - b).norm_sqr()).exp()).abs() < 1e-14);
    }

    #[test]
    fn fock_amplitudes_are_normalized(alpha in complex(4.0), phi in 0.0..2.0 * PI) {
        let cat = CatState::new(alpha, phi);
        prop_assume!(cat.is_ok());
        let cat = cat.unwrap();
        let dc = DecayedCat::new(cat, 0.0).unwrap();
        let norm: f64 = cat.fock_amplitudes(dc.default_n_max()).iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((norm - 1.0).abs() < 1e-10, "norm {norm}");
    }

    #[test]
    fn phase_is_two_pi_periodic(alpha in complex(3.0), phi in 0.0..2.0 * PI) {
        let a = CatState::new(alpha, phi);
        prop_assume!(a.is_ok());
        let a = a.unwrap().fock_amplitudes(40);
        let b = CatState::new(alpha, phi + 2.0 * PI).unwrap().fock_amplitudes(40);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn parity_sectors(alpha in complex(3.0)) {
        prop_assume!(alpha.norm() > 1e-3);
        let even = CatState::even(alpha).unwrap().fock_amplitudes(45);
        let odd = CatState::odd(alpha).unwrap().fock_amplitudes(45);
        for n in 0..=45 {
            let forbidden = if n % 2 == 1 { even[n] } else { odd[n] };
            prop_assert!(forbidden.norm() < 1e-15);
        }
    }

    #[test]
    fn density_matrix_is_a_state(alpha in complex(2.5), phi in 0.0..2.0 * PI, tau in 0.0..3.0f64) {
        let cat = CatState::new(alpha, phi);
        prop_assume!(cat.is_ok());
        let dc = DecayedCat::new(cat.unwrap(), tau).unwrap();
        let rho = density_matrix(&dc, dc.default_n_max());
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-10);
        prop_assert!(rho.hermiticity_error() < 1e-12);
        prop_assert!(rho.purity() <= 1.0 + 1e-12);
        prop_assert!(is_psd(&rho, 1e-9));
    }

    #[test]
    fn mixing_lowers_purity(alpha in 0.5..2.5f64, tau in 0.05..2.0f64) {
        let dc = decayed(Complex64::new(alpha, 0.0), 0.0, tau);
        let rho = density_matrix(&dc, dc.default_n_max());
        prop_assert!(rho.purity() < 1.0 - 1e-6);
    }

    #[test]
    fn energy_decays_like_mu(alpha in complex(2.5), phi in named_phase(), tau in 0.0..3.0f64) {
        let at = |t: f64| mean_photon_number(&decayed(alpha, phi, t));
        prop_assert!((at(tau) - (-tau).exp() * at(0.0)).abs() < 1e-10);
    }

    #[test]
    fn squeezing_scales_with_mu(alpha in complex(2.5), phi in named_phase(), tau in 0.0..3.0f64) {
        let s0 = squeezing_factors(&decayed(alpha, phi, 0.0));
        let st = squeezing_factors(&decayed(alpha, phi, tau));
        let mu = (-tau).exp();
        prop_assert!((st.s1 - mu * s0.s1).abs() < 1e-10);
        prop_assert!((st.s2 - mu * s0.s2).abs() < 1e-10);
        prop_assert!(st.s1 >= -1.0 && st.s2 >= -1.0);
    }

    #[test]
    fn closed_observables_match_fock(alpha in complex(2.0), phi in 0.0..2.0 * PI, tau in 0.0..2.0f64) {
        let cat = CatState::new(alpha, phi);
        prop_assume!(cat.is_ok());
        let dc = DecayedCat::new(cat.unwrap(), tau).unwrap();
        let n_max = dc.default_n_max();
        let rho = density_matrix(&dc, n_max);
        let pnd = photon_number_distribution(&dc, n_max).unwrap();
        for (n, p) in rho.populations().iter().enumerate() {
            prop_assert!((pnd.get(n) - p).abs() < 1e-10);
        }
        let closed = squeezing_factors(&dc);
        let fock = SqueezingFactors::from_density_matrix(&rho);
        prop_assert!((closed.s1 - fock.s1).abs() < 1e-9 && (closed.s2 - fock.s2).abs() < 1e-9);
    }

    #[test]
    fn decay_factor_is_strictly_monotone(a in 0.05..5.0f64, t in 0.01..3.0f64, da in 0.01..1.0f64, dt in 0.01..1.0f64) {
        let f = interference_decay_factor(a, t);
        prop_assert!(interference_decay_factor(a + da, t) < f);
        prop_assert!(interference_decay_factor(a, t + dt) < f);
    }

    #[test]
    fn wigner_is_bounded(alpha in complex(3.0), phi in 0.0..2.0 * PI, tau in 0.0..3.0f64,
                         x in -5.0..5.0f64, y in -5.0..5.0f64) {
        let cat = CatState::new(alpha, phi);
        prop_assume!(cat.is_ok());
        let w = wigner_closed(&DecayedCat::new(cat.unwrap(), tau).unwrap(), PhasePoint::new(x, y));
        prop_assert!(w.abs() <= FRAC_2_PI + 1e-12);
    }

    #[test]
    fn wigner_mirror_symmetries(alpha in 0.1..3.0f64, tau in 0.0..2.0f64, x in -4.0..4.0f64, y in -4.0..4.0f64) {
        let a = Complex64::new(alpha, 0.0);
        for phi in [0.0, PI] {
            let dc = decayed(a, phi, tau);
            let w = wigner_closed(&dc, PhasePoint::new(x, y));
            prop_assert!((w - wigner_closed(&dc, PhasePoint::new(-x, y))).abs() < 1e-14);
            prop_assert!((w - wigner_closed(&dc, PhasePoint::new(x, -y))).abs() < 1e-14);
        }
        // the Yurke-Stoler fringe term is odd in y, so only the x mirror survives
        let dc = decayed(a, FRAC_PI_2, tau);
        let w = wigner_closed(&dc, PhasePoint::new(x, y));
        prop_assert!((w - wigner_closed(&dc, PhasePoint::new(-x, y))).abs() < 1e-14);
        let twice_odd = w - wigner_closed(&dc, PhasePoint::new(x, -y));
        let fringe = -8.0 * dc.interference_factor() * dc.cat().norm() / PI
            * (-2.0 * (x * x + y * y)).exp()
            * (4.0 * dc.decayed_alpha().re * y).sin();
        prop_assert!((twice_odd - fringe).abs() < 1e-14);
    }

    #[test]
    fn complex_amplitude_is_a_rotation(r in 0.1..2.5f64, theta in 0.0..2.0 * PI, phi in named_phase(),
                                       tau in 0.0..2.0f64, x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let beta = Complex64::new(x, y);
        let rotated = beta * Complex64::from_polar(1.0, -theta);
        let w = wigner_closed(&decayed(Complex64::from_polar(r, theta), phi, tau), beta.into());
        let w_real = wigner_closed(&decayed(Complex64::new(r, 0.0), phi, tau), rotated.into());
        prop_assert!((w - w_real).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn master_equation_reproduces_exact_solution(alpha in complex(2.5), phi in named_phase(),
                                                 tau in prop::sample::select(vec![0.1, 0.3, 1.0])) {
        let cat = CatState::new(alpha, phi);
        prop_assume!(cat.is_ok());
        let cat = cat.unwrap();
        let n_max = DecayedCat::new(cat, 0.0).unwrap().default_n_max();
        let rho0 = FockDensityMatrix::pure(&cat.fock_amplitudes(n_max));
        let evolved = lindblad_evolve(&rho0, tau, (tau / 1e-3).round() as usize).unwrap();
        let exact = density_matrix(&DecayedCat::new(cat, tau).unwrap(), n_max);
        prop_assert!(frobenius_distance(&evolved, &exact).unwrap() < 1e-8);
    }

    #[test]
    fn semigroup(alpha in complex(2.0), phi in named_phase(), t1 in 0.0..1.0f64, t2 in 0.01..0.5f64) {
        let n_max = catdecay::truncation_n_max(alpha.norm());
        let start = density_matrix(&decayed(alpha, phi, t1), n_max);
        let evolved = lindblad_evolve(&start, t2, (t2 / 1e-3).ceil() as usize).unwrap();
        let direct = density_matrix(&decayed(alpha, phi, t1 + t2), n_max);
        prop_assert!(frobenius_distance(&evolved, &direct).unwrap() < 1e-8);
    }

    #[test]
    fn three_wigner_routes_agree(alpha in complex(2.0), phi in 0.0..2.0 * PI, tau in 0.0..1.5f64,
                                 x in -3.5..3.5f64, y in -3.5..3.5f64) {
        let cat = CatState::new(alpha, phi);
        prop_assume!(cat.is_ok());
        let dc = DecayedCat::new(cat.unwrap(), tau).unwrap();
        let p = PhasePoint::new(x, y);
        let closed = wigner_closed(&dc, p);
        let (series, _) = wigner_series_converged(&dc, p).unwrap();
        let parity = wigner_parity_oracle(&density_matrix(&dc, dc.default_n_max()), p);
        prop_assert!((closed - series).abs() < 1e-8, "closed {closed} series {series}");
        prop_assert!((closed - parity).abs() < 1e-8, "closed {closed} parity {parity}");
    }

    #[test]
    fn mixture_peaks_sit_at_decayed_amplitude(alpha in 1.5..2.5f64, tau in 0.0..1.0f64) {
        let dc = decayed(Complex64::new(alpha, 0.0), 0.0, tau);
        let centre = dc.decayed_alpha().re;
        prop_assume!(centre >= 1.4);
        let spec = GridSpec::default();
        let grid = wigner_grid(&dc, &spec).unwrap();
        let peaks = grid.local_maxima(0.5);
        for sign in [-1.0, 1.0] {
            let hit = peaks
                .iter()
                .any(|p| (p.x - sign * centre).abs() <= spec.dx() && p.y.abs() <= spec.dy());
            prop_assert!(hit, "no peak near x = {}: {peaks:?}", sign * centre);
        }
    }

    #[test]
    fn nonclassicality_never_grows(alpha in 0.5..2.5f64, phi in prop::sample::select(vec![0.0, PI]),
                                   mut taus in prop::collection::vec(0.0..2.0f64, 4)) {
        taus.sort_by(f64::total_cmp);
        let spec = GridSpec { nx: 65, ny: 65, ..GridSpec::default() };
        let mut last = (f64::INFINITY, f64::INFINITY);
        for tau in taus {
            let dc = decayed(Complex64::new(alpha, 0.0), phi, tau);
            let neg = negativity_volume(&wigner_grid(&dc, &spec).unwrap());
            let contrast = interference_contrast(&dc);
            prop_assert!(neg <= last.0 + 1e-15 && contrast <= last.1 + 1e-15);
            last = (neg, contrast);
        }
    }
}

#[test]
fn grid_matches_pointwise_evaluation_bitwise() {
    let dc = decayed(Complex64::new(1.3, 0.4), 0.7, 0.45);
    let spec = GridSpec {
        x_min: -3.0,
        x_max: 2.5,
        nx: 37,
        y_min: -2.0,
        y_max: 3.0,
        ny: 23,
    };
    let grid = wigner_grid(&dc, &spec).unwrap();
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            let w = wigner_closed(&dc, PhasePoint::new(spec.x(i), spec.y(j)));
            assert_eq!(grid.values[[j, i]].to_bits(), w.to_bits());
        }
    }
}
