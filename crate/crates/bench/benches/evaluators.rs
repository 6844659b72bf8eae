use std::hint::black_box;

use catdecay::battery::battery_points;
use catdecay::{
    density_matrix, lindblad_evolve, wigner_closed, wigner_grid, wigner_parity_oracle, wigner_series, CatState,
    Complex64, DecayedCat, FockDensityMatrix, GridSpec,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn ecs(alpha: f64, tau: f64) -> DecayedCat {
    DecayedCat::new(CatState::even(Complex64::new(alpha, 0.0)).unwrap(), tau).unwrap()
}

fn wigner_routes(c: &mut Criterion) {
    let dc = ecs(2.0, 0.3);
    let points = battery_points();
    let rho = density_matrix(&dc, dc.default_n_max());

    let mut group = c.benchmark_group("wigner_point");
    group.bench_function("closed", |b| {
        b.iter(|| points.iter().map(|&p| wigner_closed(black_box(&dc), p)).sum::<f64>())
    });
    group.bench_function("series_cutoff_80", |b| {
        b.iter(|| points.iter().map(|&p| wigner_series(black_box(&dc), p, 80).unwrap()).sum::<f64>())
    });
    group.bench_function("parity_oracle", |b| {
        b.iter(|| points.iter().map(|&p| wigner_parity_oracle(black_box(&rho), p)).sum::<f64>())
    });
    group.finish();

    c.bench_function("wigner_grid_129x129", |b| {
        b.iter(|| wigner_grid(black_box(&dc), &GridSpec::default()).unwrap())
    });
}

fn master_equation(c: &mut Criterion) {
    let mut group = c.benchmark_group("lindblad_evolve_tau_0.3");
    group.sample_size(10);
    for alpha in [0.5, 1.0, 2.0] {
        let cat = CatState::even(Complex64::new(alpha, 0.0)).unwrap();
        let n_max = DecayedCat::new(cat, 0.0).unwrap().default_n_max();
        let rho0 = FockDensityMatrix::pure(&cat.fock_amplitudes(n_max));
        group.bench_with_input(BenchmarkId::from_parameter(alpha), &rho0, |b, rho0| {
            b.iter(|| lindblad_evolve(black_box(rho0), 0.3, 300).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, wigner_routes, master_equation);
criterion_main!(benches);
