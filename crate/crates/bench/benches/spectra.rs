//! Benchmarks: the point of the block reduction is that solving the second
//! manifold at N = 10^10 costs the same as N = 4, while the brute-force
//! oracle comparison only exists at small N.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use polariton::analysis::{run_sweep, CouplingMode, SweepSpec, SweepVariable};
use polariton::manifolds::{solve_manifold, Manifold};
use polariton::oracle::certify;
use polariton::params::EmitterModel;
use polariton::tcexact::tc_exact;
use polariton_bench::{harmonic, morse};

fn bench_solve_manifold(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_manifold_m2");
    for n in [4u64, 1_000_000, 10_000_000_000] {
        let p = morse(n, 0.14);
        group.bench_function(format!("morse_n_{n}"), |b| {
            b.iter(|| solve_manifold(black_box(&p), Manifold::Two).unwrap())
        });
    }
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let p = harmonic(8);
    c.bench_function("certify_full_oracle_n8", |b| {
        b.iter(|| certify(black_box(&p)).unwrap())
    });
}

fn bench_tc_exact(c: &mut Criterion) {
    let p = harmonic(1_000_000).with_model(EmitterModel::TavisCummings);
    c.bench_function("tc_exact_cubic", |b| {
        b.iter(|| tc_exact(black_box(&p)).unwrap())
    });
}

fn bench_chi_sweep(c: &mut Criterion) {
    let spec = SweepSpec {
        variable: SweepVariable::Anharmonicity,
        from: 0.01,
        to: 0.3,
        points: 200,
        log: false,
        base: harmonic(1_000_000),
        coupling_mode: CouplingMode::FixedCollective,
        manifold: 2,
    };
    c.bench_function("chi_sweep_200_points", |b| {
        b.iter(|| run_sweep(black_box(&spec)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_solve_manifold,
    bench_certify,
    bench_tc_exact,
    bench_chi_sweep
);
criterion_main!(benches);
