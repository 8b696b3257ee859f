use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use mesharc_core::field::FieldSpec;
use mesharc_core::oracle;
use mesharc_core::orbit::{orbit_presentation, realizations};
use mesharc_core::quiver::{build_dynkin, DynkinFamily};

fn bench_oracle_sweep(c: &mut Criterion) {
    let d6 = build_dynkin(DynkinFamily::D, 6).unwrap();
    c.bench_function("cy_mfold_sweep_d6", |b| {
        b.iter(|| {
            for m in 1..=32u64 {
                let _ = oracle::cy_mfold(black_box(&d6), m, FieldSpec::Rational).unwrap();
            }
        })
    });
    c.bench_function("t2a_exponent_grid", |b| {
        b.iter(|| {
            for n in (1..=15u64).step_by(2) {
                for s in (1..=15u64).step_by(2) {
                    if oracle::gcd(n + 1, s) == 1 {
                        let _ = oracle::cy_t2_a(n, s, FieldSpec::Rational).unwrap();
                    }
                }
            }
        })
    });
}

fn bench_orbit_solver(c: &mut Criterion) {
    let d5 = build_dynkin(DynkinFamily::D, 5).unwrap();
    c.bench_function("orbit_period_fork", |b| {
        b.iter(|| {
            let p = orbit_presentation(black_box(&d5), Some(realizations::t2_d_odd(5, 4)), None)
                .unwrap();
            (p.solve_sigma_period(false), p.solve_sigma_period(true))
        })
    });
}

criterion_group!(benches, bench_oracle_sweep, bench_orbit_solver);
criterion_main!(benches);
