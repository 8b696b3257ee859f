use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use mesharc_core::algebra::mesh_algebra;
use mesharc_core::field::{PrimeField, Rationals};
use mesharc_core::quiver::{
    build_dynkin, build_quotient_quiver, DynkinFamily, QuotientSpec, RhoKind,
};
use mesharc_core::resolution::{min_cy_exponent_direct, twist_data};

fn quiver(fam: DynkinFamily, rank: usize, m: usize, rho: RhoKind) -> mesharc_core::TranslationQuiver {
    let d = build_dynkin(fam, rank).unwrap();
    build_quotient_quiver(&QuotientSpec::new(d, m, rho).unwrap()).unwrap()
}

fn bench_mesh_algebra(c: &mut Criterion) {
    let g2 = quiver(DynkinFamily::D, 4, 1, RhoKind::Triality);
    c.bench_function("mesh_algebra_g2_rationals", |b| {
        b.iter(|| mesh_algebra(black_box(&g2), Rationals, 6).unwrap())
    });
    let d4m3 = quiver(DynkinFamily::D, 4, 3, RhoKind::None);
    c.bench_function("mesh_algebra_d4_m3_f3", |b| {
        b.iter(|| mesh_algebra(black_box(&d4m3), PrimeField::new(3), 6).unwrap())
    });
}

fn bench_twist_search(c: &mut Criterion) {
    let q = quiver(DynkinFamily::A, 2, 2, RhoKind::None);
    let alg = mesh_algebra(&q, Rationals, 3).unwrap();
    c.bench_function("twist_data_a2_double_cover", |b| {
        b.iter(|| twist_data(black_box(&alg)).unwrap())
    });
    let data = twist_data(&alg).unwrap();
    c.bench_function("min_cy_direct_a2_double_cover", |b| {
        b.iter(|| min_cy_exponent_direct(black_box(&alg), &data, 24))
    });
}

criterion_group!(benches, bench_mesh_algebra, bench_twist_search);
criterion_main!(benches);
