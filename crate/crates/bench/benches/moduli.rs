use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use twistfloer_core::moduli::{
    coproduct_from_cascades, moduli_descriptor, shoot_c_infinity, CutoffProfile, EndOde, EndSide,
};

fn moduli(c: &mut Criterion) {
    let ode = EndOde::new(5, 3, EndSide::Positive, CutoffProfile::default()).unwrap();
    c.bench_function("moduli/shoot_c_infinity", |b| {
        b.iter(|| shoot_c_infinity(black_box(&ode)).unwrap())
    });
    c.bench_function("moduli/descriptor_2_3", |b| {
        b.iter(|| moduli_descriptor(2, 3, black_box(3), 1, 2).unwrap())
    });
    c.bench_function("moduli/cascades_6_7", |b| {
        b.iter(|| coproduct_from_cascades(black_box(6), black_box(7)).unwrap())
    });
}

criterion_group!(benches, moduli);
criterion_main!(benches);
