use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twistfloer_core::nocross::enumerate_crossing_configs;
use twistfloer_core::{CobordismMode, CrossingScenario};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("nocrossing");
    group.sample_size(10);
    for bound in [2, 4, 6] {
        for threads in [1, 4] {
            let sc = CrossingScenario {
                mode: CobordismMode::Coproduct,
                m: 2,
                n: 3,
                bound,
                relaxed: false,
            };
            group.bench_function(BenchmarkId::new(format!("bound{bound}"), threads), |b| {
                b.iter(|| enumerate_crossing_configs(&sc, threads).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
