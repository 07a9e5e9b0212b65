use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use layerdraw::{
    decompose, enumerate_isometric_cycles, select_planar_cycle_system, verify_document,
    DecomposeOptions, DecompositionDocument, PlanarOptions,
};
use layerdraw_bench::complete_graphs;

fn stages(c: &mut Criterion) {
    let mut group = c.benchmark_group("isometric-cycles");
    for (name, g) in complete_graphs(10) {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| {
            b.iter(|| enumerate_isometric_cycles(g))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("planar-selection");
    for (name, g) in complete_graphs(10) {
        let pool = enumerate_isometric_cycles(&g);
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| {
            b.iter(|| select_planar_cycle_system(g, &pool, PlanarOptions::default()))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("decompose");
    group.sample_size(10);
    for (name, g) in complete_graphs(10) {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| {
            b.iter(|| decompose(g, DecomposeOptions::default()).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, g) in complete_graphs(10) {
        let doc = DecompositionDocument::of(&decompose(&g, DecomposeOptions::default()).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(&name), &doc, |b, doc| {
            b.iter(|| verify_document(doc))
        });
    }
    group.finish();
}

criterion_group!(benches, stages);
criterion_main!(benches);
