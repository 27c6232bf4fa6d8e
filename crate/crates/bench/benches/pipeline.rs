use cftorsion::fixtures::{flynn, g_u};
use cftorsion::rational::int;
use cftorsion::symbolic::{build_system, eliminate, PivotPolicy};
use cftorsion::{cf_expand, enumerate_partitions, igusa_abcd, torsion_order, PartitionSpec, Poly};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn expansion(c: &mut Criterion) {
    let g = g_u(&int(2));
    c.bench_function("cf_expand g_2", |b| b.iter(|| cf_expand(black_box(&g), 64).unwrap()));
    let deg10: Poly = "x^10 + 3*x^7 - x^3 + 5*x + 2".parse().unwrap();
    c.bench_function("cf_expand non-torsion deg 10, 20 steps", |b| {
        b.iter(|| cf_expand(black_box(&deg10), 20).unwrap())
    });
    let e = cf_expand(&g, 64).unwrap();
    c.bench_function("torsion_order g_2", |b| b.iter(|| torsion_order(black_box(&e), 2).unwrap()));
}

fn partitions(c: &mut Criterion) {
    c.bench_function("enumerate_partitions g=4 N=13", |b| b.iter(|| enumerate_partitions(4, black_box(13)).unwrap()));
}

fn symbolic(c: &mut Criterion) {
    let spec = PartitionSpec::new(2, vec![2, 1, 1, 1, 1, 2]).unwrap();
    c.bench_function("eliminate (2,1,1,1,1,2)", |b| {
        b.iter(|| {
            let sys = build_system(black_box(&spec)).unwrap();
            eliminate(&sys, &PivotPolicy::RoleRanked).unwrap()
        })
    });
}

fn invariants(c: &mut Criterion) {
    let f = flynn(&int(3));
    c.bench_function("igusa_abcd flynn t=3", |b| b.iter(|| igusa_abcd(black_box(&f)).unwrap()));
}

criterion_group!(benches, expansion, partitions, symbolic, invariants);
criterion_main!(benches);
