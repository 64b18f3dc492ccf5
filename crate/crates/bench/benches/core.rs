use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use truncpath_core::fox::homology_model;
use truncpath_core::lattice::smith_normal_form;
use truncpath_core::oracle::{RelChainComplex, Variant, DEFAULT_CAP};
use truncpath_core::ring::build_ring;
use truncpath_core::space::{builtin_space, fundamental_presentation};
use truncpath_core::IntMatrix;

fn ring(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_ring");
    for (name, n) in [("wedge(2)", 3), ("torus", 3), ("genus(2)", 2)] {
        let (ss, bp) = builtin_space(name).unwrap();
        let gp = fundamental_presentation(&ss, bp);
        group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
            b.iter(|| build_ring(black_box(&gp), n).unwrap().graded_piece(n).unwrap())
        });
    }
    group.finish();
}

fn fox_model(c: &mut Criterion) {
    let (ss, bp) = builtin_space("wedge(2)").unwrap();
    let gp = fundamental_presentation(&ss, bp);
    c.bench_function("fox model wedge(2) n=3", |b| b.iter(|| homology_model(black_box(&gp), 3).unwrap()));
}

fn smith(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("smith_normal_form");
    for size in [8, 16, 32] {
        let rows = (0..size).map(|_| (0..size).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect()).collect();
        let m = IntMatrix::from_rows(size, rows);
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle homology");
    group.sample_size(10);
    for (name, n) in [("wedge(2)", 2), ("torus", 2), ("wedge(2)", 3)] {
        let (ss, bp) = builtin_space(name).unwrap();
        group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
            b.iter(|| {
                let cx = RelChainComplex::build(&ss, n, Variant::Both, bp.a, bp.b, DEFAULT_CAP).unwrap();
                cx.homology(n)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, ring, fox_model, smith, oracle);
criterion_main!(benches);
