//! Throughput benchmarks for the hot paths: collection arithmetic, symbolic
//! congruence evaluation, central-map sweeps, and the full search.
//!
//! The sweep group compares a single-thread pool against the ambient one, so
//! `cargo bench` quantifies what the data-parallel layer buys on this
//! machine. Building with `--no-default-features` swaps in the sequential
//! fallback; the same benchmark names then measure the plain loops, making
//! the two configurations directly comparable run over run.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pgv_core::homs::CentralHomSpace;
use pgv_core::solver::{self, SolverConfig};
use pgv_core::{families, homs, par, symbolic};

fn bench_collection(c: &mut Criterion) {
    let g = families::family_a(3, 6);
    let u = g.multiply(&g.generator(0), &g.generator(2));
    let v = g.multiply(&g.generator(1), &g.generator(3));
    let mut group = c.benchmark_group("collection");
    group.bench_function("multiply", |b| b.iter(|| g.multiply(&u, &v)));
    group.bench_function("power_p6", |b| b.iter(|| g.pow_element(&u, 729)));
    group.bench_function("commutator", |b| b.iter(|| g.commutator(&u, &v)));
    group.finish();
}

fn bench_symbolic(c: &mut Criterion) {
    let g = families::family_c(3);
    let sys = symbolic::generate_system(&g);
    let assign: Vec<u64> = (0..16).map(|i| (i * 5 + 2) % 9).collect();
    c.bench_function("symbolic/relations_eval", |b| {
        b.iter(|| sys.relations.iter().filter(|r| r.holds(3, &assign)).count())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let g = families::family_c(3);
    let space = CentralHomSpace::new(&g);
    let mut group = c.benchmark_group("central_map_sweep");
    group.sample_size(10);
    for (label, workers) in [("single", 1usize), ("ambient", 0)] {
        group.bench_with_input(BenchmarkId::new("20k_maps", label), &workers, |b, &w| {
            b.iter(|| {
                par::with_workers(w, || {
                    par::all(20_000, |i| {
                        homs::is_automorphism(&g, &space.images_at(&g, u128::from(i) * 2_048))
                    })
                })
            })
        });
    }
    group.finish();
}

fn bench_search(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for (name, g) in [
        ("family_c_p3", families::family_c(3)),
        ("family_b_p3", families::family_b(3)),
        ("family_a_p3_n4", families::family_a(3, 4)),
    ] {
        group.bench_function(name, |b| b.iter(|| solver::verify_all_central(&g, &cfg)));
    }
    group.finish();
}

criterion_group!(benches, bench_collection, bench_symbolic, bench_sweep, bench_search);
criterion_main!(benches);
