use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use h1loc_bench::{random_matrix, random_vector};
use h1loc_core::linalg::{howell_form, solve_linear};
use h1loc_core::scan::scan_prime_to_p;
use h1loc_core::{ActingGroup, CocycleSystem, Construction, Module, ModulusContext};

fn bench_howell(c: &mut Criterion) {
    let ctx = ModulusContext::new(5, 2).unwrap();
    let mut group = c.benchmark_group("howell_form");
    for size in [8, 32, 64] {
        let m = random_matrix(ctx, size, size, 7);
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| howell_form(black_box(m)))
        });
    }
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let ctx = ModulusContext::new(7, 2).unwrap();
    let a = random_matrix(ctx, 40, 30, 3);
    let b = random_vector(ctx, 40, 4);
    c.bench_function("solve_linear 40x30 mod 49", |bench| {
        bench.iter(|| solve_linear(black_box(&a), black_box(&b)))
    });
}

fn bench_h1_loc(c: &mut Criterion) {
    let mut group = c.benchmark_group("h1_loc");
    group.sample_size(10);
    for construction in Construction::ALL {
        let g = construction.build(5).unwrap();
        group.bench_function(construction.label(), |b| {
            b.iter(|| {
                let sys = CocycleSystem::new(&g, Module::full(g.ctx())).unwrap();
                sys.h1_loc().unwrap().order
            })
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("p=7", |b| b.iter(|| scan_prime_to_p(black_box(7)).unwrap().len()));
    group.finish();
}

criterion_group!(benches, bench_howell, bench_solve, bench_h1_loc, bench_scan);
criterion_main!(benches);
