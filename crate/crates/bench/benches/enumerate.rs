use std::hint::black_box;
use std::ops::ControlFlow;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fusscat_core::{
    catalan_nk, for_each_diagram, for_each_dissection, for_each_tree, theta, Sampler, SamplerConfig, SubsetCode,
};

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for (n, k) in [(8, 2), (5, 3), (4, 4)] {
        let id = format!("{n},{k}");
        g.bench_with_input(BenchmarkId::new("diagrams", &id), &(n, k), |b, &(n, k)| {
            b.iter(|| {
                let mut count = 0u64;
                for_each_diagram(n, k, |d| {
                    count += black_box(d).n() as u64;
                    ControlFlow::Continue(())
                })
                .unwrap();
                count
            })
        });
        g.bench_with_input(BenchmarkId::new("trees", &id), &(n, k), |b, &(n, k)| {
            b.iter(|| {
                let mut count = 0u64;
                for_each_tree(n, k, |t| {
                    count += black_box(t).node_count() as u64;
                    ControlFlow::Continue(())
                })
                .unwrap();
                count
            })
        });
        g.bench_with_input(BenchmarkId::new("dissections", &id), &(n, k), |b, &(n, k)| {
            b.iter(|| {
                let mut count = 0u64;
                for_each_dissection(n * (k - 1) + 2, k, |p| {
                    count += black_box(p).faces().len() as u64;
                    ControlFlow::Continue(())
                })
                .unwrap();
                count
            })
        });
    }
    g.finish();
}

fn peeling(c: &mut Criterion) {
    let code = SubsetCode::new(18, vec![3, 4, 7, 9, 14]).unwrap();
    c.bench_function("theta (6,3)", |b| b.iter(|| theta(black_box(&code), 6, 3).unwrap()));
    let members: Vec<u32> = (1..200).map(|i| i * 3).collect();
    let big = SubsetCode::new(600, members).unwrap();
    c.bench_function("theta (200,3)", |b| b.iter(|| theta(black_box(&big), 200, 3).unwrap()));
}

fn sampling(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample");
    for (n, k) in [(10, 3), (100, 3), (1000, 2)] {
        let mut s = Sampler::new(SamplerConfig { n, k, seed: 1 }).unwrap();
        g.bench_function(format!("{n},{k}"), |b| b.iter(|| s.sample()));
    }
    g.finish();
    c.bench_function("catalan_nk(1000,5)", |b| {
        b.iter(|| catalan_nk(black_box(1000), 5).unwrap())
    });
}

criterion_group!(benches, enumeration, peeling, sampling);
criterion_main!(benches);
