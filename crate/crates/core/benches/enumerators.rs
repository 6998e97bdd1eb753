use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use djpuzzle::{garrison_scott_with, solve, Method, SearchConfig, SimplicialComplex, WedgeTuple};

fn workers() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get()).max(2)
}

fn tuple(s: &str) -> WedgeTuple {
    WedgeTuple::parse(s).unwrap()
}

fn wedged(seed: &SimplicialComplex, j: &WedgeTuple) -> SimplicialComplex {
    seed.wedged(j).unwrap().0.relabel_facet_first().0
}

fn sequential_vs_parallel(c: &mut Criterion) {
    let p6 = SimplicialComplex::polygon(6);
    let mut group = c.benchmark_group("sequential_vs_parallel");
    group.sample_size(10);
    for j in ["2,2,1,1,1,1", "3,3,1,1,1,1"] {
        let jt = tuple(j);
        let k = wedged(&p6, &jt);
        for w in [1, workers()] {
            let label = if w == 1 {
                "sequential".to_string()
            } else {
                format!("parallel-{w}")
            };
            group.bench_with_input(BenchmarkId::new(format!("gs/{label}"), j), &k, |b, k| {
                b.iter(|| garrison_scott_with(k, w).unwrap())
            });
            let config = SearchConfig {
                workers: w,
                ..SearchConfig::default()
            };
            group.bench_with_input(BenchmarkId::new(format!("puzzle/{label}"), j), &jt, |b, jt| {
                b.iter(|| solve(&p6, jt, Method::Constructive, &config).unwrap())
            });
        }
    }
    group.finish();
}

fn methods(c: &mut Criterion) {
    let p5 = SimplicialComplex::polygon(5);
    let p6 = SimplicialComplex::polygon(6);
    let config = SearchConfig::default();
    let mut group = c.benchmark_group("methods");
    group.sample_size(10);

    let j = tuple("2,2,2,1,1");
    group.bench_function("p5/2,2,2,1,1/puzzle", |b| {
        b.iter(|| solve(&p5, &j, Method::Constructive, &config).unwrap())
    });
    group.bench_function("p5/2,2,2,1,1/naive-puzzle", |b| {
        b.iter(|| solve(&p5, &j, Method::Naive, &config).unwrap())
    });
    let k = wedged(&p5, &j);
    group.bench_function("p5/2,2,2,1,1/gs", |b| b.iter(|| garrison_scott_with(&k, 1).unwrap()));

    for j in ["2,2,1,1,1,1", "3,3,1,1,1,1", "4,4,1,1,1,1"] {
        let jt = tuple(j);
        let k = wedged(&p6, &jt);
        group.bench_with_input(BenchmarkId::new("p6/puzzle", j), &jt, |b, jt| {
            b.iter(|| solve(&p6, jt, Method::Constructive, &config).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("p6/gs", j), &k, |b, k| {
            b.iter(|| garrison_scott_with(k, 1).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sequential_vs_parallel, methods);
criterion_main!(benches);
