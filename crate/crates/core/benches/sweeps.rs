use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nbase::enumerate::enumerate_with;
use nbase::par::Exec;
use nbase::selftest;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate B3, 3 factors, arity 2");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| enumerate_with(3, 3, 2, e).len())
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("tree oracle, 5 nodes");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| selftest::oracle(5, 3, e).cases)
        });
    }
    g.finish();
}

fn equivariance(c: &mut Criterion) {
    let mut g = c.benchmark_group("equivariance, 4 nodes");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| selftest::equivariance(4, 3, e).cases)
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, oracle, equivariance);
criterion_main!(benches);
