use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use polydiff::basis::enumerate_basis_with;
use polydiff::boseck::boseck_table_with;
use polydiff::modrep::oracle_sweep;
use polydiff::sweep::SweepConfig;
use polydiff::verify::verify_sweep;
use polydiff::{CyclicPlace, ElabPlace, ExecMode, ExtensionSpec, GroupParams};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn wide_tower() -> ExtensionSpec {
    let jumps = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect();
    ExtensionSpec::CyclicTower {
        group: GroupParams::new(3, 6),
        places: vec![
            CyclicPlace::total(jumps(&[1, 4, 13, 40, 121, 364])),
            CyclicPlace::new(3, jumps(&[0, 0, 0, 2, 7, 22])),
        ],
        g_base: BigInt::from(1),
    }
}

fn tables(c: &mut Criterion) {
    let spec = wide_tower();
    let mut group = c.benchmark_group("boseck_table 3^6");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| boseck_table_with(black_box(&spec), 3, mode).unwrap())
        });
    }
    group.finish();
}

fn bases(c: &mut Criterion) {
    let spec = ExtensionSpec::ElementaryAbelian {
        group: GroupParams::new(2, 5),
        places: [7, 11, 13].into_iter().map(ElabPlace::new).collect(),
    };
    let mut group = c.benchmark_group("enumerate_basis 2^5");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_basis_with(black_box(&spec), 2, mode).unwrap())
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_sweep 2^5");
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| oracle_sweep(2, 5, mode).unwrap()));
    }
    group.finish();
}

fn verify(c: &mut Criterion) {
    let cfg = SweepConfig { count: 40, ..SweepConfig::default() };
    let mut group = c.benchmark_group("verify_sweep 40 specs");
    group.sample_size(10);
    for (name, mode) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| verify_sweep(&cfg, &[1, 2], mode)));
    }
    group.finish();
}

criterion_group!(benches, tables, bases, oracle, verify);
criterion_main!(benches);
