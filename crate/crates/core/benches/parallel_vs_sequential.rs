use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use ansec::mc::{mc_capacities_with, sample_map, sir_mmse};
use ansec::power_opt::{optimize_phi_adaptive_with, optimize_phi_with, OptimizeOptions};
use ansec::{Execution, PowerSplit, SystemConfig};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn monte_carlo(c: &mut Criterion) {
    let mut group = c.benchmark_group("mc_capacities");
    group.sample_size(10);
    let cfg = SystemConfig::new(8, 2).unwrap();
    let split = PowerSplit::equal();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "na8_ne2_100k"), &exec, |b, &exec| {
            b.iter(|| mc_capacities_with(&cfg, 10.0, &split, black_box(100_000), 1, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("sir_samples");
    group.sample_size(10);
    let cfg = SystemConfig::new(6, 3).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "na6_ne3_200k"), &exec, |b, &exec| {
            b.iter(|| sample_map(&cfg, black_box(200_000), 2, exec, |d| sir_mmse(d).ok()))
        });
    }
    group.finish();
}

fn optimization(c: &mut Criterion) {
    let mut group = c.benchmark_group("optimize_phi_adaptive");
    group.sample_size(10);
    let cfg = SystemConfig::new(8, 1).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "na8_order64"), &exec, |b, &exec| {
            b.iter(|| optimize_phi_adaptive_with(&cfg, black_box(10.0), 64, exec).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("snr_sweep");
    let cfg = SystemConfig::new(16, 4).unwrap();
    let snrs: Vec<f64> = (0..41)
        .map(|i| 10f64.powf((-10.0 + i as f64) / 10.0))
        .collect();
    for (name, exec) in MODES {
        let opts = OptimizeOptions {
            exec,
            ..Default::default()
        };
        group.bench_with_input(
            BenchmarkId::new(name, "na16_ne4_41pts"),
            &exec,
            |b, &exec| {
                b.iter(|| {
                    exec.map_slice(&snrs, |&p| {
                        optimize_phi_with(&cfg, black_box(p), None, &opts).c_star
                    })
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, monte_carlo, optimization);
criterion_main!(benches);
