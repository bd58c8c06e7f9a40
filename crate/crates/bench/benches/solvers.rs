use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ptwell_bench::{narrow_barrier, reference};
use ptwell_core::oracle::{fd_spectrum, well_sampler};
use ptwell_core::secular::{trace_semi_ovals, OvalOptions};
use ptwell_core::spectrum::CriticalOptions;
use ptwell_core::{critical_coupling, energies, find_roots_on_hyperbola, susy_parameters, verify_susy};

fn secular(c: &mut Criterion) {
    let cfg = narrow_barrier();
    c.bench_function("roots_on_hyperbola_g650", |b| {
        b.iter(|| find_roots_on_hyperbola(black_box(&cfg), 40.0).unwrap())
    });
    c.bench_function("energies_64_levels", |b| {
        let cfg = reference();
        b.iter(|| energies(black_box(&cfg), 64).unwrap())
    });
    let mut group = c.benchmark_group("ovals");
    group.sample_size(10);
    group.bench_function("semi_ovals_200x200", |b| {
        let opts = OvalOptions {
            s_cells: 200,
            t_cells: 200,
        };
        b.iter(|| trace_semi_ovals(black_box(&cfg), 12.0, 40.0, &opts))
    });
    group.finish();
}

fn critical(c: &mut Criterion) {
    let mut group = c.benchmark_group("critical");
    group.sample_size(10);
    group.bench_function("gc_l0.5", |b| {
        b.iter(|| critical_coupling(black_box(0.5), 1.0, &CriticalOptions::default()).unwrap())
    });
    group.finish();
}

fn susy(c: &mut Criterion) {
    let cfg = reference();
    let roots = energies(&cfg, 5).unwrap().roots;
    let p = susy_parameters(&cfg, &roots[0]).unwrap();
    c.bench_function("verify_susy_5_levels", |b| {
        b.iter(|| verify_susy(black_box(&cfg), &p, &roots))
    });
}

fn oracle(c: &mut Criterion) {
    let cfg = reference();
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    for n in [499usize, 999] {
        group.bench_function(format!("fd_spectrum_{n}"), |b| {
            b.iter(|| fd_spectrum(well_sampler(&cfg, n), 1.0, black_box(n)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, secular, critical, susy, oracle);
criterion_main!(benches);
