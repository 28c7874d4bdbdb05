use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tvar_bench::*;
use tvar_core::downgrade::{downgrade_with, DowngradeOptions};
use tvar_core::geom::dd::double_description;
use tvar_core::graded::bijection_check;
use tvar_core::lattice::smith_normal_form;
use tvar_core::num::ints;

fn smith(c: &mut Criterion) {
    let mut group = c.benchmark_group("smith_normal_form");
    for n in [3, 5, 8] {
        let ms = random_matrices(16, n, n, 20);
        group.bench_with_input(BenchmarkId::from_parameter(n), &ms, |b, ms| {
            b.iter(|| {
                for m in ms {
                    black_box(smith_normal_form(m));
                }
            })
        });
    }
    group.finish();
}

fn dd(c: &mut Criterion) {
    let mut group = c.benchmark_group("double_description");
    for (count, dim) in [(8, 3), (12, 4), (16, 5)] {
        let gens = random_cone_generators(count, dim);
        group.bench_with_input(BenchmarkId::new("constraints", format!("{count}x{dim}")), &gens, |b, g| {
            b.iter(|| black_box(double_description(g, dim)))
        });
    }
    group.finish();
}

fn downgrade(c: &mut Criterion) {
    let e = weil_restriction_on_four_space();
    let opts = DowngradeOptions::default();
    c.bench_function("downgrade_weil_four_space", |b| {
        b.iter(|| black_box(downgrade_with(&e, &opts).unwrap()))
    });
}

fn bijection(c: &mut Criterion) {
    let a = weil_restriction_datum();
    let weights = [ints(&[3, 3]), ints(&[4, 2]), ints(&[6, 5])];
    c.bench_function("bijection_weil_four_space_degree_6", |b| {
        b.iter(|| {
            for m in &weights {
                assert!(bijection_check(&a, m, 6).unwrap());
            }
        })
    });
}

criterion_group!(benches, smith, dd, downgrade, bijection);
criterion_main!(benches);
