//! Order-theory hot paths: the closed-form bound words, the Moebius closed
//! form, and Hasse diagram rendering. Degrees stay small enough that a full
//! pass over a degree is one measurable unit.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use treelat_core::{join, meet, moebius_closed, name_table, Poset};

fn bench_bounds(c: &mut Criterion) {
    let names = name_table(4).expect("degree 4 enumerates");
    let mut group = c.benchmark_group("bounds");
    group.sample_size(20);
    group.bench_function("join-all-pairs-degree-4", |b| {
        b.iter(|| {
            for v in names.iter() {
                for w in names.iter() {
                    black_box(join(v, w).expect("same degree"));
                }
            }
        })
    });
    group.bench_function("meet-all-pairs-degree-4", |b| {
        b.iter(|| {
            for v in names.iter() {
                for w in names.iter() {
                    black_box(meet(v, w).expect("same degree"));
                }
            }
        })
    });
    group.finish();
}

fn bench_moebius(c: &mut Criterion) {
    let names = name_table(5).expect("degree 5 enumerates");
    let mut group = c.benchmark_group("moebius");
    group.sample_size(20);
    group.bench_function("closed-form-degree-5", |b| {
        b.iter(|| {
            for v in names.iter() {
                black_box(moebius_closed(v));
            }
        })
    });
    group.finish();
}

fn bench_hasse(c: &mut Criterion) {
    let poset = Poset::new(4).expect("degree 4 poset");
    let mut group = c.benchmark_group("hasse");
    group.sample_size(20);
    group.bench_function("dot-degree-4", |b| b.iter(|| black_box(poset.hasse_dot())));
    group.finish();
}

criterion_group!(benches, bench_bounds, bench_moebius, bench_hasse);
criterion_main!(benches);
