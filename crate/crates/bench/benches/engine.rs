use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use topogame_core::game::{solve_with, SolveOptions};
use topogame_core::spacegen::{discrete, enumerate_topologies};
use topogame_core::{GameKind, InvariantReport};

fn enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_topologies(5)", |b| {
        b.iter(|| enumerate_topologies(black_box(5), false).unwrap().len())
    });
}

fn solving(c: &mut Criterion) {
    let space = discrete(4);
    let mut g = c.benchmark_group("solve discrete(4)");
    g.sample_size(10);
    for (name, options) in [
        ("full", SolveOptions::default()),
        ("reduced", SolveOptions::reduced()),
    ] {
        g.bench_function(format!("sel-od-od h=4 {name}"), |b| {
            b.iter(|| {
                solve_with(&space, GameKind::SelODOD, 4, options)
                    .unwrap()
                    .winner
            })
        });
    }
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let spaces: Vec<_> = enumerate_topologies(4, false)
        .unwrap()
        .into_iter()
        .map(|e| e.space)
        .collect();
    c.bench_function("invariants over 355 four-point spaces", |b| {
        b.iter(|| {
            spaces
                .iter()
                .map(|s| InvariantReport::compute(black_box(s)).cellularity)
                .sum::<usize>()
        })
    });
}

criterion_group!(benches, enumeration, solving, invariants);
criterion_main!(benches);
