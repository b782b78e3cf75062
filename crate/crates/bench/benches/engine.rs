use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use grabbing_core::enumerate::connected_graphs;
use grabbing_core::fixtures::fig1;
use grabbing_core::{
    build_corona, build_d_member, find_corona_odd, find_induced_d, Budget, DWeighting, Solver,
    StateTable, VertexSet, WeightedGraph,
};

/// 4x4 grid with weights 1..=16 in row-major order.
fn grid() -> WeightedGraph {
    let mut edges = Vec::new();
    for r in 0..4 {
        for c in 0..4 {
            let v = 4 * r + c;
            if c < 3 {
                edges.push((v, v + 1));
            }
            if r < 3 {
                edges.push((v, v + 4));
            }
        }
    }
    WeightedGraph::from_edges(16, &edges, (1..=16).collect()).unwrap()
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solver");
    for (name, g) in [
        ("fig1", fig1()),
        (
            "d_member_r9",
            build_d_member(9, 0b101, &DWeighting::default()).unwrap(),
        ),
        ("grid_4x4", grid()),
    ] {
        let full = VertexSet::full(g.order());
        group.bench_function(name, |b| {
            b.iter_batched(
                || Solver::new(g.clone()),
                |mut s| black_box(s.solve_diff(full).unwrap()),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn table(c: &mut Criterion) {
    let g = fig1();
    c.bench_function("table/build_fig1", |b| {
        b.iter(|| StateTable::new(black_box(&g)).unwrap())
    });
    let t = StateTable::new(&g).unwrap();
    let mut scratch = Vec::new();
    let weights: Vec<i64> = g.weights().iter().map(|&w| w as i64).collect();
    c.bench_function("table/diff_fig1", |b| {
        b.iter(|| t.diff(black_box(&weights), &mut scratch))
    });
}

fn detectors(c: &mut Criterion) {
    let corona = build_corona(7).unwrap();
    let member = build_d_member(7, 0b11, &DWeighting::default()).unwrap();
    let g = grid();
    c.bench_function("detect/corona_c7", |b| {
        b.iter(|| find_corona_odd(black_box(&corona), Budget::default()))
    });
    c.bench_function("detect/d_member_r7", |b| {
        b.iter(|| find_induced_d(black_box(&member), Budget::default()))
    });
    c.bench_function("detect/d_in_grid", |b| {
        b.iter(|| find_induced_d(black_box(&g), Budget::default()))
    });
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    group.bench_function("connected_7", |b| {
        b.iter(|| connected_graphs(black_box(7)).len())
    });
    group.finish();
}

criterion_group!(benches, solver, table, detectors, enumeration);
criterion_main!(benches);
