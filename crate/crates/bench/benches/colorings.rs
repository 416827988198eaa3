//! Coloring-count throughput on the two reference diagrams. The counter
//! prunes by propagating crossing relations, so cost grows with quandle
//! order much slower than the raw order^edges search space.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use sdbialg::knot::{count_colorings, parse_pd, Diagram};
use sdbialg::quandle::{dihedral_quandle, CayleyTable};

fn trefoil() -> Diagram {
    parse_pd(&[vec![1, 4, 2, 5], vec![3, 6, 4, 1], vec![5, 2, 6, 3]]).unwrap()
}

fn figure_eight() -> Diagram {
    parse_pd(&[
        vec![4, 2, 5, 1],
        vec![8, 6, 1, 5],
        vec![6, 3, 7, 4],
        vec![2, 7, 3, 8],
    ])
    .unwrap()
}

fn colorings(c: &mut Criterion) {
    let diagrams: [(&str, Diagram); 2] = [("trefoil", trefoil()), ("figure_eight", figure_eight())];
    let quandles: Vec<(usize, CayleyTable)> =
        [3usize, 5, 7].into_iter().map(|n| (n, dihedral_quandle(n))).collect();

    let mut group = c.benchmark_group("count_colorings");
    for (name, d) in &diagrams {
        for (n, q) in &quandles {
            let id = BenchmarkId::new(*name, format!("dihedral{n}"));
            group.bench_with_input(id, &(d, q), |b, (d, q)| {
                b.iter(|| count_colorings(black_box(d), black_box(q)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, colorings);
criterion_main!(benches);
