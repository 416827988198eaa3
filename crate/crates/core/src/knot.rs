//! Planar diagram codes for oriented link diagrams and coloring counts by a
//! finite magma.
//!
//! A crossing is recorded as `[a, b, c, d]`: the four edge labels read
//! counterclockwise starting from the incoming under-edge `a`. The outgoing
//! under-edge is `c`, and `b`, `d` are the two halves of the over-strand. A
//! coloring assigns a magma element to every edge so that the over-strand
//! keeps its color across the crossing and the under-strand is acted on by
//! it: `color(c) = color(a) * color(b)`.

use crate::quandle::CayleyTable;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum KnotError {
    #[error("crossing {index} has {got} entries, expected 4")]
    BadCrossing { index: usize, got: usize },
    #[error("edge label {label} is out of range 1..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("edge label {label} appears {count} times, expected 2")]
    LabelCount { label: usize, count: usize },
}

/// A validated PD code with its derived edge and component counts.
///
/// The empty code is the crossingless unknot: zero edges, one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<[usize; 4]>,
    components: usize,
}

/// Validates a PD code given as rows of edge labels.
pub fn parse_pd(rows: &[Vec<usize>]) -> Result<Diagram, KnotError> {
    let mut crossings = Vec::with_capacity(rows.len());
    for (index, row) in rows.iter().enumerate() {
        if row.len() != 4 {
            return Err(KnotError::BadCrossing { index, got: row.len() });
        }
        crossings.push([row[0], row[1], row[2], row[3]]);
    }
    let max = 2 * crossings.len();
    let mut counts = vec![0usize; max + 1];
    for c in &crossings {
        for &label in c {
            if label == 0 || label > max {
                return Err(KnotError::LabelOutOfRange { label, max });
            }
            counts[label] += 1;
        }
    }
    for (label, &count) in counts.iter().enumerate().skip(1) {
        if count != 2 {
            return Err(KnotError::LabelCount { label, count });
        }
    }

    // Components: edges a, c continue the same strand, as do b, d.
    let components = if crossings.is_empty() {
        1
    } else {
        let mut uf = UnionFind::new(max);
        for &[a, b, c, d] in &crossings {
            uf.union(a - 1, c - 1);
            uf.union(b - 1, d - 1);
        }
        uf.class_count()
    };
    Ok(Diagram { crossings, components })
}

impl Diagram {
    pub fn crossings(&self) -> &[[usize; 4]] {
        &self.crossings
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components
    }
}

/// Number of colorings of the diagram's edges by the magma.
///
/// Edges tied together by over-strands share a color; the search assigns one
/// color per tied class and prunes on every crossing whose three classes are
/// already colored. A crossingless diagram has `order` colorings (one per
/// choice of color for its single strand).
pub fn count_colorings(d: &Diagram, q: &CayleyTable) -> u64 {
    let n = q.order();
    if d.crossings.is_empty() {
        return n as u64;
    }
    let edges = d.edge_count();
    let mut uf = UnionFind::new(edges);
    for &[_, b, _, dd] in &d.crossings {
        uf.union(b - 1, dd - 1);
    }
    // Map union-find roots to dense class indices.
    let mut class_of_root = vec![usize::MAX; edges];
    let mut classes = 0usize;
    let mut class = vec![0usize; edges];
    for e in 0..edges {
        let r = uf.find(e);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = classes;
            classes += 1;
        }
        class[e] = class_of_root[r];
    }
    // A crossing is checkable once the classes of a, b, c are all assigned;
    // bucket it under the last of them.
    let constraints: Vec<[usize; 3]> = d
        .crossings
        .iter()
        .map(|&[a, b, c, _]| [class[a - 1], class[b - 1], class[c - 1]])
        .collect();
    let mut ready_at: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for (ci, t) in constraints.iter().enumerate() {
        ready_at[*t.iter().max().unwrap()].push(ci);
    }

    let mut colors = vec![0usize; classes];
    let mut count = 0u64;
    let mut depth = 0usize;
    // Iterative backtracking; colors[depth] is the next color to try there.
    loop {
        if colors[depth] == n {
            colors[depth] = 0;
            if depth == 0 {
                return count;
            }
            depth -= 1;
            colors[depth] += 1;
            continue;
        }
        let consistent = ready_at[depth].iter().all(|&ci| {
            let [ca, cb, cc] = constraints[ci];
            q.op(colors[ca], colors[cb]) == colors[cc]
        });
        if !consistent {
            colors[depth] += 1;
            continue;
        }
        if depth + 1 == classes {
            count += 1;
            colors[depth] += 1;
        } else {
            depth += 1;
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }

    fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
