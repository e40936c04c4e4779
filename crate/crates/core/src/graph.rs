//! Small simple graphs and a brute-force chromatic symmetric function.
//!
//! The oracle uses the edge-subset expansion
//! `X_G = Σ_{S ⊆ E} (-1)^{|S|} p_{λ(S)}`, where `λ(S)` lists the component
//! sizes of the spanning subgraph `(V, S)`. It shares nothing with the closed
//! forms in [`crate::expansions`] beyond the [`EFunction`] type.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::composition::Partition;
use crate::efun::{EFunction, PowerSumTable};
use crate::error::{domain, Error, Result};
use crate::exec::{Executor, Sequential};

/// Default cap on the number of edges the oracle accepts.
pub const DEFAULT_EDGE_BUDGET: usize = 30;

/// Simple undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates: no loops, no duplicate edges, endpoints in range.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(domain!("graph needs at least one vertex"));
        }
        let mut seen = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(domain!("edge ({}, {}) out of range for {} vertices", u, v, vertex_count));
            }
            if u == v {
                return Err(domain!("self-loop at vertex {}", u));
            }
            seen.push((u.min(v), u.max(v)));
        }
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(domain!("duplicate edge"));
        }
        Ok(Graph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path_graph(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(domain!("path needs at least one vertex"));
    }
    Graph::new(n, (1..n).map(|v| (v - 1, v)).collect())
}

/// Paths of the given lengths glued at the common end vertex `0`.
pub fn spider_graph(legs: &[usize]) -> Result<Graph> {
    if legs.is_empty() {
        return Err(domain!("spider needs at least one leg"));
    }
    if legs.contains(&0) {
        return Err(domain!("spider legs must be positive"));
    }
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Graph::new(next, edges)
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::new(n, edges)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: alloc::vec![1; n],
        }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.size.fill(1);
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            core::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }

    fn component_sizes(&mut self) -> Vec<usize> {
        let mut out = Vec::new();
        for v in 0..self.parent.len() {
            if self.find(v) == v {
                out.push(self.size[v]);
            }
        }
        out
    }
}

/// Signed counts of `p_λ` over the edge subsets with bitmask in `range`.
pub fn subset_power_sum_counts(graph: &Graph, range: core::ops::Range<u64>) -> BTreeMap<Partition, i64> {
    let mut uf = UnionFind::new(graph.vertex_count);
    let mut counts: BTreeMap<Partition, i64> = BTreeMap::new();
    for mask in range {
        uf.reset();
        for (i, &(u, v)) in graph.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                uf.union(u, v);
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *counts.entry(Partition::from_unsorted(uf.component_sizes())).or_default() += sign;
    }
    counts
}

/// Converts signed `p_λ` counts into the `e` basis.
pub fn power_sum_counts_to_e(counts: &BTreeMap<Partition, i64>) -> Result<EFunction> {
    let mut table = PowerSumTable::new();
    let mut out = EFunction::zero();
    for (lambda, &count) in counts {
        if count != 0 {
            out += table.p_partition(lambda)?.scale(&BigInt::from(count));
        }
    }
    Ok(out)
}

/// Exact `X_G` in the `e` basis by enumerating all `2^|E|` edge subsets in
/// ascending bitmask order.
pub fn csf_subset_expansion(graph: &Graph, edge_budget: usize) -> Result<EFunction> {
    csf_subset_expansion_with(graph, edge_budget, &Sequential)
}

/// [`csf_subset_expansion`] with the bitmask range cut into contiguous chunks.
pub fn csf_subset_expansion_with(graph: &Graph, edge_budget: usize, exec: &impl Executor) -> Result<EFunction> {
    let e = graph.edges.len();
    if e > edge_budget || e >= 63 {
        return Err(Error::Budget { needed: e, budget: edge_budget.min(62) });
    }
    let total = 1u64 << e;
    let chunk = (total >> 6).max(1 << 10);
    let ranges: Vec<core::ops::Range<u64>> =
        (0..total).step_by(chunk as usize).map(|s| s..(s + chunk).min(total)).collect();
    let mut counts: BTreeMap<Partition, i64> = BTreeMap::new();
    for part in exec.map(&ranges, |r| subset_power_sum_counts(graph, r.clone())) {
        for (lambda, c) in part {
            *counts.entry(lambda).or_default() += c;
        }
    }
    power_sum_counts_to_e(&counts)
}
