//! Independent oracles. These only read adjacency through `has_edge` and
//! `edges`, never through the library's predicates or solver.
#![allow(dead_code)]

use graphauth::graph::{random_graph, Coloring, Graph, VertexMap};
use graphauth::SplitMix64;
use proptest::prelude::*;

pub fn hom_oracle(f: &VertexMap, g: &Graph, h: &Graph) -> bool {
    f.domain_order() == g.order()
        && f.codomain_order() == h.order()
        && g.edges().iter().all(|&(u, v)| h.has_edge(f.apply(u), f.apply(v)))
}

/// Every vertex and every edge of `h` is hit by `f` from some edge or vertex of `g`.
pub fn covers_oracle(f: &VertexMap, g: &Graph, h: &Graph) -> bool {
    let mut seen = vec![false; h.order()];
    for v in 0..g.order() {
        seen[f.apply(v)] = true;
    }
    if seen.iter().any(|s| !s) {
        return false;
    }
    h.edges().iter().all(|&(a, b)| {
        g.edges().iter().any(|&(u, v)| {
            let (x, y) = (f.apply(u), f.apply(v));
            (x, y) == (a, b) || (y, x) == (a, b)
        })
    })
}

pub fn iso_oracle(f: &VertexMap, g: &Graph, h: &Graph) -> bool {
    let n = g.order();
    if n != h.order() || f.domain_order() != n || f.codomain_order() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for v in 0..n {
        if std::mem::replace(&mut hit[f.apply(v)], true) {
            return false;
        }
    }
    (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == h.has_edge(f.apply(u), f.apply(v))))
}

pub fn proper_oracle(c: &Coloring, g: &Graph, k: u32) -> bool {
    c.len() == g.order()
        && c.colors().iter().all(|&x| (1..=k).contains(&x))
        && g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v))
}

/// All permutations of `0..n` by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Bit index of pair `u < v` among the `n(n-1)/2` pairs.
pub fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

pub fn to_mask(g: &Graph) -> u32 {
    let n = g.order();
    g.edges().iter().fold(0, |m, &(u, v)| m | 1 << pair_index(n, u, v))
}

pub fn from_mask(n: usize, mask: u32) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if mask >> pair_index(n, u, v) & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Precomputed pair-index remapping for each permutation.
pub struct PermTable {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
    moves: Vec<Vec<usize>>,
}

impl PermTable {
    pub fn new(n: usize) -> Self {
        let perms = permutations(n);
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let moves = perms
            .iter()
            .map(|p| pairs.iter().map(|&(u, v)| pair_index(n, p[u], p[v])).collect())
            .collect();
        Self { n, perms, moves }
    }

    pub fn apply(&self, which: usize, mask: u32) -> u32 {
        self.moves[which]
            .iter()
            .enumerate()
            .fold(0, |m, (i, &j)| m | (mask >> i & 1) << j)
    }

    /// Smallest mask over all relabelings.
    pub fn canonical(&self, mask: u32) -> u32 {
        (0..self.perms.len()).map(|p| self.apply(p, mask)).min().unwrap()
    }

    /// Some permutation carrying `a` onto `b`, by exhaustion.
    pub fn find(&self, a: u32, b: u32) -> Option<&[usize]> {
        (0..self.perms.len())
            .find(|&p| self.apply(p, a) == b)
            .map(|p| self.perms[p].as_slice())
    }
}

/// One representative (the canonical mask) per isomorphism class on `n` vertices.
pub fn class_representatives(table: &PermTable) -> Vec<u32> {
    let n = table.n;
    let pairs = n * n.saturating_sub(1) / 2;
    (0..1u32 << pairs)
        .filter(|&m| table.canonical(m) == m)
        .collect()
}

pub fn seeded_graph(n: usize, p: f64, seed: u64) -> Graph {
    random_graph(n, p, &mut SplitMix64::new(seed)).unwrap()
}

/// Graph on up to `max_n` vertices with an arbitrary edge set.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// As `arb_graph` but with at least one edge.
pub fn arb_graph_with_edge(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("needs an edge", |g| g.edge_count() > 0)
}
