use serde::Serialize;

use crate::graph::Graph;

/// Per-cell summary: the cell id, its size, and the number of neighbors each
/// member has in every cell (identical for all members once equitable).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellSignature {
    pub cell: usize,
    pub size: usize,
    pub profile: Vec<(usize, usize)>,
}

/// Result of colour refinement: a cell id per vertex plus a
/// relabeling-invariant signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinementPartition {
    cells: Vec<usize>,
    cell_count: usize,
    signature: Vec<CellSignature>,
}

impl RefinementPartition {
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn cell_count(&self) -> usize {
        self.cell_count
    }

    pub fn signature(&self) -> &[CellSignature] {
        &self.signature
    }

    pub fn is_discrete(&self) -> bool {
        self.cell_count == self.cells.len()
    }

    /// Members of each cell, cells in id order, members ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.cell_count];
        for (v, &c) in self.cells.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    /// Any two vertices of one cell have the same number of neighbors in every cell.
    pub fn is_equitable(&self, g: &Graph) -> bool {
        let profile = |v: usize| {
            let mut counts = vec![0usize; self.cell_count];
            for &w in g.neighbors(v) {
                counts[self.cells[w]] += 1;
            }
            counts
        };
        self.members().iter().all(|members| {
            let first = members.first().map(|&v| profile(v));
            members.iter().all(|&v| Some(profile(v)) == first)
        })
    }
}

/// Maps arbitrary labels to dense ranks preserving their order.
fn normalize(values: &[usize]) -> (Vec<usize>, usize) {
    let mut distinct = values.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let ranks = values
        .iter()
        .map(|v| distinct.binary_search(v).unwrap())
        .collect();
    (ranks, distinct.len())
}

/// Iterated neighbor-profile splitting until the cell count stops growing.
///
/// Each round keys every vertex by `(own cell, sorted multiset of neighbor
/// cells)` and renumbers cells by the lexicographic rank of their key. The
/// old cell leads the key, so cells never merge and relative order is kept;
/// the fixed point is the coarsest equitable refinement of the input.
pub(crate) fn refine_colors(g: &Graph, initial: &[usize]) -> (Vec<usize>, usize) {
    let n = g.order();
    let (mut colors, mut count) = normalize(initial);
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let keys: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut next = vec![0; n];
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && keys[order[i]] != keys[order[i - 1]] {
                rank += 1;
            }
            next[order[i]] = rank;
        }
        let next_count = if n == 0 { 0 } else { rank + 1 };
        if next_count == count {
            return (colors, count);
        }
        colors = next;
        count = next_count;
    }
}

/// Coarsest equitable refinement of `initial` (the all-equal partition when
/// absent, whose first refinement round is the degree partition).
pub fn wl_refine(g: &Graph, initial: Option<&[usize]>) -> RefinementPartition {
    let start = match initial {
        Some(cells) => {
            assert_eq!(cells.len(), g.order(), "initial partition length");
            cells.to_vec()
        }
        None => vec![0; g.order()],
    };
    let (cells, cell_count) = refine_colors(g, &start);
    let mut sizes = vec![0usize; cell_count];
    let mut representative = vec![usize::MAX; cell_count];
    for (v, &c) in cells.iter().enumerate() {
        sizes[c] += 1;
        representative[c] = representative[c].min(v);
    }
    let signature = (0..cell_count)
        .map(|c| {
            let mut counts = std::collections::BTreeMap::new();
            for &w in g.neighbors(representative[c]) {
                *counts.entry(cells[w]).or_insert(0) += 1;
            }
            CellSignature {
                cell: c,
                size: sizes[c],
                profile: counts.into_iter().collect(),
            }
        })
        .collect();
    RefinementPartition {
        cells,
        cell_count,
        signature,
    }
}
