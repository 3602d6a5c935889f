use crate::graph::{AdjacencyIndex, Graph, Vertex, VertexMap};

/// Outcome of a bounded subgraph-embedding search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbeddingSearch {
    Found(VertexMap),
    /// The whole search space was explored without a match.
    Exhausted,
    /// `nodes` candidate assignments were tried without resolution.
    BudgetExceeded { nodes: u64 },
}

impl EmbeddingSearch {
    pub fn found(self) -> Option<VertexMap> {
        match self {
            EmbeddingSearch::Found(m) => Some(m),
            _ => None,
        }
    }
}

/// Matching order: repeatedly take the unplaced pattern vertex with the most
/// already-placed neighbors, then highest degree, then lowest id.
fn matching_order(pattern: &Graph) -> Vec<Vertex> {
    let n = pattern.order();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], pattern.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in pattern.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    pattern: &'a Graph,
    host: &'a Graph,
    index: AdjacencyIndex<'a>,
    order: Vec<Vertex>,
    /// Pattern neighbors of `order[i]` placed before position `i`.
    back_links: Vec<Vec<Vertex>>,
    mapping: Vec<Option<Vertex>>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Done,
    Dead,
    OutOfBudget,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> Step {
        if depth == self.order.len() {
            return Step::Done;
        }
        let u = self.order[depth];
        let need = self.pattern.degree(u);
        let candidates: Vec<Vertex> = match self.back_links[depth].first() {
            Some(&anchor) => self.host.neighbors(self.mapping[anchor].unwrap()).to_vec(),
            None => (0..self.host.order()).collect(),
        };
        for w in candidates {
            if self.used[w] || self.host.degree(w) < need {
                continue;
            }
            if !self.back_links[depth]
                .iter()
                .all(|&p| self.index.contains(self.mapping[p].unwrap(), w))
            {
                continue;
            }
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            self.mapping[u] = Some(w);
            self.used[w] = true;
            match self.extend(depth + 1) {
                Step::Dead => {}
                other => return other,
            }
            self.mapping[u] = None;
            self.used[w] = false;
        }
        Step::Dead
    }
}

/// Backtracking search for an injective, edge-preserving map of `pattern`
/// into `host` (non-induced). Candidates are pruned by degree and by
/// adjacency to the images of already-placed neighbors; every tried
/// assignment counts one node against `node_budget`.
pub fn find_embedding(pattern: &Graph, host: &Graph, node_budget: u64) -> EmbeddingSearch {
    if pattern.order() > host.order() || pattern.edge_count() > host.edge_count() {
        return EmbeddingSearch::Exhausted;
    }
    if pattern.order() == 0 {
        return EmbeddingSearch::Found(VertexMap::new(host.order(), Vec::new()).unwrap());
    }
    let order = matching_order(pattern);
    let mut position = vec![0; pattern.order()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let back_links = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            pattern
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| position[w] < i)
                .collect()
        })
        .collect();
    let mut search = Search {
        pattern,
        host,
        index: AdjacencyIndex::new(host),
        order,
        back_links,
        mapping: vec![None; pattern.order()],
        used: vec![false; host.order()],
        nodes: 0,
        budget: node_budget,
    };
    match search.extend(0) {
        Step::Done => {
            let images = search.mapping.iter().map(|m| m.unwrap()).collect();
            EmbeddingSearch::Found(VertexMap::new(host.order(), images).unwrap())
        }
        Step::Dead => EmbeddingSearch::Exhausted,
        Step::OutOfBudget => EmbeddingSearch::BudgetExceeded {
            nodes: search.nodes,
        },
    }
}
