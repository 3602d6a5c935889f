//! Structural predicates over vertex maps and colorings.
//!
//! All predicates take the map first and the graphs second, and return
//! `Err(DimensionMismatch)` only when the map's declared domain or codomain
//! does not match the graphs it is checked against.

use super::types::{canonical, Coloring, Graph, GraphError, SubgraphRef, VertexMap};

const DENSE_LIMIT: usize = 2048;

/// Adjacency lookups with an edge bitmap for small graphs.
pub(crate) struct AdjacencyIndex<'a> {
    graph: &'a Graph,
    bits: Option<Vec<u64>>,
}

impl<'a> AdjacencyIndex<'a> {
    pub(crate) fn new(graph: &'a Graph) -> Self {
        let n = graph.order();
        let bits = (n <= DENSE_LIMIT).then(|| {
            let mut bits = vec![0u64; (n * n).div_ceil(64)];
            for &(u, v) in graph.edges() {
                for idx in [u * n + v, v * n + u] {
                    bits[idx / 64] |= 1 << (idx % 64);
                }
            }
            bits
        });
        Self { graph, bits }
    }

    #[inline]
    pub(crate) fn contains(&self, u: usize, v: usize) -> bool {
        match &self.bits {
            Some(bits) => {
                let idx = u * self.graph.order() + v;
                bits[idx / 64] >> (idx % 64) & 1 == 1
            }
            None => self.graph.has_edge(u, v),
        }
    }
}

fn check_dims(f: &VertexMap, g: &Graph, h: &Graph) -> Result<(), GraphError> {
    if f.domain_order() != g.order() {
        return Err(GraphError::DimensionMismatch {
            what: "map domain vs source order",
            expected: g.order(),
            found: f.domain_order(),
        });
    }
    if f.codomain_order() != h.order() {
        return Err(GraphError::DimensionMismatch {
            what: "map codomain vs target order",
            expected: h.order(),
            found: f.codomain_order(),
        });
    }
    Ok(())
}

fn preserves_edges(f: &VertexMap, g: &Graph, h: &Graph) -> bool {
    let index = AdjacencyIndex::new(h);
    g.edges()
        .iter()
        .all(|&(u, v)| index.contains(f.apply(u), f.apply(v)))
}

/// Every edge of `g` maps to an edge of `h`. Since `h` has no loops, an edge
/// whose endpoints collapse onto one vertex fails.
pub fn is_homomorphism(f: &VertexMap, g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    check_dims(f, g, h)?;
    Ok(preserves_edges(f, g, h))
}

/// The image of `g` under `f` is exactly `h`: every vertex of `h` is hit and
/// the set `{{f(u), f(v)} : uv in E(g)}` equals `E(h)`.
pub fn image_covers(f: &VertexMap, g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    check_dims(f, g, h)?;
    let n = h.order();
    let mut hit = vec![false; n];
    for &x in f.images() {
        hit[x] = true;
    }
    if hit.iter().any(|&b| !b) {
        return Ok(false);
    }
    let index = AdjacencyIndex::new(h);
    let mut covered = 0usize;
    if n <= DENSE_LIMIT {
        let mut marks = vec![0u64; (n * n).div_ceil(64)];
        for &(u, v) in g.edges() {
            let (a, b) = canonical(f.apply(u), f.apply(v));
            if a == b || !index.contains(a, b) {
                return Ok(false);
            }
            let idx = a * n + b;
            let word = &mut marks[idx / 64];
            let bit = 1u64 << (idx % 64);
            if *word & bit == 0 {
                *word |= bit;
                covered += 1;
            }
        }
    } else {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in g.edges() {
            let (a, b) = canonical(f.apply(u), f.apply(v));
            if a == b || !index.contains(a, b) {
                return Ok(false);
            }
            if seen.insert((a, b)) {
                covered += 1;
            }
        }
    }
    Ok(covered == h.edge_count())
}

/// Injective and edge-preserving (a non-induced monomorphism): `host` may have
/// extra edges among the image vertices.
pub fn is_embedding(f: &VertexMap, g: &Graph, host: &Graph) -> Result<bool, GraphError> {
    check_dims(f, g, host)?;
    Ok(f.is_injective() && preserves_edges(f, g, host))
}

/// Bijective, preserving adjacency and non-adjacency.
pub fn is_isomorphism(f: &VertexMap, g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    check_dims(f, g, h)?;
    // A bijective edge-preserving map between graphs with equal edge counts
    // maps E(g) onto E(h), hence also preserves non-adjacency.
    Ok(g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && f.is_bijective()
        && preserves_edges(f, g, h))
}

/// Adjacent vertices get distinct colors, all colors within `1..=k`.
pub fn is_proper_coloring(c: &Coloring, g: &Graph) -> Result<bool, GraphError> {
    if c.len() != g.order() {
        return Err(GraphError::DimensionMismatch {
            what: "coloring length vs graph order",
            expected: g.order(),
            found: c.len(),
        });
    }
    let k = c.k();
    Ok(c.colors().iter().all(|&x| (1..=k).contains(&x))
        && g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v)))
}

/// Every vertex of `s` is a host vertex and every edge of `s` is a host edge
/// between vertices of `s`.
pub fn is_subgraph_of(s: &SubgraphRef, host: &Graph) -> bool {
    s.host_order() == host.order()
        && s.vertices().iter().all(|&v| v < host.order())
        && s.edges().iter().all(|&(u, v)| {
            s.dense_index(u).is_some() && s.dense_index(v).is_some() && host.has_edge(u, v)
        })
}
