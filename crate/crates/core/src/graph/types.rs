use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: Vertex, order: usize },
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("{what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("map is not injective")]
    NotInjective,
    #[error("vertex {0} has no image inside the target subgraph")]
    OutsideSubgraph(Vertex),
    #[error("edge {{{0}, {1}}} has an endpoint outside the subgraph vertex set")]
    DanglingEdge(Vertex, Vertex),
    #[error("color {color} at vertex {vertex} outside 1..={k}")]
    ColorOutOfRange { vertex: Vertex, color: Color, k: Color },
    #[error("color bound must be at least 1")]
    ZeroColorBound,
    #[error("class {0} is empty")]
    EmptyClass(Vertex),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
}

pub(crate) fn canonical(u: Vertex, v: Vertex) -> (Vertex, Vertex) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected loop-free graph on vertices `0..order`.
///
/// Edges are stored once as `(min, max)` in sorted order, with sorted
/// neighbor lists alongside for adjacency queries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    edges: Vec<(Vertex, Vertex)>,
    neighbors: Vec<Vec<Vertex>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("order", &self.order)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Validating constructor; edges may be given in any order and orientation.
    pub fn new(
        order: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            for x in [u, v] {
                if x >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order });
                }
            }
            list.push(canonical(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(order, list))
    }

    /// Builds from canonical, sorted, duplicate-free edges.
    pub(crate) fn from_sorted(order: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|&(u, v)| u < v && v < order));
        let mut neighbors = vec![Vec::new(); order];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Self {
            order,
            edges,
            neighbors,
        }
    }

    /// Canonicalizes, sorts and dedups edges known to be loop-free and in range.
    pub(crate) fn from_unsorted(order: usize, mut edges: Vec<(Vertex, Vertex)>) -> Self {
        for e in &mut edges {
            *e = canonical(e.0, e.1);
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted(order, edges)
    }

    pub fn empty(order: usize) -> Self {
        Self::from_sorted(order, Vec::new())
    }

    pub fn complete(order: usize) -> Self {
        let edges = (0..order)
            .flat_map(|u| (u + 1..order).map(move |v| (u, v)))
            .collect();
        Self::from_sorted(order, edges)
    }

    pub fn path(order: usize) -> Self {
        Self::from_sorted(order, (1..order).map(|v| (v - 1, v)).collect())
    }

    /// Cycle on `order >= 3` vertices.
    pub fn cycle(order: usize) -> Self {
        assert!(order >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        edges.push((0, order - 1));
        Self::from_unsorted(order, edges)
    }

    /// Vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
            .collect();
        Self::from_sorted(self.order + other.order, edges)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        if u >= self.order || v >= self.order || u == v {
            return false;
        }
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        d.sort_unstable();
        d
    }

    pub fn is_connected(&self) -> bool {
        if self.order == 0 {
            return true;
        }
        let mut seen = vec![false; self.order];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.neighbors[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.order
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side: Vec<Option<bool>> = vec![None; self.order];
        for start in 0..self.order {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let su = side[u].unwrap();
                for &w in &self.neighbors[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            stack.push(w);
                        }
                        Some(sw) if sw == su => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

/// Total map from `0..domain_order` into `0..codomain_order`.
///
/// Carrier for homomorphisms, embeddings, isomorphisms and their compositions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVertexMap", into = "RawVertexMap")]
pub struct VertexMap {
    codomain_order: usize,
    images: Vec<Vertex>,
}

#[derive(Serialize, Deserialize)]
struct RawVertexMap {
    domain_order: usize,
    codomain_order: usize,
    images: Vec<Vertex>,
}

impl TryFrom<RawVertexMap> for VertexMap {
    type Error = GraphError;

    fn try_from(raw: RawVertexMap) -> Result<Self, Self::Error> {
        if raw.images.len() != raw.domain_order {
            return Err(GraphError::DimensionMismatch {
                what: "domain_order vs images",
                expected: raw.domain_order,
                found: raw.images.len(),
            });
        }
        VertexMap::new(raw.codomain_order, raw.images)
    }
}

impl From<VertexMap> for RawVertexMap {
    fn from(m: VertexMap) -> Self {
        RawVertexMap {
            domain_order: m.images.len(),
            codomain_order: m.codomain_order,
            images: m.images,
        }
    }
}

impl VertexMap {
    pub fn new(codomain_order: usize, images: Vec<Vertex>) -> Result<Self, GraphError> {
        if let Some(&bad) = images.iter().find(|&&x| x >= codomain_order) {
            return Err(GraphError::VertexOutOfRange {
                vertex: bad,
                order: codomain_order,
            });
        }
        Ok(Self {
            codomain_order,
            images,
        })
    }

    pub(crate) fn new_unchecked(codomain_order: usize, images: Vec<Vertex>) -> Self {
        debug_assert!(images.iter().all(|&x| x < codomain_order));
        Self {
            codomain_order,
            images,
        }
    }

    pub fn identity(order: usize) -> Self {
        Self::new_unchecked(order, (0..order).collect())
    }

    pub fn constant(domain_order: usize, codomain_order: usize, target: Vertex) -> Self {
        assert!(target < codomain_order);
        Self::new_unchecked(codomain_order, vec![target; domain_order])
    }

    pub fn domain_order(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    pub fn images(&self) -> &[Vertex] {
        &self.images
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.images[v]
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain_order];
        for &x in &self.images {
            if std::mem::replace(&mut hit[x], true) {
                return false;
            }
        }
        true
    }

    pub fn is_bijective(&self) -> bool {
        self.images.len() == self.codomain_order && self.is_injective()
    }

    pub fn inverse(&self) -> Result<VertexMap, GraphError> {
        if !self.is_bijective() {
            return Err(GraphError::NotBijective);
        }
        let mut inv = vec![0; self.images.len()];
        for (v, &x) in self.images.iter().enumerate() {
            inv[x] = v;
        }
        Ok(Self::new_unchecked(self.images.len(), inv))
    }

    /// Re-expresses a map whose images all lie in `s`'s vertex set as a map
    /// into the dense indices of `s` (the vertex numbering of `s.to_graph()`).
    pub fn corestrict(&self, s: &SubgraphRef) -> Result<VertexMap, GraphError> {
        if self.codomain_order != s.host_order() {
            return Err(GraphError::DimensionMismatch {
                what: "map codomain vs subgraph host",
                expected: s.host_order(),
                found: self.codomain_order,
            });
        }
        let images = self
            .images
            .iter()
            .map(|&x| s.dense_index(x).ok_or(GraphError::OutsideSubgraph(x)))
            .collect::<Result<_, _>>()?;
        Ok(Self::new_unchecked(s.order(), images))
    }
}

/// Vertex colouring with values in `1..=k`. Properness is checked by
/// [`crate::graph::is_proper_coloring`], not enforced here.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawColoring", into = "RawColoring")]
pub struct Coloring {
    k: Color,
    colors: Vec<Color>,
}

#[derive(Serialize, Deserialize)]
struct RawColoring {
    k: Color,
    colors: Vec<Color>,
}

impl TryFrom<RawColoring> for Coloring {
    type Error = GraphError;
    fn try_from(raw: RawColoring) -> Result<Self, Self::Error> {
        Coloring::new(raw.k, raw.colors)
    }
}

impl From<Coloring> for RawColoring {
    fn from(c: Coloring) -> Self {
        RawColoring {
            k: c.k,
            colors: c.colors,
        }
    }
}

impl Coloring {
    pub fn new(k: Color, colors: Vec<Color>) -> Result<Self, GraphError> {
        if k == 0 {
            return Err(GraphError::ZeroColorBound);
        }
        if let Some((vertex, &color)) = colors
            .iter()
            .enumerate()
            .find(|(_, &c)| c == 0 || c > k)
        {
            return Err(GraphError::ColorOutOfRange { vertex, color, k });
        }
        Ok(Self { k, colors })
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Coloring of the target of a bijection: `result[perm(v)] = self[v]`.
    pub fn push_forward(&self, perm: &VertexMap) -> Result<Coloring, GraphError> {
        if perm.domain_order() != self.len() {
            return Err(GraphError::DimensionMismatch {
                what: "permutation domain vs coloring length",
                expected: self.len(),
                found: perm.domain_order(),
            });
        }
        if !perm.is_bijective() {
            return Err(GraphError::NotBijective);
        }
        let mut colors = vec![0; self.len()];
        for (v, &c) in self.colors.iter().enumerate() {
            colors[perm.apply(v)] = c;
        }
        Ok(Self { k: self.k, colors })
    }
}

/// A (not necessarily induced) subgraph of a host graph, by vertex and edge subsets.
///
/// Vertices are kept sorted and distinct and edges canonical and sorted, so
/// two references to the same subgraph compare equal. Whether the subgraph
/// actually lies in a given host is the predicate
/// [`crate::graph::is_subgraph_of`]. The lists are shared, so clones are cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSubgraph", into = "RawSubgraph")]
pub struct SubgraphRef {
    host_order: usize,
    vertices: Arc<[Vertex]>,
    edges: Arc<[(Vertex, Vertex)]>,
}

#[derive(Serialize, Deserialize)]
struct RawSubgraph {
    host_order: usize,
    vertices: Vec<Vertex>,
    edges: Vec<(Vertex, Vertex)>,
}

impl TryFrom<RawSubgraph> for SubgraphRef {
    type Error = GraphError;
    fn try_from(raw: RawSubgraph) -> Result<Self, Self::Error> {
        SubgraphRef::new(raw.host_order, raw.vertices, raw.edges)
    }
}

impl From<SubgraphRef> for RawSubgraph {
    fn from(s: SubgraphRef) -> Self {
        RawSubgraph {
            host_order: s.host_order,
            vertices: s.vertices.to_vec(),
            edges: s.edges.to_vec(),
        }
    }
}

impl SubgraphRef {
    /// Normalizes the vertex and edge lists; rejects loops and duplicated entries.
    pub fn new(
        host_order: usize,
        mut vertices: Vec<Vertex>,
        edges: Vec<(Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DimensionMismatch {
                what: "duplicate subgraph vertex",
                expected: 1,
                found: w[0],
            });
        }
        let mut list = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            list.push(canonical(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self {
            host_order,
            vertices: vertices.into(),
            edges: list.into(),
        })
    }

    pub fn whole(host: &Graph) -> Self {
        Self {
            host_order: host.order(),
            vertices: (0..host.order()).collect(),
            edges: host.edges().into(),
        }
    }

    pub fn host_order(&self) -> usize {
        self.host_order
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Number of vertices in the subgraph.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Position of host vertex `v` in the sorted vertex list.
    pub fn dense_index(&self, v: Vertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    /// Standalone graph with vertices re-indexed densely in increasing host order.
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &(u, v) in self.edges.iter() {
            match (self.dense_index(u), self.dense_index(v)) {
                (Some(a), Some(b)) => edges.push((a, b)),
                _ => return Err(GraphError::DanglingEdge(u, v)),
            }
        }
        // Dense indexing is monotone, so canonical sorted order is preserved.
        Ok(Graph::from_sorted(self.vertices.len(), edges))
    }

    /// Image of the subgraph under an injective map defined on its host.
    pub fn image(&self, f: &VertexMap) -> Result<SubgraphRef, GraphError> {
        if f.domain_order() != self.host_order {
            return Err(GraphError::DimensionMismatch {
                what: "map domain vs subgraph host",
                expected: self.host_order,
                found: f.domain_order(),
            });
        }
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= self.host_order) {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.host_order,
            });
        }
        let vertices = self.vertices.iter().map(|&v| f.apply(v)).collect();
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| {
                if u >= self.host_order || v >= self.host_order {
                    Err(GraphError::VertexOutOfRange {
                        vertex: u.max(v),
                        order: self.host_order,
                    })
                } else {
                    Ok((f.apply(u), f.apply(v)))
                }
            })
            .collect::<Result<_, _>>()?;
        SubgraphRef::new(f.codomain_order(), vertices, edges).map_err(|e| match e {
            GraphError::Loop(_) | GraphError::DuplicateEdge(..) => GraphError::NotInjective,
            GraphError::DimensionMismatch { .. } => GraphError::NotInjective,
            other => other,
        })
    }
}
