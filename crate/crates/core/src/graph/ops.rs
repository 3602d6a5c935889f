use super::types::{canonical, Graph, GraphError, SubgraphRef, Vertex, VertexMap};

/// Tensor (categorical) product. Vertex `(u, v)` is encoded row-major as
/// `u * g2.order() + v`; `(u1, v1)` and `(u2, v2)` are adjacent iff
/// `u1u2` is an edge of `g1` and `v1v2` is an edge of `g2`.
pub fn tensor_product(g1: &Graph, g2: &Graph) -> Graph {
    let n2 = g2.order();
    let enc = |u: Vertex, v: Vertex| u * n2 + v;
    let mut edges = Vec::with_capacity(2 * g1.edge_count() * g2.edge_count());
    for &(u1, u2) in g1.edges() {
        for &(v1, v2) in g2.edges() {
            edges.push(canonical(enc(u1, v1), enc(u2, v2)));
            edges.push(canonical(enc(u1, v2), enc(u2, v1)));
        }
    }
    edges.sort_unstable();
    Graph::from_sorted(g1.order() * n2, edges)
}

/// First and second coordinate projections of `tensor_product(g1, g2)`.
pub fn tensor_projections(g1: &Graph, g2: &Graph) -> (VertexMap, VertexMap) {
    let n2 = g2.order();
    let total = g1.order() * n2;
    let first = VertexMap::new_unchecked(g1.order(), (0..total).map(|x| x / n2).collect());
    let second = VertexMap::new_unchecked(n2, (0..total).map(|x| x % n2).collect());
    (first, second)
}

/// Composition applying `f` first, then `g`: the result sends `v` to `g(f(v))`.
pub fn compose(f: &VertexMap, g: &VertexMap) -> Result<VertexMap, GraphError> {
    if f.codomain_order() != g.domain_order() {
        return Err(GraphError::DimensionMismatch {
            what: "first codomain vs second domain",
            expected: g.domain_order(),
            found: f.codomain_order(),
        });
    }
    let images = f.images().iter().map(|&x| g.apply(x)).collect();
    Ok(VertexMap::new_unchecked(g.codomain_order(), images))
}

/// Restriction of `f` to the vertices of `s`, re-indexed densely `0..|s|`
/// in increasing vertex order. Images are unchanged.
pub fn restrict(f: &VertexMap, s: &SubgraphRef) -> Result<VertexMap, GraphError> {
    let mut images = Vec::with_capacity(s.order());
    for &v in s.vertices() {
        if v >= f.domain_order() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: f.domain_order(),
            });
        }
        images.push(f.apply(v));
    }
    Ok(VertexMap::new_unchecked(f.codomain_order(), images))
}

/// Graph `h` with `{perm(u), perm(v)}` an edge iff `{u, v}` is an edge of `g`.
pub fn relabel(g: &Graph, perm: &VertexMap) -> Result<Graph, GraphError> {
    if perm.domain_order() != g.order() {
        return Err(GraphError::DimensionMismatch {
            what: "permutation domain vs graph order",
            expected: g.order(),
            found: perm.domain_order(),
        });
    }
    if !perm.is_bijective() {
        return Err(GraphError::NotBijective);
    }
    let edges = g
        .edges()
        .iter()
        .map(|&(u, v)| (perm.apply(u), perm.apply(v)))
        .collect();
    Ok(Graph::from_unsorted(g.order(), edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{image_covers, is_homomorphism, is_isomorphism};

    /// Independent enumeration of the tensor product definition.
    fn tensor_by_definition(g1: &Graph, g2: &Graph) -> Vec<(usize, usize)> {
        let n2 = g2.order();
        let total = g1.order() * n2;
        let mut out = Vec::new();
        for a in 0..total {
            for b in a + 1..total {
                let (u1, v1) = (a / n2, a % n2);
                let (u2, v2) = (b / n2, b % n2);
                if g1.has_edge(u1, u2) && g2.has_edge(v1, v2) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    #[test]
    fn k2_times_k2_is_two_disjoint_edges() {
        let k2 = Graph::complete(2);
        let t = tensor_product(&k2, &k2);
        assert_eq!(t.order(), 4);
        // (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3
        assert_eq!(t.edges(), &[(0, 3), (1, 2)]);
        assert_eq!(t.edges(), tensor_by_definition(&k2, &k2).as_slice());
    }

    #[test]
    fn k3_times_k3_has_18_edges() {
        let k3 = Graph::complete(3);
        let t = tensor_product(&k3, &k3);
        assert_eq!(t.order(), 9);
        assert_eq!(t.edge_count(), 18);
        assert_eq!(t.edges(), tensor_by_definition(&k3, &k3).as_slice());
    }

    #[test]
    fn product_with_single_vertex_is_edgeless() {
        let g = Graph::cycle(5);
        let t = tensor_product(&g, &Graph::empty(1));
        assert_eq!(t.order(), 5);
        assert_eq!(t.edge_count(), 0);
    }

    #[test]
    fn projections_of_k2_product_cover_factor() {
        let k2 = Graph::complete(2);
        let t = tensor_product(&k2, &k2);
        let (p1, p2) = tensor_projections(&k2, &k2);
        for p in [&p1, &p2] {
            assert!(is_homomorphism(p, &t, &k2).unwrap());
            assert!(image_covers(p, &t, &k2).unwrap());
        }
    }

    #[test]
    fn compose_with_identity() {
        let f = VertexMap::new(3, vec![2, 0, 1, 1]).unwrap();
        assert_eq!(compose(&VertexMap::identity(4), &f).unwrap(), f);
        assert_eq!(compose(&f, &VertexMap::identity(3)).unwrap(), f);
        assert!(compose(&f, &VertexMap::identity(4)).is_err());
    }

    #[test]
    fn restrict_identity_to_two_vertices() {
        let s = SubgraphRef::new(4, vec![3, 1], vec![]).unwrap();
        let r = restrict(&VertexMap::identity(4), &s).unwrap();
        assert_eq!(r.images(), &[1, 3]);
        assert_eq!(r.codomain_order(), 4);
        let bad = SubgraphRef::new(4, vec![5], vec![]).unwrap();
        assert!(restrict(&VertexMap::identity(4), &bad).is_err());
    }

    #[test]
    fn relabel_roundtrip_and_isomorphism() {
        let g = Graph::new(5, [(0, 1), (1, 2), (2, 3), (0, 4)]).unwrap();
        let perm = VertexMap::new(5, vec![3, 0, 4, 1, 2]).unwrap();
        let h = relabel(&g, &perm).unwrap();
        assert_eq!(h.edge_count(), g.edge_count());
        assert!(is_isomorphism(&perm, &g, &h).unwrap());
        assert_eq!(relabel(&h, &perm.inverse().unwrap()).unwrap(), g);
        assert_eq!(relabel(&g, &VertexMap::identity(5)).unwrap(), g);
        assert_eq!(
            relabel(&g, &VertexMap::new(5, vec![0, 0, 1, 2, 3]).unwrap()),
            Err(GraphError::NotBijective)
        );
    }
}
