use super::{Challenge, Commitment, RejectReason, Response, Verdict};
use crate::graph::{
    image_covers, is_embedding, is_homomorphism, is_isomorphism, is_proper_coloring,
    is_subgraph_of, Coloring, Graph, GraphError, SubgraphRef, VertexMap,
};
use crate::keygen::PublicKey;

type Check = Result<(), RejectReason>;

fn require(ok: Result<bool, GraphError>, reason: RejectReason) -> Check {
    match ok {
        Ok(true) => Ok(()),
        Ok(false) => Err(reason),
        Err(_) => Err(RejectReason::DimensionMismatch),
    }
}

fn dims(f: &VertexMap, g: &Graph, h: &Graph) -> Check {
    if f.domain_order() == g.order() && f.codomain_order() == h.order() {
        Ok(())
    } else {
        Err(RejectReason::DimensionMismatch)
    }
}

fn surjective_hom(f: &VertexMap, g: &Graph, h: &Graph) -> Check {
    dims(f, g, h)?;
    require(is_homomorphism(f, g, h), RejectReason::NotHomomorphism)?;
    require(image_covers(f, g, h), RejectReason::NotSurjective)
}

fn embedding(f: &VertexMap, g: &Graph, host: &Graph) -> Check {
    dims(f, g, host)?;
    require(is_embedding(f, g, host), RejectReason::NotEmbedding)
}

fn isomorphism(f: &VertexMap, g: &Graph, h: &Graph) -> Check {
    dims(f, g, h)?;
    require(is_isomorphism(f, g, h), RejectReason::NotIsomorphism)
}

/// Subgraph of the commitment, returned as a standalone graph.
fn revealed_subgraph(s: &SubgraphRef, commitment: &Graph) -> Result<Graph, RejectReason> {
    if s.host_order() != commitment.order() {
        return Err(RejectReason::DimensionMismatch);
    }
    if !is_subgraph_of(s, commitment) {
        return Err(RejectReason::NotSubgraph);
    }
    s.to_graph().map_err(|_| RejectReason::DimensionMismatch)
}

fn proper_within(c: &Coloring, g: &Graph, k: u32) -> Check {
    if c.len() != g.order() {
        return Err(RejectReason::DimensionMismatch);
    }
    // The colors used count, not the declared bound.
    if c.colors().iter().any(|&x| x > k) {
        return Err(RejectReason::ColorBoundExceeded);
    }
    require(is_proper_coloring(c, g), RejectReason::ImproperColoring)
}

fn check(public: &PublicKey, c: &Commitment, b: Challenge, r: &Response) -> Check {
    if c.kind != public.kind() {
        return Err(RejectReason::KindMismatch);
    }
    let graph = c.graph.as_ref();
    match (public, b, r) {
        (PublicKey::Gh(p), Challenge::Zero, Response::Map { map }) => {
            surjective_hom(map, graph, &p.g1)
        }
        (PublicKey::Gh(p), Challenge::One, Response::Map { map }) => {
            surjective_hom(map, graph, &p.g2)
        }
        (PublicKey::Sgip(p), Challenge::Zero, Response::Map { map }) => {
            embedding(map, graph, &p.omega)
        }
        (PublicKey::Sgip(p), Challenge::One, Response::SubgraphAndMap { subgraph, map }) => {
            // Cheap order checks before walking the subgraph's edges.
            if map.domain_order() != subgraph.order() || map.codomain_order() != p.g2.order() {
                return Err(RejectReason::DimensionMismatch);
            }
            if subgraph.order() != p.g2.order() {
                return Err(RejectReason::NotIsomorphism);
            }
            let sub = revealed_subgraph(subgraph, graph)?;
            isomorphism(map, &sub, &p.g2)
        }
        (PublicKey::Gc(p), Challenge::Zero, Response::Map { map }) => {
            isomorphism(map, &p.gamma, graph)
        }
        (PublicKey::Gc(p), Challenge::One, Response::ColoringOnly { coloring }) => {
            proper_within(coloring, graph, p.k)
        }
        (PublicKey::GcSgip(p), Challenge::Zero, Response::Map { map }) => {
            embedding(map, graph, &p.gamma)
        }
        (PublicKey::GcSgip(p), Challenge::One, Response::ColoredSubgraph { subgraph, coloring }) => {
            let sub = revealed_subgraph(subgraph, graph)?;
            if sub.order() != p.n {
                return Err(RejectReason::OrderMismatch);
            }
            proper_within(coloring, &sub, p.k)
        }
        _ => Err(RejectReason::WrongVariant),
    }
}

/// Step 4. Total: any input, however malformed, yields a verdict.
pub fn verify(public: &PublicKey, c: &Commitment, b: Challenge, r: &Response) -> Verdict {
    match check(public, c, b, r) {
        Ok(()) => Verdict::Accept,
        Err(reason) => Verdict::Reject(reason),
    }
}
