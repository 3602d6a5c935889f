use thiserror::Error;

use crate::graph::{is_isomorphism, is_proper_coloring, is_subgraph_of, Coloring, SubgraphRef, VertexMap};
use crate::keygen::{GcSgipPublic, PublicKey, SgipPublic};
use crate::protocol::{verify, Challenge, Commitment, RejectReason, Response, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractError {
    /// One of the two responses does not verify, so there is nothing to extract.
    #[error("response to b={} rejected: {reason}", .challenge.bit())]
    Rejected {
        challenge: Challenge,
        reason: RejectReason,
    },
    /// Both responses verify but the witness check failed; indicates a bug.
    #[error("extracted witness failed its check: {0}")]
    InvalidWitness(&'static str),
}

fn check(public: &PublicKey, c: &Commitment, b: Challenge, r: &Response) -> Result<(), ExtractError> {
    match verify(public, c, b, r) {
        Verdict::Accept => Ok(()),
        Verdict::Reject(reason) => Err(ExtractError::Rejected {
            challenge: b,
            reason,
        }),
    }
}

/// For each dense index of `s`, the dense index of its image in `s.image(beta)`.
fn dense_transport(s: &SubgraphRef, beta: &VertexMap, image: &SubgraphRef) -> Vec<usize> {
    s.vertices()
        .iter()
        .map(|&x| {
            image
                .dense_index(beta.apply(x))
                .expect("image contains every mapped vertex")
        })
        .collect()
}

/// From accepted answers to both bits for one SGIP commitment, builds a
/// subgraph of Ω isomorphic to Γ2: the image β(Γ) with the map μ∘β⁻¹.
pub fn extract_sgip_witness(
    public: &SgipPublic,
    c: &Commitment,
    r0: &Response,
    r1: &Response,
) -> Result<(SubgraphRef, VertexMap), ExtractError> {
    let key = PublicKey::Sgip(public.clone());
    check(&key, c, Challenge::Zero, r0)?;
    check(&key, c, Challenge::One, r1)?;
    let (Response::Map { map: beta }, Response::SubgraphAndMap { subgraph, map: mu }) = (r0, r1)
    else {
        unreachable!("verified responses have the expected variants")
    };
    let image = subgraph
        .image(beta)
        .map_err(|_| ExtractError::InvalidWitness("image of the revealed subgraph"))?;
    let mut images = vec![0; image.order()];
    for (i, j) in dense_transport(subgraph, beta, &image).into_iter().enumerate() {
        images[j] = mu.apply(i);
    }
    let pi = VertexMap::new(public.g2.order(), images)
        .map_err(|_| ExtractError::InvalidWitness("map into Γ2"))?;
    let graph = image
        .to_graph()
        .map_err(|_| ExtractError::InvalidWitness("subgraph of Ω"))?;
    if !is_subgraph_of(&image, &public.omega) {
        return Err(ExtractError::InvalidWitness("subgraph of Ω"));
    }
    if !is_isomorphism(&pi, &graph, &public.g2).unwrap_or(false) {
        return Err(ExtractError::InvalidWitness("isomorphism onto Γ2"));
    }
    Ok((image, pi))
}

/// From accepted answers to both bits for one GCSGIP commitment, builds an
/// order-n subgraph of Γ with a proper k-coloring: the image β(s) with the
/// revealed colors carried along β.
pub fn extract_gcsgip_witness(
    public: &GcSgipPublic,
    c: &Commitment,
    r0: &Response,
    r1: &Response,
) -> Result<(SubgraphRef, Coloring), ExtractError> {
    let key = PublicKey::GcSgip(public.clone());
    check(&key, c, Challenge::Zero, r0)?;
    check(&key, c, Challenge::One, r1)?;
    let (Response::Map { map: beta }, Response::ColoredSubgraph { subgraph, coloring }) = (r0, r1)
    else {
        unreachable!("verified responses have the expected variants")
    };
    let image = subgraph
        .image(beta)
        .map_err(|_| ExtractError::InvalidWitness("image of the revealed subgraph"))?;
    let mut colors = vec![1; image.order()];
    for (i, j) in dense_transport(subgraph, beta, &image).into_iter().enumerate() {
        colors[j] = coloring.color(i);
    }
    let colored = Coloring::new(coloring.k(), colors)
        .map_err(|_| ExtractError::InvalidWitness("coloring range"))?;
    if image.order() != public.n || !is_subgraph_of(&image, &public.gamma) {
        return Err(ExtractError::InvalidWitness("order-n subgraph of Γ"));
    }
    let graph = image
        .to_graph()
        .map_err(|_| ExtractError::InvalidWitness("order-n subgraph of Γ"))?;
    if colored.k() > public.k || !is_proper_coloring(&colored, &graph).unwrap_or(false) {
        return Err(ExtractError::InvalidWitness("proper k-coloring"));
    }
    Ok((image, colored))
}
