use super::AttackError;
use crate::graph::{tensor_product, tensor_projections, Graph, SubgraphRef};
use crate::keygen::PublicKey;
use crate::protocol::{Challenge, Commitment, ProtocolKind, Prover, ProverAbort, Response};
use crate::rng::SplitMix64;

/// Commits the tensor product of the two public graphs every round and
/// answers with a coordinate projection.
///
/// Against GH both projections are surjective homomorphisms, so every
/// challenge is answered. Against SGIP the same idea is tried with Ω and Γ2:
/// the first projection is not injective and the product is not isomorphic
/// to Γ2, so both answers fail.
#[derive(Clone, Debug)]
pub struct TensorForgery {
    kind: ProtocolKind,
    commitment: Commitment,
    zero: Response,
    one: Response,
}

fn require_edges(g1: &Graph, g2: &Graph) -> Result<(), AttackError> {
    if g1.edge_count() == 0 || g2.edge_count() == 0 {
        return Err(AttackError::Inapplicable(
            "both public graphs need at least one edge".into(),
        ));
    }
    Ok(())
}

/// The GH forgery: commit Γ1 ⊗ Γ2, answer b = 0 with the projection onto Γ1
/// and b = 1 with the projection onto Γ2.
pub fn tensor_forgery(g1: &Graph, g2: &Graph) -> Result<TensorForgery, AttackError> {
    require_edges(g1, g2)?;
    let product = tensor_product(g1, g2);
    let (first, second) = tensor_projections(g1, g2);
    Ok(TensorForgery {
        kind: ProtocolKind::Gh,
        commitment: Commitment::new(ProtocolKind::Gh, product),
        zero: Response::Map { map: first },
        one: Response::Map { map: second },
    })
}

impl TensorForgery {
    /// GH or SGIP public keys; other kinds are inapplicable.
    pub fn against(public: &PublicKey) -> Result<Self, AttackError> {
        match public {
            PublicKey::Gh(p) => tensor_forgery(&p.g1, &p.g2),
            PublicKey::Sgip(p) => {
                require_edges(&p.omega, &p.g2)?;
                let product = tensor_product(&p.omega, &p.g2);
                let (first, second) = tensor_projections(&p.omega, &p.g2);
                let whole = SubgraphRef::whole(&product);
                Ok(TensorForgery {
                    kind: ProtocolKind::Sgip,
                    commitment: Commitment::new(ProtocolKind::Sgip, product),
                    zero: Response::Map { map: first },
                    one: Response::SubgraphAndMap {
                        subgraph: whole,
                        map: second,
                    },
                })
            }
            other => Err(AttackError::Inapplicable(format!(
                "no tensor forgery for {} keys",
                other.kind()
            ))),
        }
    }

    pub fn commitment(&self) -> &Commitment {
        &self.commitment
    }

    pub fn response(&self, b: Challenge) -> &Response {
        match b {
            Challenge::Zero => &self.zero,
            Challenge::One => &self.one,
        }
    }
}

impl Prover for TensorForgery {
    type Round = ();

    fn kind(&self) -> ProtocolKind {
        self.kind
    }

    fn commit(&self, _rng: &mut SplitMix64) -> Result<(Commitment, ()), ProverAbort> {
        Ok((self.commitment.clone(), ()))
    }

    fn respond(&self, _round: (), b: Challenge) -> Result<Response, ProverAbort> {
        Ok(self.response(b).clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keygen::{GcPublic, GhPublic};
    use crate::protocol::{verify, Verdict};

    #[test]
    fn k3_forgery_passes_both_bits() {
        let public = PublicKey::Gh(GhPublic {
            g1: Graph::complete(3),
            g2: Graph::complete(3),
        });
        let f = TensorForgery::against(&public).unwrap();
        assert_eq!(f.commitment().graph.order(), 9);
        assert_eq!(f.commitment().graph.edge_count(), 18);
        for b in [Challenge::Zero, Challenge::One] {
            assert_eq!(verify(&public, f.commitment(), b, f.response(b)), Verdict::Accept);
        }
    }

    #[test]
    fn edgeless_factor_is_inapplicable() {
        assert!(matches!(
            tensor_forgery(&Graph::complete(3), &Graph::empty(4)),
            Err(AttackError::Inapplicable(_))
        ));
        let gc = PublicKey::Gc(GcPublic {
            gamma: Graph::complete(3),
            k: 3,
        });
        assert!(TensorForgery::against(&gc).is_err());
    }
}
