use super::{AttackError, CheatRound, GenericCheater};
use crate::graph::{is_proper_coloring, Color, Coloring, Graph};
use crate::keygen::{GcKeyPair, GcSgipKeyPair, KeyPair, PublicKey};
use crate::protocol::{
    Challenge, Commitment, HonestProver, ProtocolKind, Prover, ProverAbort, Response, RoundSecret,
    Transcript,
};
use crate::rng::SplitMix64;
use crate::solver::find_isomorphism;

/// Recovers a coloring of Γ from one observed GC round answered with b = 1.
///
/// Finds ψ: commitment → Γ and gives each vertex `w` of Γ the observed
/// color of `ψ⁻¹(w)`. Returns `None` when no isomorphism exists or the
/// transported coloring is not a proper coloring of Γ within bound `k`.
pub fn gi_key_recovery(
    gamma: &Graph,
    k: Color,
    commitment_graph: &Graph,
    coloring: &Coloring,
) -> Option<Coloring> {
    if coloring.len() != commitment_graph.order() || coloring.colors().iter().any(|&x| x > k) {
        return None;
    }
    let psi = find_isomorphism(commitment_graph, gamma)?;
    let mut colors = vec![1; gamma.order()];
    for (x, &w) in psi.images().iter().enumerate() {
        colors[w] = coloring.color(x);
    }
    let recovered = Coloring::new(k, colors).ok()?;
    is_proper_coloring(&recovered, gamma)
        .unwrap_or(false)
        .then_some(recovered)
}

/// What the isomorphism attack achieved on one observed round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecoveryAttempt {
    Recovered(KeyPair),
    /// Commitment and public graph differ in order, so they cannot be
    /// isomorphic and the solver is never run.
    OrderMismatch { commitment: usize, public: usize },
    NoIsomorphism,
    /// The response is not a b = 1 answer of the expected shape.
    UnusableResponse,
}

impl RecoveryAttempt {
    pub fn key(&self) -> Option<&KeyPair> {
        match self {
            RecoveryAttempt::Recovered(k) => Some(k),
            _ => None,
        }
    }
}

/// The isomorphism attack on one observed b = 1 round, for GC keys and its
/// adaptation to GCSGIP keys (map the revealed colored subgraph into Γ along
/// ψ). Inapplicable to GH and SGIP.
pub fn recover_from_round(
    public: &PublicKey,
    commitment: &Graph,
    response: &Response,
) -> Result<RecoveryAttempt, AttackError> {
    match (public, response) {
        (PublicKey::Gc(p), Response::ColoringOnly { coloring }) => {
            if commitment.order() != p.gamma.order() {
                return Ok(RecoveryAttempt::OrderMismatch {
                    commitment: commitment.order(),
                    public: p.gamma.order(),
                });
            }
            Ok(match gi_key_recovery(&p.gamma, p.k, commitment, coloring) {
                Some(coloring) => RecoveryAttempt::Recovered(KeyPair::Gc(GcKeyPair {
                    public: p.clone(),
                    coloring,
                })),
                None => RecoveryAttempt::NoIsomorphism,
            })
        }
        (PublicKey::GcSgip(p), Response::ColoredSubgraph { subgraph, coloring }) => {
            if commitment.order() != p.gamma.order() {
                return Ok(RecoveryAttempt::OrderMismatch {
                    commitment: commitment.order(),
                    public: p.gamma.order(),
                });
            }
            if subgraph.host_order() != commitment.order()
                || coloring.len() != subgraph.order()
                || coloring.colors().iter().any(|&x| x > p.k)
            {
                return Ok(RecoveryAttempt::UnusableResponse);
            }
            let Some(psi) = find_isomorphism(commitment, &p.gamma) else {
                return Ok(RecoveryAttempt::NoIsomorphism);
            };
            let Ok(image) = subgraph.image(&psi) else {
                return Ok(RecoveryAttempt::UnusableResponse);
            };
            let mut colors = vec![1; image.order()];
            for (i, &x) in subgraph.vertices().iter().enumerate() {
                let j = image.dense_index(psi.apply(x)).expect("image contains ψ(x)");
                colors[j] = coloring.color(i);
            }
            let key = KeyPair::GcSgip(GcSgipKeyPair {
                public: p.clone(),
                g1: image,
                coloring: Coloring::new(p.k, colors).expect("colors checked against k"),
            });
            Ok(if key.validate().is_ok() {
                RecoveryAttempt::Recovered(key)
            } else {
                RecoveryAttempt::UnusableResponse
            })
        }
        (PublicKey::Gc(_) | PublicKey::GcSgip(_), _) => Ok(RecoveryAttempt::UnusableResponse),
        (other, _) => Err(AttackError::Inapplicable(format!(
            "isomorphism key recovery targets gc and gcsgip keys, not {}",
            other.kind()
        ))),
    }
}

/// Malicious-verifier follow-up: learn from observed b = 1 rounds of honest
/// sessions, then impersonate. With a recovered key it runs the honest
/// protocol; otherwise it falls back to bit guessing.
#[derive(Clone, Debug)]
pub struct GiRecoveryImpersonator {
    kind: ProtocolKind,
    recovered: Option<HonestProver>,
    fallback: GenericCheater,
    attempts: Vec<RecoveryAttempt>,
}

pub enum ImpersonatorRound {
    Honest(RoundSecret),
    Guess(CheatRound),
}

impl GiRecoveryImpersonator {
    /// Tries every observed round until one yields a key.
    pub fn from_observations<'a>(
        public: &PublicKey,
        observed: impl IntoIterator<Item = (&'a Commitment, &'a Response)>,
    ) -> Result<Self, AttackError> {
        if !matches!(public, PublicKey::Gc(_) | PublicKey::GcSgip(_)) {
            return Err(AttackError::Inapplicable(format!(
                "isomorphism key recovery targets gc and gcsgip keys, not {}",
                public.kind()
            )));
        }
        let mut attempts = Vec::new();
        let mut recovered = None;
        for (c, r) in observed {
            let attempt = recover_from_round(public, &c.graph, r)?;
            if let Some(key) = attempt.key() {
                recovered = Some(HonestProver::new(key.clone()));
            }
            attempts.push(attempt);
            if recovered.is_some() {
                break;
            }
        }
        Ok(Self {
            kind: public.kind(),
            recovered,
            fallback: GenericCheater::new(public.clone()),
            attempts,
        })
    }

    /// Uses the accepted b = 1 rounds of a recorded session.
    pub fn from_transcript(public: &PublicKey, transcript: &Transcript) -> Result<Self, AttackError> {
        let observed = transcript.records.iter().filter_map(|r| {
            match (&r.commitment, &r.response) {
                (Some(c), Some(resp)) if r.challenge == Challenge::One && r.verdict.is_accept() => {
                    Some((c, resp))
                }
                _ => None,
            }
        });
        Self::from_observations(public, observed)
    }

    pub fn recovered_key(&self) -> Option<&KeyPair> {
        self.recovered.as_ref().map(|p| p.key())
    }

    pub fn attempts(&self) -> &[RecoveryAttempt] {
        &self.attempts
    }
}

impl Prover for GiRecoveryImpersonator {
    type Round = ImpersonatorRound;

    fn kind(&self) -> ProtocolKind {
        self.kind
    }

    fn commit(&self, rng: &mut SplitMix64) -> Result<(Commitment, ImpersonatorRound), ProverAbort> {
        match &self.recovered {
            Some(p) => p
                .commit(rng)
                .map(|(c, s)| (c, ImpersonatorRound::Honest(s))),
            None => self
                .fallback
                .commit(rng)
                .map(|(c, s)| (c, ImpersonatorRound::Guess(s))),
        }
    }

    fn respond(&self, round: ImpersonatorRound, b: Challenge) -> Result<Response, ProverAbort> {
        match (round, &self.recovered) {
            (ImpersonatorRound::Honest(s), Some(p)) => p.respond(s, b),
            (ImpersonatorRound::Guess(s), _) => self.fallback.respond(s, b),
            (ImpersonatorRound::Honest(_), None) => {
                Err(ProverAbort("round state from a different strategy".into()))
            }
        }
    }
}
