use crate::graph::{blow_up, compose, random_permutation, relabel, Graph, SubgraphRef};
use crate::keygen::{gen_gcsgip_key, planted_coloring, GcSgipParams, PublicKey};
use crate::protocol::{
    sample_supergraph, Breadth, Challenge, Commitment, ProtocolKind, Prover, ProverAbort, Response,
};
use crate::rng::SplitMix64;

const CLASS_SIZE_MAX: usize = 3;
const P_EDGE: f64 = 0.5;
const PLANT_P: f64 = 0.5;

/// Keyless bit-guesser: each round it guesses the challenge, prepares a
/// commitment it can answer for that bit only, and sends the prepared
/// response whatever the real challenge is.
#[derive(Clone, Debug)]
pub struct GenericCheater {
    public: PublicKey,
}

#[derive(Clone, Debug)]
pub struct CheatRound {
    pub guess: Challenge,
    pub response: Response,
}

impl GenericCheater {
    pub fn new(public: PublicKey) -> Self {
        Self { public }
    }

    fn blow_up_onto(target: &Graph, rng: &mut SplitMix64) -> Result<(Graph, Response), ProverAbort> {
        let sizes: Vec<usize> = (0..target.order())
            .map(|_| rng.range_inclusive(1, CLASS_SIZE_MAX))
            .collect();
        let (big, proj) = blow_up(target, &sizes, P_EDGE, rng).map_err(abort)?;
        let perm = random_permutation(big.order(), rng);
        let graph = relabel(&big, &perm).map_err(abort)?;
        let map = compose(&perm.inverse().map_err(abort)?, &proj).map_err(abort)?;
        Ok((graph, Response::Map { map }))
    }

    /// A random relabeled subgraph of `host`, answered by its embedding.
    fn sub_of(host: &Graph, strictly_smaller: bool, rng: &mut SplitMix64) -> (Graph, Response) {
        let empty = SubgraphRef::new(host.order(), Vec::new(), Vec::new()).expect("empty subgraph");
        let s = sample_supergraph(host, &empty, Breadth::Half, strictly_smaller, false, rng);
        (s.lambda, Response::Map { map: s.embedding })
    }

    fn prepare(&self, guess: Challenge, rng: &mut SplitMix64) -> Result<(Graph, Response), ProverAbort> {
        Ok(match (&self.public, guess) {
            (PublicKey::Gh(p), Challenge::Zero) => Self::blow_up_onto(&p.g1, rng)?,
            (PublicKey::Gh(p), Challenge::One) => Self::blow_up_onto(&p.g2, rng)?,
            (PublicKey::Sgip(p), Challenge::Zero) => Self::sub_of(&p.omega, false, rng),
            (PublicKey::Sgip(p), Challenge::One) => {
                let perm = random_permutation(p.g2.order(), rng);
                let lambda = relabel(&p.g2, &perm).map_err(abort)?;
                let response = Response::SubgraphAndMap {
                    subgraph: SubgraphRef::whole(&lambda),
                    map: perm.inverse().map_err(abort)?,
                };
                (lambda, response)
            }
            (PublicKey::Gc(p), Challenge::Zero) => {
                let phi = random_permutation(p.gamma.order(), rng);
                (relabel(&p.gamma, &phi).map_err(abort)?, Response::Map { map: phi })
            }
            (PublicKey::Gc(p), Challenge::One) => {
                let (graph, coloring) =
                    planted_coloring(p.gamma.order(), p.k, PLANT_P, rng).map_err(abort)?;
                (graph, Response::ColoringOnly { coloring })
            }
            (PublicKey::GcSgip(p), Challenge::Zero) => Self::sub_of(&p.gamma, true, rng),
            (PublicKey::GcSgip(p), Challenge::One) => {
                // Same order an honest commitment has under the default breadth.
                let total_order = p.n + (p.gamma.order().saturating_sub(p.n)) / 2;
                let params = GcSgipParams {
                    total_order,
                    n: p.n,
                    k: p.k,
                    cross_p: PLANT_P,
                    ambient_p: PLANT_P,
                };
                let fresh = gen_gcsgip_key(&params, rng).map_err(abort)?;
                let response = Response::ColoredSubgraph {
                    subgraph: fresh.g1,
                    coloring: fresh.coloring,
                };
                (fresh.public.gamma, response)
            }
        })
    }
}

fn abort(e: impl ToString) -> ProverAbort {
    ProverAbort(e.to_string())
}

impl Prover for GenericCheater {
    type Round = CheatRound;

    fn kind(&self) -> ProtocolKind {
        self.public.kind()
    }

    fn commit(&self, rng: &mut SplitMix64) -> Result<(Commitment, CheatRound), ProverAbort> {
        let guess = if rng.bit() == 0 {
            Challenge::Zero
        } else {
            Challenge::One
        };
        let (graph, response) = self.prepare(guess, rng)?;
        Ok((
            Commitment::new(self.kind(), graph),
            CheatRound { guess, response },
        ))
    }

    fn respond(&self, round: CheatRound, _b: Challenge) -> Result<Response, ProverAbort> {
        Ok(round.response)
    }
}
