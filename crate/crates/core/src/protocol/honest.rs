use serde::{Deserialize, Serialize};

use super::{sample_supergraph, Challenge, Commitment, ProtocolError, ProtocolKind, Response};
use crate::graph::{
    blow_up, compose, random_permutation, relabel, restrict, Coloring, SubgraphRef, VertexMap,
};
use crate::keygen::KeyPair;
use crate::rng::SplitMix64;

/// How much of the host Λ' takes beyond the secret core.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Breadth {
    /// Exactly half (rounded down) of the available vertices, then of the
    /// available edges. Consumes no draw for the count.
    #[default]
    Half,
    /// A count uniform in `0..=available` (one `below` draw), then a uniform subset.
    Uniform,
}

impl Breadth {
    pub(crate) fn count(self, available: usize, rng: &mut SplitMix64) -> usize {
        match self {
            Breadth::Half => available / 2,
            Breadth::Uniform => rng.below_usize(available + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CommitOptions {
    pub breadth: Breadth,
    /// GH blow-up class sizes are drawn from `1..=gh_class_size_max`.
    pub gh_class_size_max: usize,
    pub gh_p_edge: f64,
    /// Test hook: no relabeling and unit GH classes, so commitments reuse
    /// the key's own vertex numbering.
    pub pin_identity: bool,
}

impl Default for CommitOptions {
    fn default() -> Self {
        Self {
            breadth: Breadth::Half,
            gh_class_size_max: 3,
            gh_p_edge: 0.5,
            pin_identity: false,
        }
    }
}

/// Per-round prover state. Deliberately not serializable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RoundSecret {
    /// β: Γ → Γ1.
    Gh { beta: VertexMap },
    /// β: Λ → Ω and Γ ⊂ Λ with β(Γ) = Γ1.
    Sgip { beta: VertexMap, gamma: SubgraphRef },
    /// φ: Γ → Γ1.
    Gc { phi: VertexMap },
    /// α: Λ → Γ (the isomorphism onto Λ' seen as a map into Γ) and Γ2 ⊂ Λ.
    GcSgip { alpha: VertexMap, gamma2: SubgraphRef },
}

impl RoundSecret {
    pub fn kind(&self) -> ProtocolKind {
        match self {
            RoundSecret::Gh { .. } => ProtocolKind::Gh,
            RoundSecret::Sgip { .. } => ProtocolKind::Sgip,
            RoundSecret::Gc { .. } => ProtocolKind::Gc,
            RoundSecret::GcSgip { .. } => ProtocolKind::GcSgip,
        }
    }
}

/// Step 1: a fresh commitment and the secret needed to answer either bit.
pub fn commit(
    key: &KeyPair,
    options: &CommitOptions,
    rng: &mut SplitMix64,
) -> Result<(Commitment, RoundSecret), ProtocolError> {
    Ok(match key {
        KeyPair::Gh(k) => {
            let g1 = &k.public.g1;
            let sizes: Vec<usize> = if options.pin_identity {
                vec![1; g1.order()]
            } else {
                (0..g1.order())
                    .map(|_| rng.range_inclusive(1, options.gh_class_size_max.max(1)))
                    .collect()
            };
            let (big, proj) = blow_up(g1, &sizes, options.gh_p_edge, rng)?;
            let (gamma, beta) = if options.pin_identity {
                (big, proj)
            } else {
                let perm = random_permutation(big.order(), rng);
                (relabel(&big, &perm)?, compose(&perm.inverse()?, &proj)?)
            };
            (
                Commitment::new(ProtocolKind::Gh, gamma),
                RoundSecret::Gh { beta },
            )
        }
        KeyPair::Sgip(k) => {
            let s = sample_supergraph(
                &k.public.omega,
                &k.g1,
                options.breadth,
                false,
                options.pin_identity,
                rng,
            );
            (
                Commitment::new(ProtocolKind::Sgip, s.lambda),
                RoundSecret::Sgip {
                    beta: s.embedding,
                    gamma: s.core_in_lambda,
                },
            )
        }
        KeyPair::Gc(k) => {
            let n = k.public.gamma.order();
            let phi = if options.pin_identity {
                VertexMap::identity(n)
            } else {
                random_permutation(n, rng)
            };
            (
                Commitment::new(ProtocolKind::Gc, relabel(&k.public.gamma, &phi)?),
                RoundSecret::Gc { phi },
            )
        }
        KeyPair::GcSgip(k) => {
            let s = sample_supergraph(
                &k.public.gamma,
                &k.g1,
                options.breadth,
                true,
                options.pin_identity,
                rng,
            );
            (
                Commitment::new(ProtocolKind::GcSgip, s.lambda),
                RoundSecret::GcSgip {
                    alpha: s.embedding,
                    gamma2: s.core_in_lambda,
                },
            )
        }
    })
}

/// Step 3: the answer to challenge `b` for a secret produced by [`commit`].
pub fn respond(
    key: &KeyPair,
    secret: &RoundSecret,
    b: Challenge,
) -> Result<Response, ProtocolError> {
    let mismatch = || ProtocolError::KindMismatch {
        key: key.kind(),
        secret: secret.kind(),
    };
    Ok(match (key, secret, b) {
        (KeyPair::Gh(_), RoundSecret::Gh { beta }, Challenge::Zero) => {
            Response::Map { map: beta.clone() }
        }
        (KeyPair::Gh(k), RoundSecret::Gh { beta }, Challenge::One) => Response::Map {
            map: compose(beta, &k.alpha)?,
        },
        (KeyPair::Sgip(_), RoundSecret::Sgip { beta, .. }, Challenge::Zero) => {
            Response::Map { map: beta.clone() }
        }
        (KeyPair::Sgip(k), RoundSecret::Sgip { beta, gamma }, Challenge::One) => {
            // β|_Γ lands in Γ1; express it in Γ1's dense numbering, then apply α.
            let into_g1 = restrict(beta, gamma)?.corestrict(&k.g1)?;
            Response::SubgraphAndMap {
                subgraph: gamma.clone(),
                map: compose(&into_g1, &k.alpha)?,
            }
        }
        (KeyPair::Gc(_), RoundSecret::Gc { phi }, Challenge::Zero) => {
            Response::Map { map: phi.clone() }
        }
        (KeyPair::Gc(k), RoundSecret::Gc { phi }, Challenge::One) => Response::ColoringOnly {
            coloring: k.coloring.push_forward(phi)?,
        },
        (KeyPair::GcSgip(_), RoundSecret::GcSgip { alpha, .. }, Challenge::Zero) => {
            Response::Map { map: alpha.clone() }
        }
        (KeyPair::GcSgip(k), RoundSecret::GcSgip { alpha, gamma2 }, Challenge::One) => {
            let into_g1 = restrict(alpha, gamma2)?.corestrict(&k.g1)?;
            let colors = into_g1
                .images()
                .iter()
                .map(|&i| k.coloring.color(i))
                .collect();
            Response::ColoredSubgraph {
                subgraph: gamma2.clone(),
                coloring: Coloring::new(k.coloring.k(), colors)?,
            }
        }
        _ => return Err(mismatch()),
    })
}

/// The honest prover: holds the full key pair.
#[derive(Clone, Debug)]
pub struct HonestProver {
    key: KeyPair,
    options: CommitOptions,
}

impl HonestProver {
    pub fn new(key: KeyPair) -> Self {
        Self::with_options(key, CommitOptions::default())
    }

    pub fn with_options(key: KeyPair, options: CommitOptions) -> Self {
        Self { key, options }
    }

    pub fn key(&self) -> &KeyPair {
        &self.key
    }
}

impl super::Prover for HonestProver {
    type Round = RoundSecret;

    fn kind(&self) -> ProtocolKind {
        self.key.kind()
    }

    fn stream_salt(&self) -> u64 {
        self.key.private_digest()
    }

    fn commit(&self, rng: &mut SplitMix64) -> Result<(Commitment, RoundSecret), super::ProverAbort> {
        commit(&self.key, &self.options, rng).map_err(|e| super::ProverAbort(e.to_string()))
    }

    fn respond(&self, round: RoundSecret, b: Challenge) -> Result<Response, super::ProverAbort> {
        respond(&self.key, &round, b).map_err(|e| super::ProverAbort(e.to_string()))
    }
}
