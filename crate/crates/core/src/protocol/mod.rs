//! The four commit–challenge–respond–verify protocols and the session driver.
//!
//! | kind     | commitment | b = 0 response            | b = 1 response                    |
//! |----------|------------|---------------------------|-----------------------------------|
//! | `gh`     | Γ          | `Map` β onto Γ1           | `Map` α∘β onto Γ2                 |
//! | `sgip`   | Λ          | `Map` β, embedding into Ω | `SubgraphAndMap` Γ ⊂ Λ, iso to Γ2 |
//! | `gc`     | Γ1         | `Map` φ, iso Γ → Γ1       | `ColoringOnly` of Γ1              |
//! | `gcsgip` | Λ          | `Map`, embedding into Γ   | `ColoredSubgraph` of order n      |

mod honest;
mod sample;
mod session;
mod verify;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Coloring, Graph, GraphError, SubgraphRef, VertexMap};

pub use honest::{commit, respond, Breadth, CommitOptions, HonestProver, RoundSecret};
pub(crate) use sample::sample_supergraph;
pub use session::{
    prover_stream, run_session, verifier_seed, verify_transcript, Prover, ProverAbort,
    RoundRecord, Transcript, TranscriptHeader, TranscriptReject, TranscriptVerdict, Verifier,
};
pub use verify::verify;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKind {
    Gh,
    Sgip,
    Gc,
    GcSgip,
}

impl ProtocolKind {
    pub const ALL: [ProtocolKind; 4] = [
        ProtocolKind::Gh,
        ProtocolKind::Sgip,
        ProtocolKind::Gc,
        ProtocolKind::GcSgip,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ProtocolKind::Gh => "gh",
            ProtocolKind::Sgip => "sgip",
            ProtocolKind::Gc => "gc",
            ProtocolKind::GcSgip => "gcsgip",
        }
    }
}

impl fmt::Display for ProtocolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProtocolKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProtocolKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown protocol kind `{s}` (expected gh, sgip, gc, gcsgip)"))
    }
}

/// The verifier's one-bit challenge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Challenge {
    Zero,
    One,
}

impl Challenge {
    pub fn bit(self) -> u8 {
        match self {
            Challenge::Zero => 0,
            Challenge::One => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("challenge must be 0 or 1, got {0}")]
pub struct InvalidChallenge(pub u8);

impl TryFrom<u8> for Challenge {
    type Error = InvalidChallenge;
    fn try_from(b: u8) -> Result<Self, Self::Error> {
        match b {
            0 => Ok(Challenge::Zero),
            1 => Ok(Challenge::One),
            other => Err(InvalidChallenge(other)),
        }
    }
}

impl From<Challenge> for u8 {
    fn from(c: Challenge) -> u8 {
        c.bit()
    }
}

/// The graph sent to the verifier in step 1. Shared behind an `Arc` since
/// the same commitment is referenced by round state and transcript records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commitment {
    pub kind: ProtocolKind,
    pub graph: Arc<Graph>,
}

impl Commitment {
    pub fn new(kind: ProtocolKind, graph: Graph) -> Self {
        Self {
            kind,
            graph: Arc::new(graph),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Response {
    Map {
        map: VertexMap,
    },
    SubgraphAndMap {
        subgraph: SubgraphRef,
        map: VertexMap,
    },
    ColoredSubgraph {
        subgraph: SubgraphRef,
        coloring: Coloring,
    },
    ColoringOnly {
        coloring: Coloring,
    },
}

impl Response {
    pub fn variant_name(&self) -> &'static str {
        match self {
            Response::Map { .. } => "map",
            Response::SubgraphAndMap { .. } => "subgraph_and_map",
            Response::ColoredSubgraph { .. } => "colored_subgraph",
            Response::ColoringOnly { .. } => "coloring_only",
        }
    }
}

/// Machine-readable reject reasons. The snake_case names are a stable
/// output contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    KindMismatch,
    WrongVariant,
    DimensionMismatch,
    NotHomomorphism,
    NotSurjective,
    NotEmbedding,
    NotSubgraph,
    NotIsomorphism,
    OrderMismatch,
    ColorBoundExceeded,
    ImproperColoring,
    ProverAbort,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        f.write_str(s.as_str().unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject(RejectReason),
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error("round secret of kind {secret} used with a {key} key")]
    KindMismatch { key: ProtocolKind, secret: ProtocolKind },
    #[error(transparent)]
    Graph(#[from] GraphError),
}
