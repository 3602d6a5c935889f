use std::fmt;

use thiserror::Error;

use super::{verify, Challenge, Commitment, ProtocolKind, RejectReason, Response, Verdict};
use crate::keygen::{KeyParams, PublicKey};
use crate::rng::{derive_seed, SplitMix64, STREAM_PROVER, STREAM_VERIFIER};

/// A prover strategy gave up on a round.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("prover aborted: {0}")]
pub struct ProverAbort(pub String);

/// Anything that can play the prover: the honest key holder or an adversary.
pub trait Prover: Sync {
    /// State carried from commitment to response.
    type Round;

    fn kind(&self) -> ProtocolKind;

    /// Mixed into the prover stream seed. The honest prover salts with a
    /// digest of its private key so the published master seed does not let
    /// anyone replay its coin flips.
    fn stream_salt(&self) -> u64 {
        0
    }

    fn commit(&self, rng: &mut SplitMix64) -> Result<(Commitment, Self::Round), ProverAbort>;

    fn respond(&self, round: Self::Round, b: Challenge) -> Result<Response, ProverAbort>;
}

/// The prover's generator for a session with the given master seed.
pub fn prover_stream<P: Prover + ?Sized>(prover: &P, master_seed: u64) -> SplitMix64 {
    SplitMix64::derived(master_seed, STREAM_PROVER, prover.stream_salt())
}

/// Seed of the verifier's challenge stream, independent of the prover's.
pub fn verifier_seed(master_seed: u64) -> u64 {
    derive_seed(master_seed, STREAM_VERIFIER, 0)
}

/// Verifier half of a session: draws challenges and judges responses.
#[derive(Debug, Clone)]
pub struct Verifier<'a> {
    public: &'a PublicKey,
    rng: SplitMix64,
}

impl<'a> Verifier<'a> {
    pub fn new(public: &'a PublicKey, master_seed: u64) -> Self {
        Self {
            public,
            rng: SplitMix64::new(verifier_seed(master_seed)),
        }
    }

    pub fn challenge(&mut self) -> Challenge {
        if self.rng.bit() == 0 {
            Challenge::Zero
        } else {
            Challenge::One
        }
    }

    /// A missing commitment or response means the prover aborted.
    pub fn judge(&self, c: Option<&Commitment>, b: Challenge, r: Option<&Response>) -> Verdict {
        match (c, r) {
            (Some(c), Some(r)) => verify(self.public, c, b, r),
            _ => Verdict::Reject(RejectReason::ProverAbort),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranscriptHeader {
    pub kind: ProtocolKind,
    pub public_key_digest: u64,
    /// Key generation parameters, when known to the caller.
    pub params: Option<KeyParams>,
    pub master_seed: u64,
    pub verifier_seed: u64,
    pub rounds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    pub round: usize,
    pub commitment: Option<Commitment>,
    pub challenge: Challenge,
    pub response: Option<Response>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Transcript {
    pub header: TranscriptHeader,
    pub records: Vec<RoundRecord>,
}

impl Transcript {
    pub fn with_params(mut self, params: KeyParams) -> Self {
        self.header.params = Some(params);
        self
    }

    /// Session verdict: every round accepted.
    pub fn accepted(&self) -> bool {
        self.records.len() == self.header.rounds && self.records.iter().all(|r| r.verdict.is_accept())
    }

    pub fn accepted_rounds(&self) -> usize {
        self.records.iter().filter(|r| r.verdict.is_accept()).count()
    }
}

/// Runs `rounds` full rounds; an abort or a rejection does not stop the
/// session early, so per-round statistics stay comparable.
pub fn run_session<P: Prover + ?Sized>(
    prover: &P,
    public: &PublicKey,
    rounds: usize,
    master_seed: u64,
) -> Transcript {
    let mut prover_rng = prover_stream(prover, master_seed);
    let mut verifier = Verifier::new(public, master_seed);
    let mut records = Vec::with_capacity(rounds);
    for round in 0..rounds {
        let committed = prover.commit(&mut prover_rng);
        let challenge = verifier.challenge();
        let (commitment, response) = match committed {
            Ok((c, state)) => (Some(c), prover.respond(state, challenge).ok()),
            Err(_) => (None, None),
        };
        let verdict = verifier.judge(commitment.as_ref(), challenge, response.as_ref());
        records.push(RoundRecord {
            round,
            commitment,
            challenge,
            response,
            verdict,
        });
    }
    Transcript {
        header: TranscriptHeader {
            kind: prover.kind(),
            public_key_digest: public.digest(),
            params: None,
            master_seed,
            verifier_seed: verifier_seed(master_seed),
            rounds,
        },
        records,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranscriptReject {
    KindMismatch,
    DigestMismatch,
    RoundCountMismatch { expected: usize, found: usize },
    RoundIndex { position: usize, found: usize },
    VerifierSeedMismatch,
    VerdictMismatch { round: usize },
    ChallengeMismatch { round: usize },
    RoundRejected { round: usize, reason: RejectReason },
}

impl fmt::Display for TranscriptReject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TranscriptReject::KindMismatch => write!(f, "kind mismatch"),
            TranscriptReject::DigestMismatch => write!(f, "public key digest mismatch"),
            TranscriptReject::RoundCountMismatch { expected, found } => {
                write!(f, "round count mismatch: header says {expected}, found {found}")
            }
            TranscriptReject::RoundIndex { position, found } => {
                write!(f, "record {position} is numbered {found}")
            }
            TranscriptReject::VerifierSeedMismatch => write!(f, "verifier seed mismatch"),
            TranscriptReject::VerdictMismatch { round } => {
                write!(f, "verdict mismatch at round {round}")
            }
            TranscriptReject::ChallengeMismatch { round } => {
                write!(f, "challenge mismatch at round {round}")
            }
            TranscriptReject::RoundRejected { round, reason } => {
                write!(f, "round {round} rejected: {reason}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranscriptVerdict {
    Accept,
    Reject(TranscriptReject),
}

impl TranscriptVerdict {
    pub fn is_accept(self) -> bool {
        self == TranscriptVerdict::Accept
    }
}

fn replay(public: &PublicKey, t: &Transcript) -> Result<(), TranscriptReject> {
    let h = &t.header;
    if h.kind != public.kind() {
        return Err(TranscriptReject::KindMismatch);
    }
    if h.public_key_digest != public.digest() {
        return Err(TranscriptReject::DigestMismatch);
    }
    if t.records.len() != h.rounds {
        return Err(TranscriptReject::RoundCountMismatch {
            expected: h.rounds,
            found: t.records.len(),
        });
    }
    if h.verifier_seed != verifier_seed(h.master_seed) {
        return Err(TranscriptReject::VerifierSeedMismatch);
    }
    let mut verifier = Verifier::new(public, h.master_seed);
    for (position, rec) in t.records.iter().enumerate() {
        if rec.round != position {
            return Err(TranscriptReject::RoundIndex {
                position,
                found: rec.round,
            });
        }
        let expected_bit = verifier.challenge();
        let verdict = verifier.judge(rec.commitment.as_ref(), rec.challenge, rec.response.as_ref());
        if verdict != rec.verdict {
            return Err(TranscriptReject::VerdictMismatch { round: position });
        }
        if expected_bit != rec.challenge {
            return Err(TranscriptReject::ChallengeMismatch { round: position });
        }
    }
    if let Some(rec) = t.records.iter().find(|r| !r.verdict.is_accept()) {
        if let Verdict::Reject(reason) = rec.verdict {
            return Err(TranscriptReject::RoundRejected {
                round: rec.round,
                reason,
            });
        }
    }
    Ok(())
}

/// Replays every round against the public key alone. Accepts iff every
/// recorded verdict and challenge is reproduced and every round accepted.
pub fn verify_transcript(public: &PublicKey, transcript: &Transcript) -> TranscriptVerdict {
    match replay(public, transcript) {
        Ok(()) => TranscriptVerdict::Accept,
        Err(e) => TranscriptVerdict::Reject(e),
    }
}
