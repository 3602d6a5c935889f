//! Adversary strategies, witness extractors and the attack harness.
//!
//! Every strategy here is built from public key material only; none of the
//! constructors accepts a [`crate::keygen::KeyPair`].

mod cheater;
mod evaluate;
mod extract;
mod recovery;
mod tensor;

use thiserror::Error;

use crate::keygen::KeygenError;

pub use cheater::{CheatRound, GenericCheater};
pub use evaluate::{evaluate_adversary, AttackReport, SessionOutcome, WallTime};
pub use extract::{extract_gcsgip_witness, extract_sgip_witness, ExtractError};
pub use recovery::{
    gi_key_recovery, recover_from_round, GiRecoveryImpersonator, ImpersonatorRound,
    RecoveryAttempt,
};
pub use tensor::{tensor_forgery, TensorForgery};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AttackError {
    /// The attack's precondition does not hold for this public key.
    #[error("attack inapplicable: {0}")]
    Inapplicable(String),
    #[error(transparent)]
    Keygen(#[from] KeygenError),
}
