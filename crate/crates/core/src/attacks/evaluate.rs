use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::FORMAT_VERSION;
use crate::keygen::PublicKey;
use crate::protocol::{run_session, ProtocolKind, Prover, RejectReason, Verdict};
use crate::rng::{derive_seed, STREAM_SESSION};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionOutcome {
    pub session: usize,
    pub seed: u64,
    pub accepted: bool,
    pub accepted_rounds: usize,
    /// Reason for the first rejected round, if any.
    pub first_reject: Option<RejectReason>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WallTime {
    pub total_ms: f64,
    pub mean_session_ms: f64,
}

/// Aggregate of `sessions` independent sessions. A trial is one session;
/// round-level counts are reported alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub format_version: u32,
    pub attack: String,
    pub kind: ProtocolKind,
    pub seed: u64,
    pub sessions: usize,
    pub rounds: usize,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub round_trials: usize,
    pub round_successes: usize,
    pub round_success_rate: f64,
    pub outcomes: Vec<SessionOutcome>,
    /// Left empty unless the caller asks for timing, so reports stay
    /// byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<WallTime>,
}

impl AttackReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        format!(
            "{} vs {}: {}/{} sessions accepted (rate {:.4}), {}/{} rounds accepted",
            self.attack,
            self.kind,
            self.successes,
            self.trials,
            self.success_rate,
            self.round_successes,
            self.round_trials
        )
    }
}

fn rate(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Runs `sessions` sessions with seeds `derive_seed(master_seed, STREAM_SESSION, i)`,
/// in parallel, and aggregates them in session order.
pub fn evaluate_adversary<P: Prover + ?Sized>(
    attack: &str,
    strategy: &P,
    public: &PublicKey,
    sessions: usize,
    rounds: usize,
    master_seed: u64,
) -> AttackReport {
    let outcomes: Vec<SessionOutcome> = (0..sessions)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(master_seed, STREAM_SESSION, i as u64);
            let t = run_session(strategy, public, rounds, seed);
            SessionOutcome {
                session: i,
                seed,
                accepted: t.accepted(),
                accepted_rounds: t.accepted_rounds(),
                first_reject: t.records.iter().find_map(|r| match r.verdict {
                    Verdict::Reject(reason) => Some(reason),
                    Verdict::Accept => None,
                }),
            }
        })
        .collect();
    let successes = outcomes.iter().filter(|o| o.accepted).count();
    let round_successes = outcomes.iter().map(|o| o.accepted_rounds).sum();
    AttackReport {
        format_version: FORMAT_VERSION,
        attack: attack.to_string(),
        kind: strategy.kind(),
        seed: master_seed,
        sessions,
        rounds,
        trials: sessions,
        successes,
        success_rate: rate(successes, sessions),
        round_trials: sessions * rounds,
        round_successes,
        round_success_rate: rate(round_successes, sessions * rounds),
        outcomes,
        wall_time: None,
    }
}
