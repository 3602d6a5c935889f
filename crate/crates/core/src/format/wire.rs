use serde::{Deserialize, Serialize};

use crate::protocol::{Challenge, ProtocolKind, RejectReason, Response};

/// One line of the split-mode conversation. The order is fixed:
/// `hello`, then per round `commit`, `challenge`, `respond`, `verdict`, then `done`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum WireMessage {
    Hello {
        format_version: u32,
        kind: ProtocolKind,
        /// 16 hex digits.
        key_digest: String,
        rounds: usize,
    },
    /// Graph text; `None` when the prover aborts the round.
    Commit { graph: Option<String> },
    Challenge { bit: Challenge },
    Respond { response: Option<Response> },
    Verdict {
        accept: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reason: Option<RejectReason>,
    },
    Done { accept: bool },
}

impl WireMessage {
    pub fn name(&self) -> &'static str {
        match self {
            WireMessage::Hello { .. } => "hello",
            WireMessage::Commit { .. } => "commit",
            WireMessage::Challenge { .. } => "challenge",
            WireMessage::Respond { .. } => "respond",
            WireMessage::Verdict { .. } => "verdict",
            WireMessage::Done { .. } => "done",
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("wire messages serialize")
    }
}
