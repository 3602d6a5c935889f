//! On-disk and on-wire formats. Every document carries `"format_version": 1`.
//!
//! * graph text: optional `#` comment lines, a `"<n> <m>"` header, then `m`
//!   lines `"<u> <v>"` (written with `u < v`, sorted).
//! * key files: pretty-printed JSON, see [`write_key`].
//! * transcripts: JSON lines, one header line then one line per round.
//! * split mode: one [`WireMessage`] JSON object per line.

mod graph_text;
mod key_file;
mod split;
mod transcript_file;
mod wire;

use serde_json::{json, Value};
use thiserror::Error;

use crate::keygen::PublicKey;

pub use graph_text::{parse_graph, write_graph, GraphTextError};
pub use key_file::{read_key, write_key, write_public_key, KeyBody, KeyDocument};
pub use split::{serve_prover, serve_verifier, SplitError};
pub use transcript_file::{read_transcript, write_transcript};
pub use wire::WireMessage;

pub const FORMAT_VERSION: u32 = 1;

/// Schema or syntax problem in a structured document. `path` is a dotted
/// field path, prefixed by `line N` for line-oriented formats.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

impl FormatError {
    pub(crate) fn new(path: impl Into<String>, message: impl ToString) -> Self {
        Self {
            path: path.into(),
            message: message.to_string(),
        }
    }
}

/// 64-bit FNV-1a.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    bytes
        .iter()
        .fold(OFFSET, |h, &b| (h ^ b as u64).wrapping_mul(PRIME))
}

pub fn hex_digest(d: u64) -> String {
    format!("{d:016x}")
}

pub(crate) fn parse_hex_digest(s: &str) -> Option<u64> {
    (s.len() == 16).then(|| u64::from_str_radix(s, 16).ok()).flatten()
}

pub(crate) fn public_value(public: &PublicKey) -> Value {
    let (graphs, k, n) = match public {
        PublicKey::Gh(p) => (
            json!({"g1": write_graph(&p.g1), "g2": write_graph(&p.g2)}),
            None,
            None,
        ),
        PublicKey::Sgip(p) => (
            json!({"omega": write_graph(&p.omega), "g2": write_graph(&p.g2)}),
            None,
            None,
        ),
        PublicKey::Gc(p) => (json!({"gamma": write_graph(&p.gamma)}), Some(p.k), None),
        PublicKey::GcSgip(p) => (
            json!({"gamma": write_graph(&p.gamma)}),
            Some(p.k),
            Some(p.n),
        ),
    };
    let mut obj = json!({ "graphs": graphs });
    if let Some(k) = k {
        obj["k"] = json!(k);
    }
    if let Some(n) = n {
        obj["n"] = json!(n);
    }
    obj
}

/// Compact JSON with sorted keys: `{"format_version":1,"kind":..,"public":..}`.
/// This is the input to [`PublicKey::digest`].
pub fn canonical_public_bytes(public: &PublicKey) -> String {
    let doc = json!({
        "format_version": FORMAT_VERSION,
        "kind": public.kind(),
        "public": public_value(public),
    });
    doc.to_string()
}
