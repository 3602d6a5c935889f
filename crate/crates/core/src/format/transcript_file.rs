use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{hex_digest, parse_graph, parse_hex_digest, write_graph, FormatError, FORMAT_VERSION};
use crate::keygen::KeyParams;
use crate::protocol::{
    Challenge, Commitment, ProtocolKind, RejectReason, Response, RoundRecord, Transcript,
    TranscriptHeader, Verdict,
};

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub(crate) enum VerdictTag {
    Accept,
    Reject,
}

pub(crate) fn split_verdict(v: Verdict) -> (VerdictTag, Option<RejectReason>) {
    match v {
        Verdict::Accept => (VerdictTag::Accept, None),
        Verdict::Reject(r) => (VerdictTag::Reject, Some(r)),
    }
}

pub(crate) fn join_verdict(tag: VerdictTag, reason: Option<RejectReason>) -> Result<Verdict, String> {
    match (tag, reason) {
        (VerdictTag::Accept, None) => Ok(Verdict::Accept),
        (VerdictTag::Reject, Some(r)) => Ok(Verdict::Reject(r)),
        (VerdictTag::Accept, Some(_)) => Err("accept verdict carries a reason".into()),
        (VerdictTag::Reject, None) => Err("reject verdict without a reason".into()),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Line {
    Header {
        format_version: u32,
        kind: ProtocolKind,
        public_key_digest: String,
        params: Option<Value>,
        master_seed: u64,
        verifier_seed: u64,
        rounds: usize,
    },
    Round {
        round: usize,
        /// Graph text of the commitment; null when the prover aborted.
        commitment: Option<String>,
        challenge: Challenge,
        response: Option<Response>,
        verdict: VerdictTag,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        reason: Option<RejectReason>,
    },
}

/// JSON lines: a header line, then one line per round.
pub fn write_transcript(t: &Transcript) -> String {
    let h = &t.header;
    let header = Line::Header {
        format_version: FORMAT_VERSION,
        kind: h.kind,
        public_key_digest: hex_digest(h.public_key_digest),
        params: h
            .params
            .as_ref()
            .map(|p| serde_json::to_value(p).expect("params serialize")),
        master_seed: h.master_seed,
        verifier_seed: h.verifier_seed,
        rounds: h.rounds,
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for rec in &t.records {
        let (verdict, reason) = split_verdict(rec.verdict);
        let line = Line::Round {
            round: rec.round,
            commitment: rec.commitment.as_ref().map(|c| write_graph(&c.graph)),
            challenge: rec.challenge,
            response: rec.response.clone(),
            verdict,
            reason,
        };
        out.push_str(&serde_json::to_string(&line).expect("round serializes"));
        out.push('\n');
    }
    out
}

/// Parses a transcript; the number of round lines must match the header.
pub fn read_transcript(text: &str) -> Result<Transcript, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let parse = |n: usize, l: &str| -> Result<Line, FormatError> {
        serde_json::from_str(l).map_err(|e| FormatError::new(format!("line {n}"), e))
    };
    let (n, first) = lines
        .next()
        .ok_or_else(|| FormatError::new("line 1", "empty transcript"))?;
    let header = match parse(n, first)? {
        Line::Header {
            format_version,
            kind,
            public_key_digest,
            params,
            master_seed,
            verifier_seed,
            rounds,
        } => {
            if format_version != FORMAT_VERSION {
                return Err(FormatError::new(
                    format!("line {n}.format_version"),
                    format!("unsupported version {format_version}"),
                ));
            }
            let digest = parse_hex_digest(&public_key_digest).ok_or_else(|| {
                FormatError::new(
                    format!("line {n}.public_key_digest"),
                    "expected 16 hex digits",
                )
            })?;
            let params = params
                .map(|v| KeyParams::from_json(kind, v))
                .transpose()
                .map_err(|e| FormatError::new(format!("line {n}.params"), e))?;
            TranscriptHeader {
                kind,
                public_key_digest: digest,
                params,
                master_seed,
                verifier_seed,
                rounds,
            }
        }
        Line::Round { .. } => {
            return Err(FormatError::new(format!("line {n}.type"), "expected header"))
        }
    };
    let mut records = Vec::with_capacity(header.rounds);
    for (n, l) in lines {
        match parse(n, l)? {
            Line::Round {
                round,
                commitment,
                challenge,
                response,
                verdict,
                reason,
            } => {
                let commitment = commitment
                    .map(|text| {
                        parse_graph(&text)
                            .map(|g| Commitment::new(header.kind, g))
                            .map_err(|e| FormatError::new(format!("line {n}.commitment"), e))
                    })
                    .transpose()?;
                let verdict = join_verdict(verdict, reason)
                    .map_err(|e| FormatError::new(format!("line {n}.verdict"), e))?;
                records.push(RoundRecord {
                    round,
                    commitment,
                    challenge,
                    response,
                    verdict,
                });
            }
            Line::Header { .. } => {
                return Err(FormatError::new(format!("line {n}.type"), "second header"))
            }
        }
    }
    if records.len() != header.rounds {
        return Err(FormatError::new(
            "rounds",
            format!(
                "header declares {} rounds, found {} records",
                header.rounds,
                records.len()
            ),
        ));
    }
    Ok(Transcript { header, records })
}
