use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{hex_digest, parse_graph, parse_hex_digest, write_graph, WireMessage, FORMAT_VERSION};
use crate::keygen::{KeyParams, PublicKey};
use crate::protocol::{
    prover_stream, verifier_seed, Commitment, Prover, RoundRecord, Transcript, TranscriptHeader,
    Verdict, Verifier,
};

#[derive(Debug, Error)]
pub enum SplitError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("peer closed the stream while a `{expected}` message was due")]
    Eof { expected: &'static str },
    #[error("message {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("out-of-order message: expected `{expected}`, got `{found}`")]
    OutOfOrder {
        expected: &'static str,
        found: &'static str,
    },
    #[error("hello mismatch: {0}")]
    HelloMismatch(String),
}

struct Channel<R, W> {
    input: R,
    output: W,
    received: usize,
}

impl<R: BufRead, W: Write> Channel<R, W> {
    fn send(&mut self, m: &WireMessage) -> Result<(), SplitError> {
        writeln!(self.output, "{}", m.to_line())?;
        self.output.flush()?;
        Ok(())
    }

    fn recv(&mut self, expected: &'static str) -> Result<WireMessage, SplitError> {
        let mut line = String::new();
        loop {
            line.clear();
            if self.input.read_line(&mut line)? == 0 {
                return Err(SplitError::Eof { expected });
            }
            if !line.trim().is_empty() {
                break;
            }
        }
        self.received += 1;
        let m: WireMessage =
            serde_json::from_str(line.trim()).map_err(|e| SplitError::Malformed {
                line: self.received,
                message: e.to_string(),
            })?;
        if m.name() != expected {
            return Err(SplitError::OutOfOrder {
                expected,
                found: m.name(),
            });
        }
        Ok(m)
    }
}

/// Verifier end of split mode. Sends `hello`, runs `rounds` rounds, sends
/// `done`, and returns the same transcript an in-process session would give.
pub fn serve_verifier<R: BufRead, W: Write>(
    public: &PublicKey,
    params: Option<KeyParams>,
    rounds: usize,
    master_seed: u64,
    input: R,
    output: W,
) -> Result<Transcript, SplitError> {
    let mut ch = Channel {
        input,
        output,
        received: 0,
    };
    let kind = public.kind();
    ch.send(&WireMessage::Hello {
        format_version: FORMAT_VERSION,
        kind,
        key_digest: hex_digest(public.digest()),
        rounds,
    })?;
    let mut verifier = Verifier::new(public, master_seed);
    let mut records = Vec::with_capacity(rounds);
    for round in 0..rounds {
        let WireMessage::Commit { graph } = ch.recv("commit")? else {
            unreachable!()
        };
        let commitment = graph
            .map(|text| {
                parse_graph(&text)
                    .map(|g| Commitment::new(kind, g))
                    .map_err(|e| SplitError::Malformed {
                        line: ch.received,
                        message: format!("commitment graph: {e}"),
                    })
            })
            .transpose()?;
        let challenge = verifier.challenge();
        ch.send(&WireMessage::Challenge { bit: challenge })?;
        let WireMessage::Respond { response } = ch.recv("respond")? else {
            unreachable!()
        };
        let verdict = verifier.judge(commitment.as_ref(), challenge, response.as_ref());
        ch.send(&match verdict {
            Verdict::Accept => WireMessage::Verdict {
                accept: true,
                reason: None,
            },
            Verdict::Reject(r) => WireMessage::Verdict {
                accept: false,
                reason: Some(r),
            },
        })?;
        records.push(RoundRecord {
            round,
            commitment,
            challenge,
            response,
            verdict,
        });
    }
    let transcript = Transcript {
        header: TranscriptHeader {
            kind,
            public_key_digest: public.digest(),
            params,
            master_seed,
            verifier_seed: verifier_seed(master_seed),
            rounds,
        },
        records,
    };
    ch.send(&WireMessage::Done {
        accept: transcript.accepted(),
    })?;
    Ok(transcript)
}

/// Prover end of split mode. Returns the session verdict announced in `done`.
pub fn serve_prover<P: Prover, R: BufRead, W: Write>(
    prover: &P,
    public: &PublicKey,
    master_seed: u64,
    input: R,
    output: W,
) -> Result<bool, SplitError> {
    let mut ch = Channel {
        input,
        output,
        received: 0,
    };
    let WireMessage::Hello {
        format_version,
        kind,
        key_digest,
        rounds,
    } = ch.recv("hello")?
    else {
        unreachable!()
    };
    if format_version != FORMAT_VERSION {
        return Err(SplitError::HelloMismatch(format!(
            "unsupported format_version {format_version}"
        )));
    }
    if kind != prover.kind() {
        return Err(SplitError::HelloMismatch(format!(
            "verifier expects {kind}, prover holds {}",
            prover.kind()
        )));
    }
    if parse_hex_digest(&key_digest) != Some(public.digest()) {
        return Err(SplitError::HelloMismatch(format!(
            "verifier key digest {key_digest} does not match {}",
            hex_digest(public.digest())
        )));
    }
    let mut rng = prover_stream(prover, master_seed);
    for _ in 0..rounds {
        let committed = prover.commit(&mut rng);
        let graph = committed.as_ref().ok().map(|(c, _)| write_graph(&c.graph));
        ch.send(&WireMessage::Commit { graph })?;
        let WireMessage::Challenge { bit } = ch.recv("challenge")? else {
            unreachable!()
        };
        let response = committed
            .ok()
            .and_then(|(_, state)| prover.respond(state, bit).ok());
        ch.send(&WireMessage::Respond { response })?;
        ch.recv("verdict")?;
    }
    let WireMessage::Done { accept } = ch.recv("done")? else {
        unreachable!()
    };
    Ok(accept)
}
