use std::fs;
use std::io::{self, BufReader};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use graphauth::attacks::{
    evaluate_adversary, AttackReport, GenericCheater, GiRecoveryImpersonator, TensorForgery,
    WallTime,
};
use graphauth::format::{
    read_key, read_transcript, serve_prover, serve_verifier, write_key, write_public_key,
    write_transcript, KeyDocument,
};
use graphauth::keygen::{generate, KeyParams};
use graphauth::protocol::{
    run_session, verify_transcript, Breadth, CommitOptions, HonestProver, ProtocolKind,
    TranscriptVerdict,
};
use graphauth::rng::{SplitMix64, STREAM_KEY};

#[derive(Parser)]
#[command(name = "graphauth", version, about = "Graph-based challenge-response authentication")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BreadthArg {
    Half,
    Uniform,
}

impl From<BreadthArg> for Breadth {
    fn from(b: BreadthArg) -> Self {
        match b {
            BreadthArg::Half => Breadth::Half,
            BreadthArg::Uniform => Breadth::Uniform,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AttackArg {
    Tensor,
    GiRecovery,
    Cheat,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair; writes PREFIX.key.json and PREFIX.pub.json.
    Keygen {
        #[arg(long, value_parser = parse_kind)]
        kind: ProtocolKind,
        /// Comma-separated overrides, e.g. `n=50,k=4,cross_p=0.4`.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an honest session in-process and write its transcript.
    Session {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long, value_enum, default_value = "half")]
        breadth: BreadthArg,
    },
    /// Replay a transcript against a public key.
    Verify {
        #[arg(long)]
        public: PathBuf,
        #[arg(long)]
        transcript: PathBuf,
    },
    /// Run an adversary for many sessions and report its success rate.
    Attack {
        #[arg(long, value_enum)]
        attack: AttackArg,
        #[arg(long)]
        public: PathBuf,
        #[arg(long)]
        sessions: usize,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Observed honest transcript (required by gi-recovery).
        #[arg(long)]
        transcript: Option<PathBuf>,
        /// Record wall-clock time in the report (makes it non-reproducible).
        #[arg(long)]
        with_timing: bool,
    },
    /// Prover half of split mode, speaking on stdin/stdout.
    Prover {
        #[arg(long)]
        key: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "half")]
        breadth: BreadthArg,
    },
    /// Verifier half of split mode, speaking on stdin/stdout.
    Verifier {
        #[arg(long)]
        public: PathBuf,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
}

fn parse_kind(s: &str) -> Result<ProtocolKind, String> {
    s.parse()
}

/// Exit 2 with a message.
type Failure = String;

const ACCEPT: ExitCode = ExitCode::SUCCESS;

fn reject() -> ExitCode {
    ExitCode::from(1)
}

fn verdict_code(accept: bool) -> ExitCode {
    if accept {
        ACCEPT
    } else {
        reject()
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_key(path: &Path) -> Result<KeyDocument, Failure> {
    read_key(&read_file(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_full_key(path: &Path) -> Result<KeyDocument, Failure> {
    let doc = load_key(path)?;
    if doc.key_pair().is_none() {
        return Err(format!("{}: public-only key; a full key is required", path.display()));
    }
    Ok(doc)
}

fn params_object(spec: Option<&str>) -> Result<Value, Failure> {
    let mut obj = Map::new();
    for item in spec.unwrap_or("").split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("--params: `{item}` is not key=value"))?;
        let v = v.trim();
        let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        obj.insert(k.trim().to_string(), value);
    }
    Ok(Value::Object(obj))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn keygen(kind: ProtocolKind, params: Option<&str>, seed: u64, out: &Path) -> Result<ExitCode, Failure> {
    let params = KeyParams::from_json(kind, params_object(params)?)
        .map_err(|e| format!("--params: {e}"))?;
    let mut rng = SplitMix64::derived(seed, STREAM_KEY, 0);
    let key = generate(&params, &mut rng).map_err(|e| e.to_string())?;
    let key_path = with_suffix(out, ".key.json");
    let pub_path = with_suffix(out, ".pub.json");
    write_file(&key_path, &write_key(&key, &params, seed))?;
    write_file(&pub_path, &write_public_key(&key.public(), &params))?;
    println!("wrote {} and {}", key_path.display(), pub_path.display());
    Ok(ACCEPT)
}

fn honest_prover(doc: &KeyDocument, breadth: BreadthArg) -> HonestProver {
    let options = CommitOptions {
        breadth: breadth.into(),
        ..CommitOptions::default()
    };
    HonestProver::with_options(doc.key_pair().expect("checked by load_full_key").clone(), options)
}

fn session(
    key: &Path,
    rounds: usize,
    seed: u64,
    transcript: &Path,
    breadth: BreadthArg,
) -> Result<ExitCode, Failure> {
    if rounds == 0 {
        return Err("--rounds must be at least 1".into());
    }
    let doc = load_full_key(key)?;
    let prover = honest_prover(&doc, breadth);
    let public = doc.public();
    let t = run_session(&prover, &public, rounds, seed).with_params(doc.params.clone());
    write_file(transcript, &write_transcript(&t))?;
    let accept = t.accepted();
    println!(
        "{} session: {}/{} rounds accepted, {}",
        doc.kind(),
        t.accepted_rounds(),
        rounds,
        if accept { "accept" } else { "reject" }
    );
    Ok(verdict_code(accept))
}

fn verify_cmd(public: &Path, transcript: &Path) -> Result<ExitCode, Failure> {
    let public = load_key(public)?.public();
    let text = read_file(transcript)?;
    let t = match read_transcript(&text) {
        Ok(t) => t,
        Err(e) => {
            println!("reject: malformed transcript: {e}");
            return Ok(reject());
        }
    };
    match verify_transcript(&public, &t) {
        TranscriptVerdict::Accept => {
            println!("accept: {} rounds verified", t.records.len());
            Ok(ACCEPT)
        }
        TranscriptVerdict::Reject(reason) => {
            println!("reject: {reason}");
            Ok(reject())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn attack(
    which: AttackArg,
    public: &Path,
    sessions: usize,
    rounds: usize,
    seed: u64,
    report_path: Option<&Path>,
    transcript: Option<&Path>,
    with_timing: bool,
) -> Result<ExitCode, Failure> {
    if sessions == 0 || rounds == 0 {
        return Err("--sessions and --rounds must be at least 1".into());
    }
    let public = load_key(public)?.public();
    let started = Instant::now();
    let mut report: AttackReport = match which {
        AttackArg::Tensor => {
            let forgery = TensorForgery::against(&public).map_err(|e| e.to_string())?;
            evaluate_adversary("tensor", &forgery, &public, sessions, rounds, seed)
        }
        AttackArg::Cheat => {
            let cheater = GenericCheater::new(public.clone());
            evaluate_adversary("cheat", &cheater, &public, sessions, rounds, seed)
        }
        AttackArg::GiRecovery => {
            let path = transcript.ok_or("gi-recovery needs --transcript with observed sessions")?;
            let observed = read_transcript(&read_file(path)?)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let imp = GiRecoveryImpersonator::from_transcript(&public, &observed)
                .map_err(|e| e.to_string())?;
            eprintln!(
                "key recovery: {} after {} observed b=1 rounds",
                if imp.recovered_key().is_some() { "succeeded" } else { "failed" },
                imp.attempts().len()
            );
            evaluate_adversary("gi-recovery", &imp, &public, sessions, rounds, seed)
        }
    };
    if with_timing {
        let total_ms = started.elapsed().as_secs_f64() * 1e3;
        report.wall_time = Some(WallTime {
            total_ms,
            mean_session_ms: total_ms / sessions as f64,
        });
    }
    let json = report.to_json();
    match report_path {
        Some(path) => {
            write_file(path, &json)?;
            println!("{}; report: {}", report.summary(), path.display());
        }
        None => {
            eprintln!("{}", report.summary());
            print!("{json}");
        }
    }
    Ok(reject())
}

fn prover(key: &Path, seed: u64, breadth: BreadthArg) -> Result<ExitCode, Failure> {
    let doc = load_full_key(key)?;
    let prover = honest_prover(&doc, breadth);
    let stdin = io::stdin();
    let accept = serve_prover(&prover, &doc.public(), seed, stdin.lock(), io::stdout().lock())
        .map_err(|e| e.to_string())?;
    eprintln!("session {}", if accept { "accepted" } else { "rejected" });
    Ok(verdict_code(accept))
}

fn verifier(public: &Path, rounds: usize, seed: u64, transcript: Option<&Path>) -> Result<ExitCode, Failure> {
    if rounds == 0 {
        return Err("--rounds must be at least 1".into());
    }
    let doc = load_key(public)?;
    let input = BufReader::new(io::stdin().lock());
    let t = serve_verifier(&doc.public(), Some(doc.params.clone()), rounds, seed, input, io::stdout().lock())
        .map_err(|e| e.to_string())?;
    if let Some(path) = transcript {
        write_file(path, &write_transcript(&t))?;
    }
    let accept = t.accepted();
    eprintln!(
        "{}/{} rounds accepted, {}",
        t.accepted_rounds(),
        rounds,
        if accept { "accept" } else { "reject" }
    );
    Ok(verdict_code(accept))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Keygen {
            kind,
            params,
            seed,
            out,
        } => keygen(kind, params.as_deref(), seed, &out),
        Command::Session {
            key,
            rounds,
            seed,
            transcript,
            breadth,
        } => session(&key, rounds, seed, &transcript, breadth),
        Command::Verify { public, transcript } => verify_cmd(&public, &transcript),
        Command::Attack {
            attack: which,
            public,
            sessions,
            rounds,
            seed,
            report,
            transcript,
            with_timing,
        } => attack(
            which,
            &public,
            sessions,
            rounds,
            seed,
            report.as_deref(),
            transcript.as_deref(),
            with_timing,
        ),
        Command::Prover { key, seed, breadth } => prover(&key, seed, breadth),
        Command::Verifier {
            public,
            rounds,
            seed,
            transcript,
        } => verifier(&public, rounds, seed, transcript.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
