//! Graph-based challenge-response authentication.
//!
//! Four interactive identification protocols built on hard graph problems
//! (homomorphism, subgraph isomorphism, coloring, and coloring of a hidden
//! subgraph), the attacks that break or weaken two of them, witness
//! extractors for the other two, and a seeded session harness.
//!
//! ```
//! use graphauth::keygen::{generate, KeyParams};
//! use graphauth::protocol::{run_session, verify_transcript, HonestProver, ProtocolKind};
//! use graphauth::rng::SplitMix64;
//!
//! let params = KeyParams::default_for(ProtocolKind::Gc);
//! let key = generate(&params, &mut SplitMix64::new(7)).unwrap();
//! let public = key.public();
//! let transcript = run_session(&HonestProver::new(key), &public, 10, 42);
//! assert!(transcript.accepted());
//! assert!(verify_transcript(&public, &transcript).is_accept());
//! ```

pub mod attacks;
pub mod format;
pub mod graph;
pub mod keygen;
pub mod protocol;
pub mod rng;
pub mod solver;

pub use graph::{Color, Coloring, Graph, GraphError, SubgraphRef, Vertex, VertexMap};
pub use keygen::{KeyPair, KeyParams, PublicKey};
pub use protocol::{Challenge, Commitment, ProtocolKind, Response, Transcript, Verdict};
pub use rng::SplitMix64;
