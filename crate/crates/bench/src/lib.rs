//! Fixed-seed inputs shared by the benchmarks.

use graphauth::keygen::{generate, KeyPair, KeyParams};
use graphauth::protocol::ProtocolKind;
use graphauth::{Graph, SplitMix64};

/// Default-parameter key of the given kind, always from seed 1.
pub fn default_key(kind: ProtocolKind) -> KeyPair {
    generate(&KeyParams::default_for(kind), &mut SplitMix64::new(1)).expect("default params are valid")
}

/// `G(n, p)` from a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    graphauth::graph::random_graph(n, p, &mut SplitMix64::new(seed)).expect("valid probability")
}
