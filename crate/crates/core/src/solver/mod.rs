//! Graph isomorphism and bounded subgraph-embedding search.
//!
//! A plain 1-dimensional colour-refinement plus backtracking engine. It is
//! fast on random graphs, which is all the key-recovery attack needs.

mod embed;
mod iso;
mod refine;

use thiserror::Error;

pub use embed::{find_embedding, EmbeddingSearch};
pub use iso::{brute_force_isomorphism, find_isomorphism, BRUTE_FORCE_MAX_ORDER};
pub use refine::{wl_refine, CellSignature, RefinementPartition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("brute force limited to order {cap}, got {order}")]
    OrderAboveCap { order: usize, cap: usize },
}
