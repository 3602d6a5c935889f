//! Graph values, structural predicates, the tensor product and seeded constructions.

mod generate;
mod ops;
mod predicates;
mod types;

pub use generate::{blow_up, random_graph, random_permutation};
pub use ops::{compose, relabel, restrict, tensor_product, tensor_projections};
pub use predicates::{
    image_covers, is_embedding, is_homomorphism, is_isomorphism, is_proper_coloring,
    is_subgraph_of,
};
pub(crate) use predicates::AdjacencyIndex;
pub use types::{Color, Coloring, Graph, GraphError, SubgraphRef, Vertex, VertexMap};
