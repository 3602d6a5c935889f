//! Seeded random and planted constructions.
//!
//! Every constructor consumes generator draws in a fixed order so that equal
//! seeds give bit-identical graphs.

use super::types::{Graph, GraphError, Vertex, VertexMap};
use crate::rng::SplitMix64;

fn check_probability(p: f64) -> Result<(), GraphError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(GraphError::InvalidProbability(p))
    }
}

/// Erdős–Rényi `G(n, p)`. One Bernoulli draw per pair, pairs visited in
/// lexicographic order `(0,1), (0,2), ..., (n-2, n-1)`.
pub fn random_graph(n: usize, p: f64, rng: &mut SplitMix64) -> Result<Graph, GraphError> {
    check_probability(p)?;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_sorted(n, edges))
}

/// Uniform permutation of `0..n` (Fisher-Yates on the identity).
pub fn random_permutation(n: usize, rng: &mut SplitMix64) -> VertexMap {
    let mut images: Vec<Vertex> = (0..n).collect();
    rng.shuffle(&mut images);
    VertexMap::new_unchecked(n, images)
}

/// Replaces every base vertex `i` by a class of `class_sizes[i]` vertices.
///
/// Classes occupy contiguous ranges in base-vertex order. For each base edge
/// (in sorted order) every cross-class pair is drawn with probability
/// `p_edge`, row-major over the two classes; if none is drawn, one pair is
/// forced with a single `below(|A| * |B|)` draw. Returns the blown-up graph
/// and the projection onto `base`, which is a surjective homomorphism.
pub fn blow_up(
    base: &Graph,
    class_sizes: &[usize],
    p_edge: f64,
    rng: &mut SplitMix64,
) -> Result<(Graph, VertexMap), GraphError> {
    if class_sizes.len() != base.order() {
        return Err(GraphError::DimensionMismatch {
            what: "class sizes vs base order",
            expected: base.order(),
            found: class_sizes.len(),
        });
    }
    if let Some(i) = class_sizes.iter().position(|&s| s == 0) {
        return Err(GraphError::EmptyClass(i));
    }
    if !(p_edge > 0.0 && p_edge <= 1.0) {
        return Err(GraphError::InvalidProbability(p_edge));
    }
    let mut offsets = Vec::with_capacity(base.order() + 1);
    let mut total = 0;
    for &s in class_sizes {
        offsets.push(total);
        total += s;
    }
    offsets.push(total);

    let mut edges = Vec::new();
    for &(a, b) in base.edges() {
        let (sa, sb) = (class_sizes[a], class_sizes[b]);
        let before = edges.len();
        for x in 0..sa {
            for y in 0..sb {
                if rng.bernoulli(p_edge) {
                    edges.push((offsets[a] + x, offsets[b] + y));
                }
            }
        }
        if edges.len() == before {
            let pick = rng.below_usize(sa * sb);
            edges.push((offsets[a] + pick / sb, offsets[b] + pick % sb));
        }
    }
    let proj = class_sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i, s))
        .collect();
    Ok((
        Graph::from_unsorted(total, edges),
        VertexMap::new_unchecked(base.order(), proj),
    ))
}
