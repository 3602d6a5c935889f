use super::Breadth;
use crate::graph::{random_permutation, Graph, SubgraphRef, Vertex, VertexMap};
use crate::rng::SplitMix64;

pub(crate) struct SampledSupergraph {
    /// The relabeled copy Λ sent as commitment.
    pub lambda: Graph,
    /// Λ → host, injective and edge-preserving.
    pub embedding: VertexMap,
    /// The core's preimage inside Λ.
    pub core_in_lambda: SubgraphRef,
}

/// Picks Λ' ⊆ host containing `core`: extra host vertices, then extra host
/// edges among the chosen vertices, each as a uniform subset whose size
/// follows `breadth`. With `strictly_smaller`, at least one host vertex
/// stays out whenever one is available. Λ is Λ' relabeled by a random
/// permutation ρ (identity when `pin_identity`), host vertex `S[i]`
/// becoming Λ vertex `ρ(i)` for the sorted vertex list `S`.
pub(crate) fn sample_supergraph(
    host: &Graph,
    core: &SubgraphRef,
    breadth: Breadth,
    strictly_smaller: bool,
    pin_identity: bool,
    rng: &mut SplitMix64,
) -> SampledSupergraph {
    let mut in_set = vec![false; host.order()];
    for &v in core.vertices() {
        in_set[v] = true;
    }
    let available: Vec<Vertex> = (0..host.order()).filter(|&v| !in_set[v]).collect();
    let mut count = breadth.count(available.len(), rng);
    if strictly_smaller && count == available.len() && count > 0 {
        count -= 1;
    }
    for i in rng.sample_indices(available.len(), count) {
        in_set[available[i]] = true;
    }
    let chosen: Vec<Vertex> = (0..host.order()).filter(|&v| in_set[v]).collect();

    let candidates: Vec<(Vertex, Vertex)> = host
        .edges()
        .iter()
        .copied()
        .filter(|&(a, b)| in_set[a] && in_set[b] && core.edges().binary_search(&(a, b)).is_err())
        .collect();
    let edge_count = breadth.count(candidates.len(), rng);
    let mut picked = rng.sample_indices(candidates.len(), edge_count);
    picked.sort_unstable();

    let size = chosen.len();
    let rho = if pin_identity {
        VertexMap::identity(size)
    } else {
        random_permutation(size, rng)
    };
    let to_lambda = |x: Vertex| rho.apply(chosen.binary_search(&x).unwrap());
    let core_edges: Vec<(Vertex, Vertex)> = core
        .edges()
        .iter()
        .map(|&(a, b)| (to_lambda(a), to_lambda(b)))
        .collect();
    let mut lambda_edges = core_edges.clone();
    lambda_edges.extend(picked.iter().map(|&i| {
        let (a, b) = candidates[i];
        (to_lambda(a), to_lambda(b))
    }));
    let lambda = Graph::from_unsorted(size, lambda_edges);

    let mut images = vec![0; size];
    for (i, &x) in chosen.iter().enumerate() {
        images[rho.apply(i)] = x;
    }
    let embedding = VertexMap::new(host.order(), images).expect("chosen vertices are host vertices");
    let core_in_lambda = SubgraphRef::new(
        size,
        core.vertices().iter().map(|&x| to_lambda(x)).collect(),
        core_edges,
    )
    .expect("relabeling a valid subgraph keeps it valid");
    SampledSupergraph {
        lambda,
        embedding,
        core_in_lambda,
    }
}
