//! Planted key pairs for the four protocols.
//!
//! Each generator builds the public instance around a secret it chose first
//! (a projection, a planted copy, or a colour assignment). Default
//! parameters are artifact choices, not calibrated hardness levels.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    blow_up, compose, image_covers, is_homomorphism, is_isomorphism, is_proper_coloring,
    is_subgraph_of, random_graph, random_permutation, relabel, Color, Coloring, Graph,
    GraphError, SubgraphRef, Vertex, VertexMap,
};
use crate::protocol::ProtocolKind;
use crate::rng::SplitMix64;

/// Connectivity/non-bipartiteness resampling limit for the GH base graph.
pub const GH_RESAMPLE_BUDGET: usize = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum KeygenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no connected non-bipartite base graph after {0} attempts")]
    ResampleBudgetExhausted(usize),
    #[error("key invariant violated: {0}")]
    InvariantViolated(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GhParams {
    pub base_order: usize,
    pub base_p: f64,
    pub class_size_min: usize,
    pub class_size_max: usize,
    pub p_edge: f64,
    /// Randomly relabel Γ1 so the class layout does not reveal α.
    pub shuffle: bool,
}

impl Default for GhParams {
    fn default() -> Self {
        Self {
            base_order: 40,
            base_p: 0.3,
            class_size_min: 2,
            class_size_max: 4,
            p_edge: 0.5,
            shuffle: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SgipParams {
    pub m: usize,
    pub p: f64,
    pub big_order: usize,
    pub decoy_p: f64,
}

impl Default for SgipParams {
    fn default() -> Self {
        Self {
            m: 30,
            p: 0.5,
            big_order: 100,
            decoy_p: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GcParams {
    pub n: usize,
    pub k: Color,
    pub cross_p: f64,
}

impl Default for GcParams {
    fn default() -> Self {
        Self {
            n: 100,
            k: 5,
            cross_p: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GcSgipParams {
    pub total_order: usize,
    pub n: usize,
    pub k: Color,
    pub cross_p: f64,
    pub ambient_p: f64,
}

impl Default for GcSgipParams {
    fn default() -> Self {
        Self {
            total_order: 150,
            n: 60,
            k: 5,
            cross_p: 0.5,
            ambient_p: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum KeyParams {
    Gh(GhParams),
    Sgip(SgipParams),
    Gc(GcParams),
    GcSgip(GcSgipParams),
}

impl KeyParams {
    pub fn default_for(kind: ProtocolKind) -> Self {
        match kind {
            ProtocolKind::Gh => KeyParams::Gh(GhParams::default()),
            ProtocolKind::Sgip => KeyParams::Sgip(SgipParams::default()),
            ProtocolKind::Gc => KeyParams::Gc(GcParams::default()),
            ProtocolKind::GcSgip => KeyParams::GcSgip(GcSgipParams::default()),
        }
    }

    pub fn kind(&self) -> ProtocolKind {
        match self {
            KeyParams::Gh(_) => ProtocolKind::Gh,
            KeyParams::Sgip(_) => ProtocolKind::Sgip,
            KeyParams::Gc(_) => ProtocolKind::Gc,
            KeyParams::GcSgip(_) => ProtocolKind::GcSgip,
        }
    }

    /// Parses a params object for a known kind; unknown fields are errors.
    pub fn from_json(kind: ProtocolKind, value: serde_json::Value) -> serde_json::Result<Self> {
        Ok(match kind {
            ProtocolKind::Gh => KeyParams::Gh(serde_json::from_value(value)?),
            ProtocolKind::Sgip => KeyParams::Sgip(serde_json::from_value(value)?),
            ProtocolKind::Gc => KeyParams::Gc(serde_json::from_value(value)?),
            ProtocolKind::GcSgip => KeyParams::GcSgip(serde_json::from_value(value)?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhPublic {
    pub g1: Graph,
    pub g2: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhKeyPair {
    pub public: GhPublic,
    /// Surjective homomorphism Γ1 → Γ2.
    pub alpha: VertexMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgipPublic {
    pub omega: Graph,
    pub g2: Graph,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgipKeyPair {
    pub public: SgipPublic,
    /// Planted copy Γ1 inside Ω.
    pub g1: SubgraphRef,
    /// Isomorphism from `g1.to_graph()` onto Γ2.
    pub alpha: VertexMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcPublic {
    pub gamma: Graph,
    pub k: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcKeyPair {
    pub public: GcPublic,
    pub coloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcSgipPublic {
    pub gamma: Graph,
    pub n: usize,
    pub k: Color,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcSgipKeyPair {
    pub public: GcSgipPublic,
    /// Planted order-n subgraph Γ1 inside Γ.
    pub g1: SubgraphRef,
    /// Proper coloring of `g1.to_graph()`.
    pub coloring: Coloring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PublicKey {
    Gh(GhPublic),
    Sgip(SgipPublic),
    Gc(GcPublic),
    GcSgip(GcSgipPublic),
}

impl PublicKey {
    pub fn kind(&self) -> ProtocolKind {
        match self {
            PublicKey::Gh(_) => ProtocolKind::Gh,
            PublicKey::Sgip(_) => ProtocolKind::Sgip,
            PublicKey::Gc(_) => ProtocolKind::Gc,
            PublicKey::GcSgip(_) => ProtocolKind::GcSgip,
        }
    }

    /// 64-bit FNV-1a over the canonical public-key serialization.
    pub fn digest(&self) -> u64 {
        crate::format::fnv1a64(crate::format::canonical_public_bytes(self).as_bytes())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KeyPair {
    Gh(GhKeyPair),
    Sgip(SgipKeyPair),
    Gc(GcKeyPair),
    GcSgip(GcSgipKeyPair),
}

impl KeyPair {
    pub fn kind(&self) -> ProtocolKind {
        match self {
            KeyPair::Gh(_) => ProtocolKind::Gh,
            KeyPair::Sgip(_) => ProtocolKind::Sgip,
            KeyPair::Gc(_) => ProtocolKind::Gc,
            KeyPair::GcSgip(_) => ProtocolKind::GcSgip,
        }
    }

    pub fn public(&self) -> PublicKey {
        match self {
            KeyPair::Gh(k) => PublicKey::Gh(k.public.clone()),
            KeyPair::Sgip(k) => PublicKey::Sgip(k.public.clone()),
            KeyPair::Gc(k) => PublicKey::Gc(k.public.clone()),
            KeyPair::GcSgip(k) => PublicKey::GcSgip(k.public.clone()),
        }
    }

    /// Checks the trapdoor against the public instance.
    pub fn validate(&self) -> Result<(), KeygenError> {
        let ok = match self {
            KeyPair::Gh(k) => {
                is_homomorphism(&k.alpha, &k.public.g1, &k.public.g2)?
                    && image_covers(&k.alpha, &k.public.g1, &k.public.g2)?
            }
            KeyPair::Sgip(k) => {
                is_subgraph_of(&k.g1, &k.public.omega)
                    && is_isomorphism(&k.alpha, &k.g1.to_graph()?, &k.public.g2)?
            }
            KeyPair::Gc(k) => is_proper_coloring(&k.coloring, &k.public.gamma)?
                && k.coloring.k() == k.public.k,
            KeyPair::GcSgip(k) => {
                is_subgraph_of(&k.g1, &k.public.gamma)
                    && k.g1.order() == k.public.n
                    && k.coloring.k() == k.public.k
                    && is_proper_coloring(&k.coloring, &k.g1.to_graph()?)?
            }
        };
        if ok {
            Ok(())
        } else {
            Err(KeygenError::InvariantViolated(match self {
                KeyPair::Gh(_) => "alpha is not a surjective homomorphism g1 -> g2",
                KeyPair::Sgip(_) => "g1 is not an isomorphic copy of g2 inside omega",
                KeyPair::Gc(_) => "coloring is not a proper k-coloring of gamma",
                KeyPair::GcSgip(_) => "g1 is not a properly k-colored order-n subgraph",
            }))
        }
    }

    /// FNV-1a digest of the private trapdoor, used to salt the prover's
    /// randomness so that a published master seed does not reveal it.
    pub fn private_digest(&self) -> u64 {
        let mut words: Vec<u64> = Vec::new();
        let push_map = |m: &VertexMap, w: &mut Vec<u64>| {
            w.push(m.codomain_order() as u64);
            w.extend(m.images().iter().map(|&x| x as u64));
        };
        match self {
            KeyPair::Gh(k) => push_map(&k.alpha, &mut words),
            KeyPair::Sgip(k) => {
                words.extend(k.g1.vertices().iter().map(|&x| x as u64));
                push_map(&k.alpha, &mut words);
            }
            KeyPair::Gc(k) => words.extend(k.coloring.colors().iter().map(|&c| c as u64)),
            KeyPair::GcSgip(k) => {
                words.extend(k.g1.vertices().iter().map(|&x| x as u64));
                words.extend(k.coloring.colors().iter().map(|&c| c as u64));
            }
        }
        let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
        crate::format::fnv1a64(&bytes)
    }
}

fn check_p(name: &str, p: f64, allow_zero: bool) -> Result<(), KeygenError> {
    let lower_ok = if allow_zero { p >= 0.0 } else { p > 0.0 };
    if lower_ok && p <= 1.0 {
        Ok(())
    } else {
        Err(KeygenError::InvalidParams(format!("{name} = {p} out of range")))
    }
}

/// Γ2 is a connected non-bipartite `G(base_order, base_p)` (resampled up to
/// [`GH_RESAMPLE_BUDGET`] times), Γ1 its blow-up with class sizes drawn
/// uniformly from `class_size_min..=class_size_max`, α the projection.
pub fn gen_gh_key(params: &GhParams, rng: &mut SplitMix64) -> Result<GhKeyPair, KeygenError> {
    if params.base_order < 3 {
        return Err(KeygenError::InvalidParams("base_order must be >= 3".into()));
    }
    check_p("base_p", params.base_p, false)?;
    check_p("p_edge", params.p_edge, false)?;
    if params.class_size_min == 0 || params.class_size_min > params.class_size_max {
        return Err(KeygenError::InvalidParams(
            "class sizes need 1 <= class_size_min <= class_size_max".into(),
        ));
    }
    let mut g2 = None;
    for _ in 0..GH_RESAMPLE_BUDGET {
        let candidate = random_graph(params.base_order, params.base_p, rng)?;
        if candidate.is_connected() && !candidate.is_bipartite() {
            g2 = Some(candidate);
            break;
        }
    }
    let g2 = g2.ok_or(KeygenError::ResampleBudgetExhausted(GH_RESAMPLE_BUDGET))?;
    let sizes: Vec<usize> = (0..g2.order())
        .map(|_| rng.range_inclusive(params.class_size_min, params.class_size_max))
        .collect();
    let (big, proj) = blow_up(&g2, &sizes, params.p_edge, rng)?;
    let (g1, alpha) = if params.shuffle {
        let perm = random_permutation(big.order(), rng);
        let g1 = relabel(&big, &perm)?;
        (g1, compose(&perm.inverse()?, &proj)?)
    } else {
        (big, proj)
    };
    Ok(GhKeyPair {
        public: GhPublic { g1, g2 },
        alpha,
    })
}

/// Γ2 = `G(m, p)`, planted through a random injection into `big_order`
/// vertices; every other pair of Ω (including non-planted pairs among the
/// planted vertices) is added with probability `decoy_p`, visiting pairs in
/// lexicographic order.
pub fn gen_sgip_key(params: &SgipParams, rng: &mut SplitMix64) -> Result<SgipKeyPair, KeygenError> {
    if params.m < 3 || params.m > params.big_order {
        return Err(KeygenError::InvalidParams(
            "need 3 <= m <= big_order".into(),
        ));
    }
    check_p("p", params.p, true)?;
    check_p("decoy_p", params.decoy_p, true)?;
    let g2 = random_graph(params.m, params.p, rng)?;
    let injection = rng.sample_indices(params.big_order, params.m);
    let planted: Vec<(Vertex, Vertex)> = g2
        .edges()
        .iter()
        .map(|&(u, v)| (injection[u], injection[v]))
        .collect();
    let planted_graph = Graph::from_unsorted(params.big_order, planted.clone());
    let mut edges = planted_graph.edges().to_vec();
    for a in 0..params.big_order {
        for b in a + 1..params.big_order {
            if !planted_graph.has_edge(a, b) && rng.bernoulli(params.decoy_p) {
                edges.push((a, b));
            }
        }
    }
    let omega = Graph::from_unsorted(params.big_order, edges);
    let g1 = SubgraphRef::new(params.big_order, injection.clone(), planted)?;
    // alpha: dense index of a planted vertex -> the Γ2 vertex it came from.
    let mut source = vec![0; params.big_order];
    for (i, &x) in injection.iter().enumerate() {
        source[x] = i;
    }
    let alpha = VertexMap::new(params.m, g1.vertices().iter().map(|&x| source[x]).collect())?;
    Ok(SgipKeyPair {
        public: SgipPublic { omega, g2 },
        g1,
        alpha,
    })
}

/// Uniform colours in `1..=k` per vertex, then each cross-colour pair
/// (lexicographic order) with probability `cross_p`. Monochromatic pairs
/// consume no draw and are never edges.
pub fn gen_gc_key(params: &GcParams, rng: &mut SplitMix64) -> Result<GcKeyPair, KeygenError> {
    if params.k == 0 || params.k as usize > params.n {
        return Err(KeygenError::InvalidParams("need 1 <= k <= n".into()));
    }
    check_p("cross_p", params.cross_p, true)?;
    let (gamma, coloring) = planted_coloring(params.n, params.k, params.cross_p, rng)?;
    Ok(GcKeyPair {
        public: GcPublic { gamma, k: params.k },
        coloring,
    })
}

pub(crate) fn planted_coloring(
    n: usize,
    k: Color,
    cross_p: f64,
    rng: &mut SplitMix64,
) -> Result<(Graph, Coloring), KeygenError> {
    let colors: Vec<Color> = (0..n).map(|_| 1 + rng.below(k as u64) as Color).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if colors[u] != colors[v] && rng.bernoulli(cross_p) {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_sorted(n, edges), Coloring::new(k, colors)?))
}

/// A planted k-coloured graph on a random n-subset of `total_order`
/// vertices (its edges form Γ1), then every other pair of Γ, including
/// pairs inside the subset, with probability `ambient_p`.
pub fn gen_gcsgip_key(
    params: &GcSgipParams,
    rng: &mut SplitMix64,
) -> Result<GcSgipKeyPair, KeygenError> {
    if params.n == 0 || params.n > params.total_order {
        return Err(KeygenError::InvalidParams("need 1 <= n <= total_order".into()));
    }
    if params.k == 0 || params.k as usize > params.n {
        return Err(KeygenError::InvalidParams("need 1 <= k <= n".into()));
    }
    check_p("cross_p", params.cross_p, true)?;
    check_p("ambient_p", params.ambient_p, true)?;
    let mut subset = rng.sample_indices(params.total_order, params.n);
    subset.sort_unstable();
    let (planted, coloring) = planted_coloring(params.n, params.k, params.cross_p, rng)?;
    let g1_edges: Vec<(Vertex, Vertex)> = planted
        .edges()
        .iter()
        .map(|&(u, v)| (subset[u], subset[v]))
        .collect();
    let g1_graph = Graph::from_unsorted(params.total_order, g1_edges.clone());
    let mut edges = g1_edges.clone();
    for a in 0..params.total_order {
        for b in a + 1..params.total_order {
            if !g1_graph.has_edge(a, b) && rng.bernoulli(params.ambient_p) {
                edges.push((a, b));
            }
        }
    }
    let gamma = Graph::from_unsorted(params.total_order, edges);
    let g1 = SubgraphRef::new(params.total_order, subset, g1_edges)?;
    Ok(GcSgipKeyPair {
        public: GcSgipPublic {
            gamma,
            n: params.n,
            k: params.k,
        },
        g1,
        coloring,
    })
}

/// Dispatches on the parameter kind.
pub fn generate(params: &KeyParams, rng: &mut SplitMix64) -> Result<KeyPair, KeygenError> {
    Ok(match params {
        KeyParams::Gh(p) => KeyPair::Gh(gen_gh_key(p, rng)?),
        KeyParams::Sgip(p) => KeyPair::Sgip(gen_sgip_key(p, rng)?),
        KeyParams::Gc(p) => KeyPair::Gc(gen_gc_key(p, rng)?),
        KeyParams::GcSgip(p) => KeyPair::GcSgip(gen_gcsgip_key(p, rng)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_classes_give_identical_graphs() {
        let params = GhParams {
            base_order: 12,
            class_size_min: 1,
            class_size_max: 1,
            p_edge: 1.0,
            base_p: 0.5,
            shuffle: false,
        };
        let key = gen_gh_key(&params, &mut SplitMix64::new(4)).unwrap();
        assert_eq!(key.public.g1, key.public.g2);
        assert_eq!(key.alpha, VertexMap::identity(12));
    }

    #[test]
    fn k3_base_gives_complete_tripartite() {
        let params = GhParams {
            base_order: 3,
            base_p: 1.0,
            class_size_min: 2,
            class_size_max: 2,
            p_edge: 1.0,
            shuffle: false,
        };
        let key = gen_gh_key(&params, &mut SplitMix64::new(0)).unwrap();
        assert_eq!(key.public.g2, Graph::complete(3));
        assert_eq!(key.public.g1.order(), 6);
        assert_eq!(key.public.g1.edge_count(), 12);
        KeyPair::Gh(key).validate().unwrap();
    }

    #[test]
    fn bipartite_only_parameters_exhaust_the_budget() {
        // Three vertices with base_p tiny: never a triangle, so never non-bipartite.
        let params = GhParams {
            base_order: 3,
            base_p: 1e-9,
            ..GhParams::default()
        };
        assert_eq!(
            gen_gh_key(&params, &mut SplitMix64::new(1)).unwrap_err(),
            KeygenError::ResampleBudgetExhausted(GH_RESAMPLE_BUDGET)
        );
    }

    #[test]
    fn sgip_without_decoys_is_a_relabeling() {
        let params = SgipParams {
            m: 10,
            p: 0.5,
            big_order: 10,
            decoy_p: 0.0,
        };
        let key = gen_sgip_key(&params, &mut SplitMix64::new(8)).unwrap();
        assert_eq!(key.g1, SubgraphRef::whole(&key.public.omega));
        assert_eq!(key.public.omega.edge_count(), key.public.g2.edge_count());
        KeyPair::Sgip(key).validate().unwrap();
    }

    #[test]
    fn gc_with_one_color_is_edgeless() {
        let params = GcParams {
            n: 20,
            k: 1,
            cross_p: 1.0,
        };
        let key = gen_gc_key(&params, &mut SplitMix64::new(2)).unwrap();
        assert_eq!(key.public.gamma.edge_count(), 0);
        assert!(key.coloring.colors().iter().all(|&c| c == 1));
    }

    #[test]
    fn gc_rainbow_dense_key() {
        let params = GcParams {
            n: 12,
            k: 12,
            cross_p: 1.0,
        };
        let key = gen_gc_key(&params, &mut SplitMix64::new(6)).unwrap();
        let c = &key.coloring;
        for u in 0..12 {
            for v in u + 1..12 {
                assert_eq!(key.public.gamma.has_edge(u, v), c.color(u) != c.color(v));
            }
        }
        KeyPair::Gc(key).validate().unwrap();
    }

    #[test]
    fn gcsgip_trivial_ambient() {
        let params = GcSgipParams {
            total_order: 15,
            n: 15,
            k: 3,
            cross_p: 0.6,
            ambient_p: 0.0,
        };
        let key = gen_gcsgip_key(&params, &mut SplitMix64::new(5)).unwrap();
        assert_eq!(key.g1, SubgraphRef::whole(&key.public.gamma));
        KeyPair::GcSgip(key).validate().unwrap();
    }

    #[test]
    fn gcsgip_full_ambient_rainbow_is_valid() {
        let params = GcSgipParams {
            total_order: 20,
            n: 8,
            k: 8,
            cross_p: 0.5,
            ambient_p: 1.0,
        };
        let key = gen_gcsgip_key(&params, &mut SplitMix64::new(5)).unwrap();
        assert_eq!(key.public.gamma, Graph::complete(20));
        KeyPair::GcSgip(key).validate().unwrap();
    }

    #[test]
    fn bad_params_are_rejected() {
        let mut rng = SplitMix64::new(0);
        assert!(gen_gc_key(&GcParams { n: 3, k: 4, cross_p: 0.5 }, &mut rng).is_err());
        assert!(gen_sgip_key(
            &SgipParams {
                m: 2,
                ..SgipParams::default()
            },
            &mut rng
        )
        .is_err());
        assert!(gen_gcsgip_key(
            &GcSgipParams {
                n: 200,
                ..GcSgipParams::default()
            },
            &mut rng
        )
        .is_err());
    }

    #[test]
    fn params_from_json_rejects_unknown_fields() {
        let v = serde_json::json!({"n": 10, "bogus": 1});
        assert!(KeyParams::from_json(ProtocolKind::Gc, v).is_err());
        let v = serde_json::json!({"n": 10});
        let p = KeyParams::from_json(ProtocolKind::Gc, v).unwrap();
        assert_eq!(
            p,
            KeyParams::Gc(GcParams {
                n: 10,
                ..GcParams::default()
            })
        );
    }
}
