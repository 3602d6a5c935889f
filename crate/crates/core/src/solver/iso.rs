use super::refine::refine_colors;
use super::SolverError;
use crate::graph::{is_isomorphism, Graph, VertexMap};

/// Largest order accepted by [`brute_force_isomorphism`].
pub const BRUTE_FORCE_MAX_ORDER: usize = 8;

/// Complete isomorphism search by individualization-refinement.
///
/// Both graphs are refined together as one disjoint union, so cell ids are
/// comparable across sides. A branch dies as soon as some cell holds
/// different numbers of `g` and `h` vertices. Otherwise the smallest
/// non-singleton cell (lowest id on ties) is split by individualizing its
/// lowest `g` vertex against each `h` vertex of that cell in turn. Any
/// isomorphism maps that vertex into the same cell, so the search is complete.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<VertexMap> {
    if g.order() != h.order()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    let n = g.order();
    if n == 0 {
        return Some(VertexMap::identity(0));
    }
    let union = g.disjoint_union(h);
    let (colors, count) = refine_colors(&union, &vec![0; 2 * n]);
    search(&union, g, h, colors, count)
}

fn search(
    union: &Graph,
    g: &Graph,
    h: &Graph,
    colors: Vec<usize>,
    count: usize,
) -> Option<VertexMap> {
    let n = g.order();
    let mut g_count = vec![0usize; count];
    let mut h_count = vec![0usize; count];
    for v in 0..n {
        g_count[colors[v]] += 1;
        h_count[colors[n + v]] += 1;
    }
    if g_count != h_count {
        return None;
    }
    let target = (0..count)
        .filter(|&c| g_count[c] > 1)
        .min_by_key(|&c| (g_count[c], c));
    match target {
        None => {
            let mut h_vertex = vec![0; count];
            for w in 0..n {
                h_vertex[colors[n + w]] = w;
            }
            let map = VertexMap::new(n, (0..n).map(|v| h_vertex[colors[v]]).collect()).ok()?;
            is_isomorphism(&map, g, h).ok()?.then_some(map)
        }
        Some(cell) => {
            let v = (0..n).find(|&v| colors[v] == cell)?;
            for w in (0..n).filter(|&w| colors[n + w] == cell) {
                let mut next = colors.clone();
                next[v] = count;
                next[n + w] = count;
                let (refined, refined_count) = refine_colors(union, &next);
                if let Some(found) = search(union, g, h, refined, refined_count) {
                    return Some(found);
                }
            }
            None
        }
    }
}

/// Tries all bijections in lexicographic order; the first isomorphism wins.
pub fn brute_force_isomorphism(g: &Graph, h: &Graph) -> Result<Option<VertexMap>, SolverError> {
    if g.order() > BRUTE_FORCE_MAX_ORDER {
        return Err(SolverError::OrderAboveCap {
            order: g.order(),
            cap: BRUTE_FORCE_MAX_ORDER,
        });
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let map = VertexMap::new(n, perm.clone()).expect("permutation in range");
        if is_isomorphism(&map, g, h).expect("dimensions match") {
            return Ok(Some(map));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}
