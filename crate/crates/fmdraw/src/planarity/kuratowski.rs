//! Brute-force planarity oracle: exhaustive search for a K5 or K3,3
//! subdivision. Independent of the embedding engine; intended for graphs of
//! at most [`ORACLE_VERTEX_LIMIT`] vertices.

use super::{PlanarityError, SimpleGraph};

pub const ORACLE_VERTEX_LIMIT: usize = 12;

/// True iff `g` contains no subdivision of K5 or K3,3.
pub fn oracle_is_planar(g: &SimpleGraph) -> Result<bool, PlanarityError> {
    oracle_is_planar_bounded(g, ORACLE_VERTEX_LIMIT)
}

/// The same search with a caller-chosen vertex bound; the search is
/// exhaustive at any size, the bound only guards against runaway inputs.
pub fn oracle_is_planar_bounded(
    g: &SimpleGraph,
    max_vertices: usize,
) -> Result<bool, PlanarityError> {
    let n = g.vertex_count();
    if n > max_vertices {
        return Err(PlanarityError::TooLarge(n, max_vertices));
    }
    Ok(!has_k5_subdivision(g) && !has_k33_subdivision(g))
}

fn has_k5_subdivision(g: &SimpleGraph) -> bool {
    let candidates: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) >= 4).collect();
    if candidates.len() < 5 {
        return false;
    }
    let mut branch = [0usize; 5];
    combinations(&candidates, 5, &mut |chosen| {
        branch.copy_from_slice(chosen);
        let mut pairs = Vec::with_capacity(10);
        for i in 0..5 {
            for j in (i + 1)..5 {
                pairs.push((branch[i], branch[j]));
            }
        }
        connects_disjointly(g, &branch, &pairs)
    })
}

fn has_k33_subdivision(g: &SimpleGraph) -> bool {
    let candidates: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.degree(v) >= 3).collect();
    if candidates.len() < 6 {
        return false;
    }
    combinations(&candidates, 6, &mut |six| {
        // Split the six branch vertices into the two sides in every way;
        // fixing six[0] on the left halves the symmetric cases.
        let rest = &six[1..];
        let mut found = false;
        combinations(rest, 2, &mut |left_rest| {
            let left = [six[0], left_rest[0], left_rest[1]];
            let right: Vec<usize> = rest
                .iter()
                .copied()
                .filter(|v| !left.contains(v))
                .collect();
            let branch = [left[0], left[1], left[2], right[0], right[1], right[2]];
            let mut pairs = Vec::with_capacity(9);
            for &l in &left {
                for &r in &right {
                    pairs.push((l, r));
                }
            }
            if connects_disjointly(g, &branch, &pairs) {
                found = true;
            }
            found
        });
        found
    })
}

/// Visit `k`-subsets of `items`; stops early when the callback returns true.
fn combinations(items: &[usize], k: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if chosen.len() == k {
            return f(chosen);
        }
        let needed = k - chosen.len();
        for i in start..items.len() {
            if items.len() - i < needed {
                break;
            }
            chosen.push(items[i]);
            if rec(items, k, i + 1, chosen, f) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    rec(items, k, 0, &mut Vec::with_capacity(k), f)
}

/// Can every listed pair of branch vertices be joined by paths that are
/// internally disjoint and avoid the branch set?
fn connects_disjointly(g: &SimpleGraph, branch: &[usize], pairs: &[(usize, usize)]) -> bool {
    let n = g.vertex_count();
    let mut is_branch = vec![false; n];
    for &b in branch {
        is_branch[b] = true;
    }
    let mut used = vec![false; n];
    next_pair(g, &is_branch, pairs, 0, &mut used)
}

fn next_pair(
    g: &SimpleGraph,
    is_branch: &[bool],
    pairs: &[(usize, usize)],
    idx: usize,
    used: &mut Vec<bool>,
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    let (a, b) = pairs[idx];
    extend_path(g, is_branch, pairs, idx, a, b, used)
}

fn extend_path(
    g: &SimpleGraph,
    is_branch: &[bool],
    pairs: &[(usize, usize)],
    idx: usize,
    cur: usize,
    target: usize,
    used: &mut Vec<bool>,
) -> bool {
    // Close the path directly when possible before going deeper.
    if g.has_edge(cur, target) && next_pair(g, is_branch, pairs, idx + 1, used) {
        return true;
    }
    for &w in g.neighbors(cur) {
        if w == target || is_branch[w] || used[w] {
            continue;
        }
        used[w] = true;
        if extend_path(g, is_branch, pairs, idx, w, target, used) {
            return true;
        }
        used[w] = false;
    }
    false
}
