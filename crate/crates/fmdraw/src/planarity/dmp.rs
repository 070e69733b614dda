//! Face-insertion planarity testing and embedding for biconnected blocks
//! (Demoucron–Malgrange–Pertuiset).
//!
//! The embedded subgraph starts as a cycle and grows by one fragment path at
//! a time; a fragment with no admissible face certifies non-planarity, and a
//! fragment with exactly one admissible face is forced. Faces are maintained
//! as consistently oriented vertex cycles, so every directed edge lies in
//! exactly one face at all times.

use std::collections::{BTreeMap, BTreeSet};

/// Embed one biconnected block given by its canonical edge list. Returns the
/// per-vertex rotation cycles (in original vertex ids), or `None` when the
/// block is not planar.
pub(super) fn embed_block(block: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    if block.len() == 1 {
        let (u, v) = block[0];
        return Some(vec![(u, vec![v]), (v, vec![u])]);
    }

    // Local indexing.
    let mut verts: Vec<usize> = block
        .iter()
        .flat_map(|&(u, v)| [u, v])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    verts.sort_unstable();
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let m = block.len();
    if n >= 3 && m > 3 * n - 6 {
        return None;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in block {
        let (u, v) = (index[&u], index[&v]);
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }

    let cycle = initial_cycle(&adj);
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), {
        let mut rev = cycle.clone();
        rev[1..].reverse();
        rev
    }];
    let mut embedded_v = vec![false; n];
    let mut embedded_e: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        embedded_v[cycle[i]] = true;
        let a = cycle[i];
        let b = cycle[(i + 1) % cycle.len()];
        embedded_e.insert((a.min(b), a.max(b)));
    }

    while embedded_e.len() < m {
        let fragments = find_fragments(&adj, &embedded_v, &embedded_e);
        debug_assert!(!fragments.is_empty());

        // Admissible faces per fragment; a zero count is a certificate of
        // non-planarity, a count of one forces the choice.
        let mut choice: Option<(usize, Vec<usize>)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            let forced = admissible.len() == 1;
            if choice.is_none() {
                choice = Some((fi, admissible));
            } else if forced {
                choice = Some((fi, admissible));
                break;
            }
        }
        let (fi, admissible) = choice.unwrap();
        let frag = &fragments[fi];
        let face_idx = admissible[0];

        let path = fragment_path(&adj, frag, &embedded_v);
        for w in &path[1..path.len() - 1] {
            embedded_v[*w] = true;
        }
        for pair in path.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            embedded_e.insert((a.min(b), a.max(b)));
        }
        split_face(&mut faces, face_idx, &path);
    }

    // Rotation extraction: in a directed face `... p, v, q ...` the edge to
    // `q` follows the edge to `p` in the rotation at `v`.
    let mut succ: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for face in &faces {
        let len = face.len();
        for i in 0..len {
            let p = face[(i + len - 1) % len];
            let v = face[i];
            let q = face[(i + 1) % len];
            succ[v].insert(p, q);
        }
    }
    let mut out = Vec::with_capacity(n);
    for v in 0..n {
        let mut rot = Vec::with_capacity(adj[v].len());
        let start = *succ[v].keys().next().unwrap();
        let mut cur = start;
        loop {
            rot.push(verts[cur]);
            cur = succ[v][&cur];
            if cur == start {
                break;
            }
        }
        debug_assert_eq!(rot.len(), adj[v].len());
        out.push((verts[v], rot));
    }
    Some(out)
}

pub(super) fn block_is_planar(block: &[(usize, usize)]) -> bool {
    embed_block(block).is_some()
}

/// Some cycle of a biconnected block with at least two edges. Undirected
/// depth-first search has no cross edges, so the first back edge closes a
/// cycle through tree ancestors.
fn initial_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut disc = vec![usize::MAX; n];
    let mut timer = 0usize;
    disc[0] = timer;
    timer += 1;
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some(&mut (u, ref mut idx)) = stack.last_mut() {
        if *idx == adj[u].len() {
            stack.pop();
            continue;
        }
        let v = adj[u][*idx];
        *idx += 1;
        if disc[v] == usize::MAX {
            parent[v] = u;
            disc[v] = timer;
            timer += 1;
            stack.push((v, 0));
        } else if v != parent[u] && disc[v] < disc[u] {
            let mut cycle = vec![u];
            let mut w = u;
            while w != v {
                w = parent[w];
                cycle.push(w);
            }
            cycle.reverse();
            return cycle;
        }
    }
    unreachable!("biconnected block with >= 2 edges contains a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Free (not yet embedded) vertices; empty for a chord fragment.
    free: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn find_fragments(
    adj: &[Vec<usize>],
    embedded_v: &[bool],
    embedded_e: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut comp = vec![usize::MAX; n];
    for start in 0..n {
        if embedded_v[start] || comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[start] = id;
        let mut queue = vec![start];
        let mut free = Vec::new();
        let mut attach = BTreeSet::new();
        while let Some(u) = queue.pop() {
            free.push(u);
            for &v in &adj[u] {
                if embedded_v[v] {
                    attach.insert(v);
                } else if comp[v] == usize::MAX {
                    comp[v] = id;
                    queue.push(v);
                }
            }
        }
        free.sort_unstable();
        out.push(Fragment {
            attachments: attach.into_iter().collect(),
            free,
            chord: None,
        });
    }
    for u in 0..n {
        if !embedded_v[u] {
            continue;
        }
        for &v in &adj[u] {
            if v > u && embedded_v[v] && !embedded_e.contains(&(u, v)) {
                out.push(Fragment {
                    attachments: vec![u, v],
                    free: Vec::new(),
                    chord: Some((u, v)),
                });
            }
        }
    }
    out
}

/// A path through the fragment between its two smallest attachments.
fn fragment_path(adj: &[Vec<usize>], frag: &Fragment, embedded_v: &[bool]) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let a = frag.attachments[0];
    let b = frag.attachments[1];
    let in_frag: BTreeSet<usize> = frag.free.iter().copied().collect();
    // BFS from a through free vertices until b is adjacent.
    let mut pred: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    for &w in &adj[a] {
        if in_frag.contains(&w) && !pred.contains_key(&w) {
            pred.insert(w, a);
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        if adj[u].contains(&b) {
            let mut path = vec![b, u];
            let mut cur = u;
            while cur != a {
                cur = pred[&cur];
                path.push(cur);
            }
            path.reverse();
            debug_assert!(path[1..path.len() - 1].iter().all(|w| !embedded_v[*w]));
            return path;
        }
        for &w in &adj[u] {
            if in_frag.contains(&w) && !pred.contains_key(&w) {
                pred.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment attachments are connected through the fragment")
}

/// Split face `fi` along `path` (whose endpoints lie on the face cycle).
fn split_face(faces: &mut Vec<Vec<usize>>, fi: usize, path: &[usize]) {
    let cycle = faces[fi].clone();
    let len = cycle.len();
    let a = path[0];
    let b = *path.last().unwrap();
    let i = cycle.iter().position(|&v| v == a).expect("a on face");
    let j = cycle.iter().position(|&v| v == b).expect("b on face");
    debug_assert_ne!(i, j);

    let interior = &path[1..path.len() - 1];
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut k = from;
        loop {
            out.push(cycle[k]);
            if k == to {
                break;
            }
            k = (k + 1) % len;
        }
        out
    };
    // Face 1 follows the cycle from a to b, then returns along the path.
    let mut f1 = arc(i, j);
    f1.extend(interior.iter().rev().copied());
    // Face 2 follows the cycle from b to a, then the path forward.
    let mut f2 = arc(j, i);
    f2.extend(interior.iter().copied());

    faces[fi] = f1;
    faces.push(f2);
}
