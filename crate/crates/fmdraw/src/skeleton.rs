//! Skeleton existence and construction over the clustered cell graph.
//!
//! The specialized solvers cover intersection graphs that are paths, cycles,
//! or cacti (which include trees); propagation of per-cell activity marks
//! runs along the structure and a skeleton is rebuilt by walking recorded
//! choices backwards. A capped brute-force enumeration over one-cell-per-
//! cluster selections serves as the guess-and-check procedure for arbitrary
//! intersection graphs and as the independent oracle for the solvers.

use crate::cellgraph::{CellGraph, IntersectionGraph, Skeleton};
use crate::par;
use crate::planarity::SimpleGraph;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeletonError {
    #[error("intersection graph is not a path")]
    NotAPath,
    #[error("intersection graph is not a simple cycle")]
    NotACycle,
    #[error("intersection graph is not a cactus")]
    NotACactus,
    #[error("brute force would enumerate {needed} selections, cap is {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("intersection graph class is unsupported beyond the brute-force cap")]
    Unsupported,
    #[error("cluster {0} is missing from the cell graph")]
    MissingCluster(String),
}

/// Shape of a connected intersection graph, most specific first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GxClass {
    Path,
    Cycle,
    Tree,
    Cactus,
    Other,
}

/// Classify a connected intersection graph. A path reports `Path` (not
/// `Tree`), a tree with a vertex of degree three or more reports `Tree`, a
/// simple cycle reports `Cycle`; all of these are cacti, so `Cactus` is only
/// reported for cacti with at least one cycle and a branching structure.
pub fn classify_intersection_graph(gx: &IntersectionGraph) -> GxClass {
    let n = gx.nodes.len();
    if n == 0 {
        return GxClass::Path;
    }
    let e = gx.edges.len();
    let max_deg = gx.nodes.iter().map(|u| gx.degree(u)).max().unwrap_or(0);
    if e + 1 == n {
        return if max_deg <= 2 { GxClass::Path } else { GxClass::Tree };
    }
    if e == n && max_deg == 2 {
        return GxClass::Cycle;
    }
    if is_cactus(gx) {
        GxClass::Cactus
    } else {
        GxClass::Other
    }
}

fn gx_as_simple_graph(gx: &IntersectionGraph) -> (SimpleGraph, Vec<String>) {
    let nodes = gx.nodes.clone();
    let index: BTreeMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let edges: Vec<(usize, usize)> = gx
        .edges
        .iter()
        .map(|(u, v)| (index[u.as_str()], index[v.as_str()]))
        .collect();
    (
        SimpleGraph::new(nodes.len(), &edges).expect("intersection graph is simple"),
        nodes,
    )
}

/// Every edge lies in at most one simple cycle, i.e. every biconnected block
/// is a single edge or a simple cycle.
fn is_cactus(gx: &IntersectionGraph) -> bool {
    let (g, _) = gx_as_simple_graph(gx);
    g.blocks().iter().all(|b| {
        if b.len() == 1 {
            return true;
        }
        let mut verts: Vec<usize> = b.iter().flat_map(|&(u, v)| [u, v]).collect();
        verts.sort_unstable();
        verts.dedup();
        verts.len() == b.len()
    })
}

/// Activity marks per (cluster, cell) plus confirmation flags for the two
/// endpoint clusters of a cycle run.
#[derive(Debug, Clone, Default)]
pub struct ActivityMarking {
    pub active: BTreeMap<String, Vec<bool>>,
    pub confirmed: BTreeMap<String, Vec<bool>>,
}

/// Sorted cell ids of every cluster in `order`.
fn cluster_cells(cg: &CellGraph, order: &[String]) -> Result<Vec<Vec<String>>, SkeletonError> {
    order
        .iter()
        .map(|u| {
            cg.clusters
                .get(u)
                .map(|cells| {
                    let mut ids: Vec<String> = cells.iter().map(|c| c.id.clone()).collect();
                    ids.sort();
                    ids
                })
                .ok_or_else(|| SkeletonError::MissingCluster(u.clone()))
        })
        .collect()
}

/// Forward activity propagation along `order` restricted to `alive`,
/// seeded by `seed` on position 0. Returns per-position activity and the
/// smallest active predecessor per active cell.
fn propagate(
    cg: &CellGraph,
    order: &[String],
    cells: &[Vec<String>],
    alive: &[Vec<bool>],
    seed: &[bool],
) -> (Vec<Vec<bool>>, Vec<Vec<Option<usize>>>) {
    let mut active: Vec<Vec<bool>> = Vec::with_capacity(order.len());
    let mut preds: Vec<Vec<Option<usize>>> = Vec::with_capacity(order.len());
    active.push(
        seed.iter()
            .zip(alive[0].iter())
            .map(|(&s, &a)| s && a)
            .collect(),
    );
    preds.push(vec![None; cells[0].len()]);
    for i in 1..order.len() {
        let mut act = vec![false; cells[i].len()];
        let mut pred = vec![None; cells[i].len()];
        for (ci, cell) in cells[i].iter().enumerate() {
            if !alive[i][ci] {
                continue;
            }
            for (pi, prev_cell) in cells[i - 1].iter().enumerate() {
                if active[i - 1][pi]
                    && cg.cells_adjacent(&order[i - 1], prev_cell, &order[i], cell)
                {
                    act[ci] = true;
                    pred[ci] = Some(pi);
                    break;
                }
            }
        }
        active.push(act);
        preds.push(pred);
    }
    (active, preds)
}

/// Test skeleton existence when the intersection graph is a path given by
/// `order`; reconstruct by walking recorded predecessors backwards.
pub fn solve_path(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    order: &[String],
) -> Result<Option<Skeleton>, SkeletonError> {
    check_order_is_path(gx, order)?;
    let cells = cluster_cells(cg, order)?;
    if cells.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let alive: Vec<Vec<bool>> = cells.iter().map(|c| vec![true; c.len()]).collect();
    let seed = vec![true; cells[0].len()];
    let (active, preds) = propagate(cg, order, &cells, &alive, &seed);
    let last = order.len() - 1;
    let Some(mut ci) = active[last].iter().position(|&a| a) else {
        return Ok(None);
    };
    let mut selection = BTreeMap::new();
    for i in (0..=last).rev() {
        selection.insert(order[i].clone(), cells[i][ci].clone());
        if i > 0 {
            ci = preds[i][ci].expect("active cell has a recorded predecessor");
        }
    }
    Ok(Some(Skeleton { selection }))
}

fn check_order_is_path(gx: &IntersectionGraph, order: &[String]) -> Result<(), SkeletonError> {
    let n = order.len();
    if n != gx.nodes.len() {
        return Err(SkeletonError::NotAPath);
    }
    let expected = n.saturating_sub(1);
    if gx.edges.len() != expected {
        return Err(SkeletonError::NotAPath);
    }
    for i in 1..n {
        if !gx.has_edge(&order[i - 1], &order[i]) {
            return Err(SkeletonError::NotAPath);
        }
    }
    Ok(())
}

/// Cycle solver (forward and backward pruning, endpoint pruning, then the
/// per-pair closing-path check), with its final activity marking.
pub fn solve_cycle_with_marking(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    cyclic_order: &[String],
) -> Result<(Option<Skeleton>, ActivityMarking), SkeletonError> {
    let lambda = cyclic_order.len();
    if lambda < 3
        || gx.nodes.len() != lambda
        || gx.edges.len() != lambda
        || cyclic_order
            .iter()
            .enumerate()
            .any(|(i, u)| !gx.has_edge(u, &cyclic_order[(i + 1) % lambda]))
    {
        return Err(SkeletonError::NotACycle);
    }
    let order = cyclic_order.to_vec();
    let cells = cluster_cells(cg, &order)?;
    if cells.iter().any(|c| c.is_empty()) {
        return Ok((None, ActivityMarking::default()));
    }
    let mut alive: Vec<Vec<bool>> = cells.iter().map(|c| vec![true; c.len()]).collect();
    let last = lambda - 1;

    // Forward phase from C(u_1); cells never marked active are removed.
    let seed = vec![true; cells[0].len()];
    let (active, _) = propagate(cg, &order, &cells, &alive, &seed);
    for i in 0..lambda {
        for ci in 0..cells[i].len() {
            alive[i][ci] &= active[i][ci];
        }
    }
    // Backward phase from C(u_lambda), on the reversed order.
    let rev_order: Vec<String> = order.iter().rev().cloned().collect();
    let rev_cells: Vec<Vec<String>> = cells.iter().rev().cloned().collect();
    let rev_alive: Vec<Vec<bool>> = alive.iter().rev().cloned().collect();
    let rev_seed = vec![true; rev_cells[0].len()];
    let (rev_active, _) = propagate(cg, &rev_order, &rev_cells, &rev_alive, &rev_seed);
    for i in 0..lambda {
        for ci in 0..cells[i].len() {
            alive[i][ci] &= rev_active[lambda - 1 - i][ci];
        }
    }
    // Endpoint pruning: cells of the end clusters must have an alive closing
    // neighbor in the other end cluster.
    let closing_ok = |ci: usize, alive: &[Vec<bool>], from_first: bool| -> bool {
        if from_first {
            cells[last].iter().enumerate().any(|(wj, w)| {
                alive[last][wj] && cg.cells_adjacent(&order[0], &cells[0][ci], &order[last], w)
            })
        } else {
            cells[0].iter().enumerate().any(|(vj, v)| {
                alive[0][vj] && cg.cells_adjacent(&order[0], v, &order[last], &cells[last][ci])
            })
        }
    };
    for ci in 0..cells[0].len() {
        if alive[0][ci] && !closing_ok(ci, &alive, true) {
            alive[0][ci] = false;
        }
    }
    for ci in 0..cells[last].len() {
        if alive[last][ci] && !closing_ok(ci, &alive, false) {
            alive[last][ci] = false;
        }
    }

    // Closing-path confirmation: for each alive adjacent pair (v, w), check
    // a path through every cluster exactly once.
    let mut confirmed_first = vec![false; cells[0].len()];
    let mut confirmed_last = vec![false; cells[last].len()];
    let mut witness: Option<(usize, usize, Vec<usize>)> = None;
    for vi in 0..cells[0].len() {
        if !alive[0][vi] {
            continue;
        }
        for wj in 0..cells[last].len() {
            if !alive[last][wj]
                || !cg.cells_adjacent(&order[0], &cells[0][vi], &order[last], &cells[last][wj])
            {
                continue;
            }
            let mut seed = vec![false; cells[0].len()];
            seed[vi] = true;
            let (act, preds) = propagate(cg, &order, &cells, &alive, &seed);
            if act[last][wj] {
                confirmed_first[vi] = true;
                confirmed_last[wj] = true;
                if witness.is_none() {
                    let mut pick = Vec::with_capacity(lambda);
                    let mut ci = wj;
                    for i in (0..lambda).rev() {
                        pick.push(ci);
                        if i > 0 {
                            ci = preds[i][ci].expect("confirmed path has predecessors");
                        }
                    }
                    pick.reverse();
                    witness = Some((vi, wj, pick));
                }
            }
        }
    }
    for ci in 0..cells[0].len() {
        alive[0][ci] &= confirmed_first[ci];
    }
    for ci in 0..cells[last].len() {
        alive[last][ci] &= confirmed_last[ci];
    }

    let mut marking = ActivityMarking::default();
    for i in 0..lambda {
        marking.active.insert(order[i].clone(), alive[i].clone());
    }
    marking
        .confirmed
        .insert(order[0].clone(), confirmed_first.clone());
    marking
        .confirmed
        .insert(order[last].clone(), confirmed_last.clone());

    let skeleton = witness.map(|(_, _, pick)| {
        let selection = (0..lambda)
            .map(|i| (order[i].clone(), cells[i][pick[i]].clone()))
            .collect();
        Skeleton { selection }
    });
    Ok((skeleton, marking))
}

/// Test skeleton existence when the intersection graph is a simple cycle.
pub fn solve_cycle(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    cyclic_order: &[String],
) -> Result<Option<Skeleton>, SkeletonError> {
    solve_cycle_with_marking(cg, gx, cyclic_order).map(|(s, _)| s)
}

/// One node of the cactus decomposition tree: a single cluster or a cycle of
/// clusters, ordered starting at the node's anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CactusNodeKind {
    Single,
    Cycle,
}

#[derive(Debug, Clone)]
pub struct CactusNode {
    pub kind: CactusNodeKind,
    /// The clusters of this node; `clusters[0]` is the anchor. A cluster
    /// shared by two cycles appears (replicated) in both nodes.
    pub clusters: Vec<String>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// The parent-node cluster this node attaches through; `None` at the
    /// root. Cycle nodes attach through their own (replicated) anchor.
    pub attachment: Option<String>,
}

/// Tree decomposition of a cactus intersection graph.
#[derive(Debug, Clone)]
pub struct CactusDecomposition {
    pub nodes: Vec<CactusNode>,
    pub root: usize,
}

impl CactusDecomposition {
    pub fn anchor(&self, node: usize) -> &str {
        &self.nodes[node].clusters[0]
    }

    /// Total cluster occurrences over all nodes; bounded by the number of
    /// clusters plus the number of cycles.
    pub fn total_occurrences(&self) -> usize {
        self.nodes.iter().map(|n| n.clusters.len()).sum()
    }
}

/// Decompose a cactus intersection graph, rooting at the smallest node id.
pub fn cactus_decomposition(gx: &IntersectionGraph) -> Result<CactusDecomposition, SkeletonError> {
    if gx.nodes.is_empty() {
        return Err(SkeletonError::NotACactus);
    }
    if !is_cactus(gx) {
        return Err(SkeletonError::NotACactus);
    }
    let (g, names) = gx_as_simple_graph(gx);
    let comps = g.components();
    if comps.len() != 1 {
        return Err(SkeletonError::NotACactus);
    }
    let root_vertex = 0usize; // names are sorted, so vertex 0 is smallest.

    // Distance from the root orients every block: its anchor vertex is the
    // unique block vertex closest to the root.
    let mut dist = vec![usize::MAX; names.len()];
    dist[root_vertex] = 0;
    let mut queue = std::collections::VecDeque::from([root_vertex]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }

    let mut nodes = vec![CactusNode {
        kind: CactusNodeKind::Single,
        clusters: vec![names[root_vertex].clone()],
        parent: None,
        children: Vec::new(),
        attachment: None,
    }];
    let mut primary: BTreeMap<usize, usize> = BTreeMap::new();
    primary.insert(root_vertex, 0);

    // Blocks sorted by (anchor depth, block content) give a deterministic
    // parent-before-child order.
    let mut blocks: Vec<(usize, Vec<(usize, usize)>)> = g
        .blocks()
        .into_iter()
        .map(|b| {
            let anchor = b
                .iter()
                .flat_map(|&(u, v)| [u, v])
                .min_by_key(|&v| (dist[v], v))
                .unwrap();
            (anchor, b)
        })
        .collect();
    blocks.sort_by(|a, b| (dist[a.0], &a.1).cmp(&(dist[b.0], &b.1)));

    for (anchor, block) in blocks {
        let parent_node = primary[&anchor];
        if block.len() == 1 {
            let (u, v) = block[0];
            let child = if u == anchor { v } else { u };
            let id = nodes.len();
            nodes.push(CactusNode {
                kind: CactusNodeKind::Single,
                clusters: vec![names[child].clone()],
                parent: Some(parent_node),
                children: Vec::new(),
                attachment: Some(names[anchor].clone()),
            });
            nodes[parent_node].children.push(id);
            primary.insert(child, id);
        } else {
            // Walk the cycle from the anchor towards its smaller neighbor.
            let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &(u, v) in &block {
                adj.entry(u).or_default().push(v);
                adj.entry(v).or_default().push(u);
            }
            for l in adj.values_mut() {
                l.sort_unstable();
            }
            let mut cyc = vec![anchor];
            let mut prev = anchor;
            let mut cur = adj[&anchor][0];
            while cur != anchor {
                cyc.push(cur);
                let next = *adj[&cur].iter().find(|&&w| w != prev).unwrap();
                prev = cur;
                cur = next;
            }
            let id = nodes.len();
            for &z in &cyc[1..] {
                primary.insert(z, id);
            }
            nodes.push(CactusNode {
                kind: CactusNodeKind::Cycle,
                clusters: cyc.iter().map(|&v| names[v].clone()).collect(),
                parent: Some(parent_node),
                children: Vec::new(),
                attachment: Some(names[anchor].clone()),
            });
            nodes[parent_node].children.push(id);
        }
    }
    Ok(CactusDecomposition { nodes, root: 0 })
}

/// Cactus solver: bottom-up activity over the decomposition tree, rejecting
/// early when an anchor empties; top-down reconstruction. Returns the final
/// per-cluster activity marking alongside the result.
pub fn solve_cactus_with_marking(
    cg: &CellGraph,
    gx: &IntersectionGraph,
) -> Result<(Option<Skeleton>, ActivityMarking), SkeletonError> {
    let tree = cactus_decomposition(gx)?;
    let cluster_order: Vec<String> = gx.nodes.clone();
    let cells = cluster_cells(cg, &cluster_order)?;
    if cells.iter().any(|c| c.is_empty()) {
        return Ok((None, ActivityMarking::default()));
    }
    let cell_index: BTreeMap<&str, usize> = cluster_order
        .iter()
        .enumerate()
        .map(|(i, u)| (u.as_str(), i))
        .collect();
    // act[x] = cells of x extendable to a skeleton of everything below x.
    let mut act: BTreeMap<String, Vec<bool>> = cluster_order
        .iter()
        .map(|u| (u.clone(), vec![true; cells[cell_index[u.as_str()]].len()]))
        .collect();

    // Vertices ordered by decreasing depth in the tree: children first.
    let mut node_order: Vec<usize> = (0..tree.nodes.len()).collect();
    let depth = |mut n: usize| {
        let mut d = 0;
        while let Some(p) = tree.nodes[n].parent {
            d += 1;
            n = p;
        }
        d
    };
    node_order.sort_by_key(|&n| std::cmp::Reverse(depth(n)));

    for &ni in &node_order {
        let node = &tree.nodes[ni];
        match node.kind {
            CactusNodeKind::Single => {
                // Activity of a single cluster is whatever its child blocks
                // (processed already, below) have left.
            }
            CactusNodeKind::Cycle => {
                // Run the cycle routine on the pruned cluster contents; the
                // anchor keeps only cells confirmed around the cycle.
                let confirmed =
                    run_cycle_on_marked(cg, &node.clusters, &cells, &cell_index, &act)?;
                let anchor_act = act.get_mut(node.clusters[0].as_str()).unwrap();
                for (ci, ok) in confirmed.iter().enumerate() {
                    anchor_act[ci] &= *ok;
                }
            }
        }
        // Propagate this node's anchor activity into the parent: for a
        // bridge child the parent cluster keeps cells adjacent to an active
        // anchor cell; for a replicated cycle anchor the sets already share
        // storage (same cluster id), so the conjunction above suffices.
        if let (Some(_), CactusNodeKind::Single) = (node.parent, &node.kind) {
            let child_cluster = node.clusters[0].clone();
            let parent_cluster = parent_cluster_of(&tree, ni);
            let child_act = act[&child_cluster].clone();
            let ci_child = cell_index[child_cluster.as_str()];
            let ci_parent = cell_index[parent_cluster.as_str()];
            let parent_act = act.get_mut(&parent_cluster).unwrap();
            for (pi, pa) in parent_act.iter_mut().enumerate() {
                if !*pa {
                    continue;
                }
                let pcell = &cells[ci_parent][pi];
                let any = cells[ci_child].iter().enumerate().any(|(cj, ccell)| {
                    child_act[cj]
                        && cg.cells_adjacent(&parent_cluster, pcell, &child_cluster, ccell)
                });
                *pa = any;
            }
        }
        let anchor = tree.nodes[ni].clusters[0].clone();
        if act[&anchor].iter().all(|&a| !a) {
            let marking = ActivityMarking {
                active: act,
                confirmed: BTreeMap::new(),
            };
            return Ok((None, marking));
        }
    }

    // Top-down reconstruction from the smallest active cell at the root.
    let mut selection: BTreeMap<String, String> = BTreeMap::new();
    let root_cluster = tree.nodes[tree.root].clusters[0].clone();
    let root_ci = act[&root_cluster].iter().position(|&a| a).unwrap();
    selection.insert(
        root_cluster.clone(),
        cells[cell_index[root_cluster.as_str()]][root_ci].clone(),
    );
    let mut rev = node_order.clone();
    rev.reverse(); // parents before children
    for &ni in &rev {
        let node = &tree.nodes[ni];
        match node.kind {
            CactusNodeKind::Single => {
                if node.parent.is_some() {
                    let child_cluster = node.clusters[0].clone();
                    if selection.contains_key(&child_cluster) {
                        continue;
                    }
                    let parent_cluster = parent_cluster_of(&tree, ni);
                    let pcell = selection[&parent_cluster].clone();
                    let ci_child = cell_index[child_cluster.as_str()];
                    let pick = cells[ci_child]
                        .iter()
                        .enumerate()
                        .find(|(cj, ccell)| {
                            act[&child_cluster][*cj]
                                && cg.cells_adjacent(&parent_cluster, &pcell, &child_cluster, ccell)
                        })
                        .map(|(_, c)| c.clone())
                        .expect("active parent cell has an active child partner");
                    selection.insert(child_cluster, pick);
                }
            }
            CactusNodeKind::Cycle => {
                let anchor = node.clusters[0].clone();
                let anchor_cell = selection[&anchor].clone();
                let ci_anchor = cell_index[anchor.as_str()];
                let seed_idx = cells[ci_anchor]
                    .iter()
                    .position(|c| *c == anchor_cell)
                    .unwrap();
                let pick_cells =
                    reconstruct_cycle(cg, &node.clusters, &cells, &cell_index, &act, seed_idx)
                        .expect("confirmed anchor cell closes a cycle");
                for (pos, cluster) in node.clusters.iter().enumerate() {
                    selection
                        .entry(cluster.clone())
                        .or_insert_with(|| pick_cells[pos].clone());
                }
            }
        }
    }

    let marking = ActivityMarking {
        active: act,
        confirmed: BTreeMap::new(),
    };
    Ok((Some(Skeleton { selection }), marking))
}

fn parent_cluster_of(tree: &CactusDecomposition, node: usize) -> String {
    tree.nodes[node]
        .attachment
        .clone()
        .expect("non-root node has an attachment cluster")
}

/// Run the Lemma-4 style cycle routine on clusters restricted to `act`,
/// returning the confirmed mask of the anchor cluster.
fn run_cycle_on_marked(
    cg: &CellGraph,
    cyc: &[String],
    cells: &[Vec<String>],
    cell_index: &BTreeMap<&str, usize>,
    act: &BTreeMap<String, Vec<bool>>,
) -> Result<Vec<bool>, SkeletonError> {
    let lambda = cyc.len();
    let last = lambda - 1;
    let idx: Vec<usize> = cyc.iter().map(|u| cell_index[u.as_str()]).collect();
    let local_cells: Vec<Vec<String>> = idx.iter().map(|&i| cells[i].clone()).collect();
    let alive: Vec<Vec<bool>> = cyc.iter().map(|u| act[u.as_str()].clone()).collect();
    let order: Vec<String> = cyc.to_vec();

    let mut confirmed = vec![false; local_cells[0].len()];
    for vi in 0..local_cells[0].len() {
        if !alive[0][vi] {
            continue;
        }
        let mut seed_mask = vec![false; local_cells[0].len()];
        seed_mask[vi] = true;
        let (active, _) = propagate(cg, &order, &local_cells, &alive, &seed_mask);
        for wj in 0..local_cells[last].len() {
            if active[last][wj]
                && cg.cells_adjacent(&order[0], &local_cells[0][vi], &order[last], &local_cells[last][wj])
            {
                confirmed[vi] = true;
                break;
            }
        }
    }
    Ok(confirmed)
}

/// Reconstruct one concrete cycle selection with the anchor pinned.
fn reconstruct_cycle(
    cg: &CellGraph,
    cyc: &[String],
    cells: &[Vec<String>],
    cell_index: &BTreeMap<&str, usize>,
    act: &BTreeMap<String, Vec<bool>>,
    anchor_cell: usize,
) -> Option<Vec<String>> {
    let lambda = cyc.len();
    let last = lambda - 1;
    let idx: Vec<usize> = cyc.iter().map(|u| cell_index[u.as_str()]).collect();
    let local_cells: Vec<Vec<String>> = idx.iter().map(|&i| cells[i].clone()).collect();
    let alive: Vec<Vec<bool>> = cyc.iter().map(|u| act[u.as_str()].clone()).collect();
    let mut seed_mask = vec![false; local_cells[0].len()];
    seed_mask[anchor_cell] = true;
    let (active, preds) = propagate(cg, cyc, &local_cells, &alive, &seed_mask);
    for wj in 0..local_cells[last].len() {
        if active[last][wj]
            && cg.cells_adjacent(&cyc[0], &local_cells[0][anchor_cell], &cyc[last], &local_cells[last][wj])
        {
            let mut picks = vec![0usize; lambda];
            let mut ci = wj;
            for i in (0..lambda).rev() {
                picks[i] = ci;
                if i > 0 {
                    ci = preds[i][ci].expect("active cell has predecessor");
                }
            }
            return Some(
                picks
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| local_cells[i][c].clone())
                    .collect(),
            );
        }
    }
    None
}

/// Cactus solver entry point.
pub fn solve_cactus(
    cg: &CellGraph,
    gx: &IntersectionGraph,
) -> Result<Option<Skeleton>, SkeletonError> {
    solve_cactus_with_marking(cg, gx).map(|(s, _)| s)
}

/// Exhaustive one-cell-per-cluster search in lexicographic order
/// (guess-and-check); the first selection passing the skeleton test wins.
pub fn brute_force_skeleton(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    cap: u64,
) -> Result<Option<Skeleton>, SkeletonError> {
    brute_force_impl(cg, gx, cap, true)
}

/// Sequential variant of [`brute_force_skeleton`].
pub fn brute_force_skeleton_seq(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    cap: u64,
) -> Result<Option<Skeleton>, SkeletonError> {
    brute_force_impl(cg, gx, cap, false)
}

fn brute_force_impl(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    cap: u64,
    parallel: bool,
) -> Result<Option<Skeleton>, SkeletonError> {
    let order: Vec<String> = gx.nodes.clone();
    let cells = cluster_cells(cg, &order)?;
    if cells.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut total: u128 = 1;
    for c in &cells {
        total = total.saturating_mul(c.len() as u128);
        if total > cap as u128 {
            return Err(SkeletonError::CapExceeded { needed: total, cap });
        }
    }
    // Adjacency matrices per intersection edge, indexed by cell positions.
    let index_of: BTreeMap<&str, usize> = order
        .iter()
        .enumerate()
        .map(|(i, u)| (u.as_str(), i))
        .collect();
    let edge_list: Vec<(usize, usize, Vec<Vec<bool>>)> = gx
        .edges
        .iter()
        .map(|(u, v)| {
            let (ui, vi) = (index_of[u.as_str()], index_of[v.as_str()]);
            let mat: Vec<Vec<bool>> = cells[ui]
                .iter()
                .map(|cu| {
                    cells[vi]
                        .iter()
                        .map(|cv| cg.cells_adjacent(u, cu, v, cv))
                        .collect()
                })
                .collect();
            (ui, vi, mat)
        })
        .collect();

    let radixes: Vec<usize> = cells.iter().map(|c| c.len()).collect();
    let decode = |mut code: usize| -> Vec<usize> {
        let mut pick = vec![0usize; radixes.len()];
        for i in (0..radixes.len()).rev() {
            pick[i] = code % radixes[i];
            code /= radixes[i];
        }
        pick
    };
    let hit = par::find_first_index(parallel, total as usize, |code| {
        let pick = decode(code);
        edge_list
            .iter()
            .all(|(ui, vi, mat)| mat[pick[*ui]][pick[*vi]])
    });
    Ok(hit.map(|code| {
        let pick = decode(code);
        let selection = order
            .iter()
            .enumerate()
            .map(|(i, u)| (u.clone(), cells[i][pick[i]].clone()))
            .collect();
        Skeleton { selection }
    }))
}

/// Walk a path component from its smaller endpoint.
pub fn path_order(gx: &IntersectionGraph) -> Result<Vec<String>, SkeletonError> {
    let n = gx.nodes.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![gx.nodes[0].clone()]);
    }
    let endpoints: Vec<&String> = gx.nodes.iter().filter(|u| gx.degree(u) == 1).collect();
    if endpoints.len() != 2 || gx.edges.len() + 1 != n {
        return Err(SkeletonError::NotAPath);
    }
    let mut order = vec![endpoints[0].clone()];
    let mut prev: Option<String> = None;
    while order.len() < n {
        let cur = order.last().unwrap().clone();
        let next = gx
            .neighbors(&cur)
            .into_iter()
            .find(|v| Some((*v).to_string()) != prev)
            .ok_or(SkeletonError::NotAPath)?
            .to_string();
        prev = Some(cur);
        order.push(next);
    }
    Ok(order)
}

/// Walk a cycle component starting at the smallest node, towards its
/// smaller neighbor.
pub fn cycle_order(gx: &IntersectionGraph) -> Result<Vec<String>, SkeletonError> {
    let n = gx.nodes.len();
    if n < 3 || gx.edges.len() != n || gx.nodes.iter().any(|u| gx.degree(u) != 2) {
        return Err(SkeletonError::NotACycle);
    }
    let start = gx.nodes[0].clone();
    let mut order = vec![start.clone()];
    let mut prev = start.clone();
    let mut cur = gx.neighbors(&start)[0].to_string();
    while cur != start {
        order.push(cur.clone());
        let next = gx
            .neighbors(&cur)
            .into_iter()
            .find(|&v| v != prev)
            .ok_or(SkeletonError::NotACycle)?
            .to_string();
        prev = cur;
        cur = next;
    }
    Ok(order)
}

/// Restrict a cell graph and intersection graph to one component.
pub fn restrict_to_component(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    nodes: &[String],
) -> (CellGraph, IntersectionGraph) {
    let node_set: std::collections::BTreeSet<&str> = nodes.iter().map(|s| s.as_str()).collect();
    let sub_gx = IntersectionGraph {
        nodes: nodes.to_vec(),
        edges: gx
            .edges
            .iter()
            .filter(|(u, v)| node_set.contains(u.as_str()) && node_set.contains(v.as_str()))
            .cloned()
            .collect(),
    };
    let sub_cg = CellGraph {
        clusters: cg
            .clusters
            .iter()
            .filter(|(k, _)| node_set.contains(k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
        adjacency: cg
            .adjacency
            .iter()
            .filter(|((u, v), _)| node_set.contains(u.as_str()) && node_set.contains(v.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect(),
    };
    (sub_cg, sub_gx)
}

/// Dispatch per connected component: path, cycle and cactus components use
/// the polynomial solvers; anything else falls back to the capped brute
/// force, reporting `Unsupported` past the cap.
pub fn solve_skeleton(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    cap: u64,
) -> Result<Option<Skeleton>, SkeletonError> {
    let mut selection = BTreeMap::new();
    for comp in gx.components() {
        let (sub_cg, sub_gx) = restrict_to_component(cg, gx, &comp);
        let solved = match classify_intersection_graph(&sub_gx) {
            GxClass::Path => solve_path(&sub_cg, &sub_gx, &path_order(&sub_gx)?)?,
            GxClass::Cycle => solve_cycle(&sub_cg, &sub_gx, &cycle_order(&sub_gx)?)?,
            GxClass::Tree | GxClass::Cactus => solve_cactus(&sub_cg, &sub_gx)?,
            GxClass::Other => match brute_force_skeleton(&sub_cg, &sub_gx, cap) {
                Ok(s) => s,
                Err(SkeletonError::CapExceeded { .. }) => return Err(SkeletonError::Unsupported),
                Err(e) => return Err(e),
            },
        };
        match solved {
            Some(s) => selection.extend(s.selection),
            None => return Ok(None),
        }
    }
    // Clusters that are not intersection-graph nodes at all (isolated in the
    // instance) keep their smallest cell.
    for (cluster, cells) in &cg.clusters {
        if !selection.contains_key(cluster) {
            let mut ids: Vec<&String> = cells.iter().map(|c| &c.id).collect();
            ids.sort();
            match ids.first() {
                Some(id) => {
                    selection.insert(cluster.clone(), (*id).clone());
                }
                None => return Ok(None),
            }
        }
    }
    Ok(Some(Skeleton { selection }))
}
