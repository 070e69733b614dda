//! The convex-hull intersection graph and the clustered cell graph built
//! from an instance, plus skeleton checking and the skeleton-to-drawing
//! conversion.
//!
//! Clusters hold one cell vertex per arrangement cell inside the mobile's
//! hull. Two cell vertices of hull-intersecting mobiles are adjacent exactly
//! when placing both mobiles at the cells' representatives keeps their
//! incident edge stars crossing-free.

use crate::arrangement::{decompose_hull, Arrangement, Cell};
use crate::geometry::{
    convex_hull, polygons_intersect, segments_intersect, ConvexPolygon, Hull, Point2, Segment,
    SegmentIntersection,
};
use crate::model::{Drawing, FMBigraph};
use crate::par;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellGraphError {
    #[error("mobile vertex {0} has a degenerate hull (degree <= 2 or collinear neighbors)")]
    DegenerateHull(String),
    #[error("skeleton selects unknown cell {cell} in cluster {cluster}")]
    UnknownCell { cluster: String, cell: String },
    #[error("cluster {0} missing from skeleton")]
    MissingCluster(String),
    #[error("cell {cell} of cluster {cluster} carries no geometric representative")]
    MissingRepresentative { cluster: String, cell: String },
    #[error("instance error: {0}")]
    Instance(String),
}

/// Intersection graph of the mobiles' neighbor hulls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    pub nodes: Vec<String>,
    /// Edges with endpoints in lexicographic order.
    pub edges: BTreeSet<(String, String)>,
}

impl IntersectionGraph {
    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        let key = if u <= v { (u, v) } else { (v, u) };
        self.edges.contains(&(key.0.to_string(), key.1.to_string()))
    }

    pub fn neighbors(&self, u: &str) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .edges
            .iter()
            .filter_map(|(a, b)| {
                if a == u {
                    Some(b.as_str())
                } else if b == u {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn degree(&self, u: &str) -> usize {
        self.neighbors(u).len()
    }

    /// Connected components, each as a sorted list of node ids.
    pub fn components(&self) -> Vec<Vec<String>> {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.nodes {
            if seen.contains(start.as_str()) {
                continue;
            }
            let mut comp = vec![start.clone()];
            let mut queue = vec![start.as_str()];
            seen.insert(start);
            while let Some(u) = queue.pop() {
                for v in self.neighbors(u) {
                    if seen.insert(v) {
                        comp.push(v.to_string());
                        queue.push(v);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }
}

/// One cell vertex of a cluster. Abstract instances (e.g. the 3SAT gadget)
/// carry no geometry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellVertex {
    pub id: String,
    pub representative: Option<Point2>,
}

/// The clustered cell graph: one cluster of cell vertices per mobile, and
/// crossing-free adjacency between cells of hull-intersecting clusters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CellGraph {
    pub clusters: BTreeMap<String, Vec<CellVertex>>,
    /// Keyed by cluster pair in lexicographic order; values are adjacent
    /// `(cell of smaller cluster, cell of larger cluster)` pairs.
    pub adjacency: BTreeMap<(String, String), BTreeSet<(String, String)>>,
}

impl CellGraph {
    pub fn cluster(&self, u: &str) -> Option<&[CellVertex]> {
        self.clusters.get(u).map(|v| v.as_slice())
    }

    pub fn cell_ids(&self, u: &str) -> Vec<&str> {
        self.clusters
            .get(u)
            .map(|cs| cs.iter().map(|c| c.id.as_str()).collect())
            .unwrap_or_default()
    }

    /// Symmetric adjacency lookup.
    pub fn cells_adjacent(&self, u: &str, cu: &str, v: &str, cv: &str) -> bool {
        let (key, pair) = if u <= v {
            ((u.to_string(), v.to_string()), (cu.to_string(), cv.to_string()))
        } else {
            ((v.to_string(), u.to_string()), (cv.to_string(), cu.to_string()))
        };
        self.adjacency
            .get(&key)
            .map(|set| set.contains(&pair))
            .unwrap_or(false)
    }

    /// Cells of cluster `v` adjacent to cell `cu` of cluster `u`.
    pub fn adjacent_cells_of(&self, u: &str, cu: &str, v: &str) -> Vec<String> {
        let mut out = Vec::new();
        if u <= v {
            if let Some(set) = self.adjacency.get(&(u.to_string(), v.to_string())) {
                for (a, b) in set {
                    if a == cu {
                        out.push(b.clone());
                    }
                }
            }
        } else if let Some(set) = self.adjacency.get(&(v.to_string(), u.to_string())) {
            for (a, b) in set {
                if b == cu {
                    out.push(a.clone());
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn total_cells(&self) -> usize {
        self.clusters.values().map(|c| c.len()).sum()
    }
}

/// A choice of exactly one cell per cluster.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Skeleton {
    pub selection: BTreeMap<String, String>,
}

/// Build the hull intersection graph. Every mobile must have a
/// full-dimensional hull.
pub fn build_intersection_graph(g: &FMBigraph) -> Result<IntersectionGraph, CellGraphError> {
    let hulls = mobile_hulls(g)?;
    let mut nodes: Vec<String> = g.mobile.clone();
    nodes.sort();
    let mut edges = BTreeSet::new();
    for i in 0..nodes.len() {
        for j in (i + 1)..nodes.len() {
            if polygons_intersect(&hulls[&nodes[i]], &hulls[&nodes[j]]) {
                edges.insert((nodes[i].clone(), nodes[j].clone()));
            }
        }
    }
    Ok(IntersectionGraph { nodes, edges })
}

pub(crate) fn mobile_hulls(
    g: &FMBigraph,
) -> Result<BTreeMap<String, ConvexPolygon>, CellGraphError> {
    let idx = g
        .indexed()
        .map_err(|e| CellGraphError::Instance(e.to_string()))?;
    let mut hulls = BTreeMap::new();
    for (mi, m) in g.mobile.iter().enumerate() {
        let pts: Vec<Point2> = idx.mobile_neighbors[mi]
            .iter()
            .map(|&fi| g.fixed[fi].pos.clone())
            .collect();
        if pts.len() < 3 {
            return Err(CellGraphError::DegenerateHull(m.clone()));
        }
        match convex_hull(&pts) {
            Hull::Polygon(p) => {
                hulls.insert(m.clone(), p);
            }
            _ => return Err(CellGraphError::DegenerateHull(m.clone())),
        }
    }
    Ok(hulls)
}

/// Build the cell graph with the default per-cluster representatives.
pub fn build_cell_graph(g: &FMBigraph, arr: &Arrangement) -> Result<CellGraph, CellGraphError> {
    build_cell_graph_impl(g, arr, true, &default_representative)
}

/// Sequential variant of [`build_cell_graph`].
pub fn build_cell_graph_seq(g: &FMBigraph, arr: &Arrangement) -> Result<CellGraph, CellGraphError> {
    build_cell_graph_impl(g, arr, false, &default_representative)
}

/// Build the cell graph with a caller-chosen interior representative per
/// (cluster index, cell); used to exercise the cell-equivalence property.
pub fn build_cell_graph_with_reps(
    g: &FMBigraph,
    arr: &Arrangement,
    chooser: &(dyn Fn(usize, &Cell) -> Point2 + Sync),
) -> Result<CellGraph, CellGraphError> {
    build_cell_graph_impl(g, arr, true, chooser)
}

fn default_representative(cluster_index: usize, cell: &Cell) -> Point2 {
    cell.cluster_representative(cluster_index)
}

fn build_cell_graph_impl(
    g: &FMBigraph,
    arr: &Arrangement,
    parallel: bool,
    chooser: &(dyn Fn(usize, &Cell) -> Point2 + Sync),
) -> Result<CellGraph, CellGraphError> {
    let gx = build_intersection_graph(g)?;
    let hulls = mobile_hulls(g)?;
    let idx = g
        .indexed()
        .map_err(|e| CellGraphError::Instance(e.to_string()))?;

    // Clusters: decompose each hull; cluster index = position in sorted
    // mobile order, which pins the distinct-representative rule.
    let nodes = gx.nodes.clone();
    let decomposed: Vec<(String, Vec<CellVertex>, Vec<(String, Point2)>)> =
        par::map_slice(parallel, &nodes, |m| {
            let cluster_index = nodes.binary_search(m).unwrap();
            let hull = &hulls[m];
            let cells = decompose_hull(arr, hull, m);
            let mut vertices = Vec::with_capacity(cells.cells.len());
            let mut reps = Vec::with_capacity(cells.cells.len());
            for cell in &cells.cells {
                let rep = chooser(cluster_index, cell);
                vertices.push(CellVertex {
                    id: cell.id.clone(),
                    representative: Some(rep.clone()),
                });
                reps.push((cell.id.clone(), rep));
            }
            (m.clone(), vertices, reps)
        });

    let mut clusters = BTreeMap::new();
    let mut reps_by_cluster: BTreeMap<String, BTreeMap<String, Point2>> = BTreeMap::new();
    for (m, vertices, reps) in decomposed {
        reps_by_cluster.insert(m.clone(), reps.into_iter().collect());
        clusters.insert(m, vertices);
    }

    // Adjacency per intersection-graph edge, independent across pairs.
    let gx_edges: Vec<(String, String)> = gx.edges.iter().cloned().collect();
    let neighbor_points = |m: &str| -> Vec<(usize, Point2)> {
        let mi = idx.mobile_index[m];
        idx.mobile_neighbors[mi]
            .iter()
            .map(|&fi| (fi, g.fixed[fi].pos.clone()))
            .collect()
    };
    let adj_entries: Vec<((String, String), BTreeSet<(String, String)>)> =
        par::map_slice(parallel, &gx_edges, |(u, v)| {
            let nu = neighbor_points(u);
            let nv = neighbor_points(v);
            let mut set = BTreeSet::new();
            for (cu, rep_u) in &reps_by_cluster[u] {
                for (cv, rep_v) in &reps_by_cluster[v] {
                    if !stars_cross(rep_u, &nu, rep_v, &nv) {
                        set.insert((cu.clone(), cv.clone()));
                    }
                }
            }
            ((u.clone(), v.clone()), set)
        });

    Ok(CellGraph {
        clusters,
        adjacency: adj_entries.into_iter().collect(),
    })
}

/// Do the stars of two placed mobiles cross? Segment pairs sharing a common
/// fixed neighbor may touch at that endpoint; everything else disqualifies.
pub(crate) fn stars_cross(
    rep_u: &Point2,
    nbrs_u: &[(usize, Point2)],
    rep_v: &Point2,
    nbrs_v: &[(usize, Point2)],
) -> bool {
    for (fu, pu) in nbrs_u {
        let su = Segment::new(rep_u.clone(), pu.clone());
        for (fv, pv) in nbrs_v {
            let sv = Segment::new(rep_v.clone(), pv.clone());
            match segments_intersect(&su, &sv) {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::SharedEndpoint(p) => {
                    if !(fu == fv && p == *pu) {
                        return true;
                    }
                }
                _ => return true,
            }
        }
    }
    false
}

/// True iff every intersection-graph edge is realized by a cell-graph
/// adjacency between the selected cells.
pub fn check_skeleton(
    cg: &CellGraph,
    gx: &IntersectionGraph,
    s: &Skeleton,
) -> Result<bool, CellGraphError> {
    for (cluster, cells) in &cg.clusters {
        let sel = s
            .selection
            .get(cluster)
            .ok_or_else(|| CellGraphError::MissingCluster(cluster.clone()))?;
        if !cells.iter().any(|c| &c.id == sel) {
            return Err(CellGraphError::UnknownCell {
                cluster: cluster.clone(),
                cell: sel.clone(),
            });
        }
    }
    for (u, v) in &gx.edges {
        let cu = &s.selection[u];
        let cv = &s.selection[v];
        if !cg.cells_adjacent(u, cu, v, cv) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Realize a verified skeleton as a 0-bend drawing: every mobile at its
/// selected cell's representative.
pub fn drawing_from_skeleton(
    g: &FMBigraph,
    cg: &CellGraph,
    s: &Skeleton,
) -> Result<Drawing, CellGraphError> {
    let mut d = Drawing::default();
    for f in &g.fixed {
        d.positions.insert(f.id.clone(), f.pos.clone());
    }
    for m in &g.mobile {
        let cells = cg
            .clusters
            .get(m)
            .ok_or_else(|| CellGraphError::MissingCluster(m.clone()))?;
        let sel = s
            .selection
            .get(m)
            .ok_or_else(|| CellGraphError::MissingCluster(m.clone()))?;
        let cell = cells
            .iter()
            .find(|c| &c.id == sel)
            .ok_or_else(|| CellGraphError::UnknownCell {
                cluster: m.clone(),
                cell: sel.clone(),
            })?;
        let rep = cell
            .representative
            .clone()
            .ok_or_else(|| CellGraphError::MissingRepresentative {
                cluster: m.clone(),
                cell: sel.clone(),
            })?;
        d.positions.insert(m.clone(), rep);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_arrangement;
    use crate::model::{validate_drawing, ValidationMode};

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn disjoint_triangles() -> FMBigraph {
        FMBigraph::new(
            vec![
                ("a".into(), pt(0, 0)),
                ("b".into(), pt(2, 0)),
                ("c".into(), pt(1, 2)),
                ("d".into(), pt(10, 0)),
                ("e".into(), pt(12, 0)),
                ("f".into(), pt(11, 2)),
            ],
            vec!["u".into(), "v".into()],
            vec![
                ("a".into(), "u".into()),
                ("b".into(), "u".into()),
                ("c".into(), "u".into()),
                ("d".into(), "v".into()),
                ("e".into(), "v".into()),
                ("f".into(), "v".into()),
            ],
        )
    }

    fn shared_triangle() -> FMBigraph {
        FMBigraph::new(
            vec![
                ("a".into(), pt(0, 0)),
                ("b".into(), pt(6, 0)),
                ("c".into(), pt(0, 6)),
            ],
            vec!["u".into(), "v".into()],
            vec![
                ("a".into(), "u".into()),
                ("b".into(), "u".into()),
                ("c".into(), "u".into()),
                ("a".into(), "v".into()),
                ("b".into(), "v".into()),
                ("c".into(), "v".into()),
            ],
        )
    }

    #[test]
    fn disjoint_hulls_no_edge() {
        let gx = build_intersection_graph(&disjoint_triangles()).unwrap();
        assert!(gx.edges.is_empty());
    }

    #[test]
    fn identical_neighborhoods_intersect() {
        let gx = build_intersection_graph(&shared_triangle()).unwrap();
        assert_eq!(gx.edges.len(), 1);
    }

    #[test]
    fn degenerate_hull_rejected() {
        let g = FMBigraph::new(
            vec![("a".into(), pt(0, 0)), ("b".into(), pt(1, 0))],
            vec!["u".into()],
            vec![("a".into(), "u".into()), ("b".into(), "u".into())],
        );
        assert!(matches!(
            build_intersection_graph(&g),
            Err(CellGraphError::DegenerateHull(m)) if m == "u"
        ));
    }

    #[test]
    fn chain_of_hulls_is_a_path() {
        // Four mobiles whose hulls overlap in a chain.
        let mut fixed = Vec::new();
        let mut edges = Vec::new();
        let mut mobile = Vec::new();
        for i in 0..4i64 {
            let base = 3 * i;
            let ids = [
                (format!("p{i}a"), pt(base, 0)),
                (format!("p{i}b"), pt(base + 4, 0)),
                (format!("p{i}c"), pt(base + 2, 3)),
            ];
            let m = format!("m{i}");
            for (id, p) in ids {
                edges.push((id.clone(), m.clone()));
                fixed.push((id, p));
            }
            mobile.push(m);
        }
        let g = FMBigraph::new(fixed, mobile, edges);
        let gx = build_intersection_graph(&g).unwrap();
        let expect: BTreeSet<(String, String)> = [("m0", "m1"), ("m1", "m2"), ("m2", "m3")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(gx.edges, expect);
    }

    #[test]
    fn shared_triangle_has_no_adjacency() {
        // Both clusters consist of one cell (the open triangle interior);
        // any two placements inside cross, so adjacency is empty — and the
        // validator confirms the crossing at the concrete representatives.
        let g = shared_triangle();
        let arr = build_arrangement(&g).unwrap();
        let cg = build_cell_graph(&g, &arr).unwrap();
        assert_eq!(cg.clusters["u"].len(), 1);
        assert_eq!(cg.clusters["v"].len(), 1);
        let set = &cg.adjacency[&("u".to_string(), "v".to_string())];
        assert!(set.is_empty());

        let mut d = Drawing::default();
        for f in &g.fixed {
            d.positions.insert(f.id.clone(), f.pos.clone());
        }
        d.positions.insert(
            "u".into(),
            cg.clusters["u"][0].representative.clone().unwrap(),
        );
        d.positions.insert(
            "v".into(),
            cg.clusters["v"][0].representative.clone().unwrap(),
        );
        let rep = validate_drawing(&g, &d, ValidationMode::ConvexHull).unwrap();
        assert!(!rep.planar);
    }

    #[test]
    fn disjoint_hulls_yield_planar_drawing() {
        let g = disjoint_triangles();
        let arr = build_arrangement(&g).unwrap();
        let gx = build_intersection_graph(&g).unwrap();
        let cg = build_cell_graph(&g, &arr).unwrap();
        assert!(cg.adjacency.values().all(|s| s.is_empty()));

        // No intersection edges: any selection is a skeleton.
        let mut s = Skeleton::default();
        for (m, cells) in &cg.clusters {
            s.selection.insert(m.clone(), cells[0].id.clone());
        }
        assert!(check_skeleton(&cg, &gx, &s).unwrap());
        let d = drawing_from_skeleton(&g, &cg, &s).unwrap();
        let rep = validate_drawing(&g, &d, ValidationMode::ConvexHull).unwrap();
        assert!(rep.planar, "{:?}", rep.violations);
    }

    #[test]
    fn check_skeleton_examples() {
        // Two clusters, one intersection edge, adjacency only (a1, b1).
        let mut cg = CellGraph::default();
        cg.clusters.insert(
            "u".into(),
            vec![
                CellVertex { id: "a1".into(), representative: None },
                CellVertex { id: "a2".into(), representative: None },
            ],
        );
        cg.clusters.insert(
            "v".into(),
            vec![
                CellVertex { id: "b1".into(), representative: None },
                CellVertex { id: "b2".into(), representative: None },
            ],
        );
        let mut set = BTreeSet::new();
        set.insert(("a1".to_string(), "b1".to_string()));
        cg.adjacency.insert(("u".into(), "v".into()), set);
        let gx = IntersectionGraph {
            nodes: vec!["u".into(), "v".into()],
            edges: [("u".to_string(), "v".to_string())].into_iter().collect(),
        };
        let mut s = Skeleton::default();
        s.selection.insert("u".into(), "a1".into());
        s.selection.insert("v".into(), "b1".into());
        assert!(check_skeleton(&cg, &gx, &s).unwrap());
        s.selection.insert("v".into(), "b2".into());
        assert!(!check_skeleton(&cg, &gx, &s).unwrap());
        s.selection.insert("v".into(), "zzz".into());
        assert!(matches!(
            check_skeleton(&cg, &gx, &s),
            Err(CellGraphError::UnknownCell { .. })
        ));
    }

    #[test]
    fn adjacency_is_symmetric_under_lookup() {
        let g = disjoint_triangles();
        let arr = build_arrangement(&g).unwrap();
        let cg = build_cell_graph(&g, &arr).unwrap();
        for ((u, v), set) in &cg.adjacency {
            for (a, b) in set {
                assert!(cg.cells_adjacent(u, a, v, b));
                assert!(cg.cells_adjacent(v, b, u, a));
            }
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let g = shared_triangle();
        let arr = build_arrangement(&g).unwrap();
        let a = build_cell_graph(&g, &arr).unwrap();
        let b = build_cell_graph_seq(&g, &arr).unwrap();
        assert_eq!(a, b);
    }
}
