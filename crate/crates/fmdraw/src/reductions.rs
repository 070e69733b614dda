//! Hardness reductions as executable instance generators and solution
//! mappers: the bend-budget point-set-embedding transformation (one mobile
//! vertex of degree two per original edge) and the 3SAT-to-skeleton gadget
//! over abstract clustered cell graphs, with the decoding of a skeleton back
//! to a truth assignment.

use crate::cellgraph::{CellGraph, CellVertex, IntersectionGraph, Skeleton};
use crate::geometry::{segments_intersect, Point2, Segment, SegmentIntersection};
use crate::model::{validate_drawing, Drawing, FMBigraph, ValidationMode};
use crate::planarity::SimpleGraph;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("bend budget must be odd, got {0}")]
    EvenBudget(usize),
    #[error("point set size {points} does not match vertex count {vertices}")]
    SizeMismatch { points: usize, vertices: usize },
    #[error("correspondence points are not pairwise distinct")]
    DuplicatePoints,
    #[error("input drawing is invalid: {0}")]
    InvalidInput(String),
    #[error("skeleton does not fit the reduction instance: {0}")]
    InvalidSkeleton(String),
}

/// A point-set embedding instance with prescribed correspondence: draw the
/// planar graph with vertex `v` at `zeta[v]` using at most `bend_budget`
/// bends per edge.
#[derive(Debug, Clone)]
pub struct BpsewcInstance {
    pub graph: SimpleGraph,
    /// `zeta[v]` is the prescribed point of vertex `v`; bijective onto the
    /// point set.
    pub zeta: Vec<Point2>,
    /// Odd bend budget `2k + 1`.
    pub bend_budget: usize,
}

impl BpsewcInstance {
    pub fn new(
        graph: SimpleGraph,
        zeta: Vec<Point2>,
        bend_budget: usize,
    ) -> Result<Self, ReductionError> {
        if bend_budget % 2 == 0 {
            return Err(ReductionError::EvenBudget(bend_budget));
        }
        if zeta.len() != graph.vertex_count() {
            return Err(ReductionError::SizeMismatch {
                points: zeta.len(),
                vertices: graph.vertex_count(),
            });
        }
        let distinct: BTreeSet<&Point2> = zeta.iter().collect();
        if distinct.len() != zeta.len() {
            return Err(ReductionError::DuplicatePoints);
        }
        Ok(BpsewcInstance {
            graph,
            zeta,
            bend_budget,
        })
    }

    pub fn fixed_id(v: usize) -> String {
        format!("v{v}")
    }

    pub fn mobile_id(u: usize, v: usize) -> String {
        let (u, v) = (u.min(v), u.max(v));
        format!("e_{u}_{v}")
    }
}

/// The fixed-mobile instance of the reduction: original vertices pinned at
/// their prescribed points, one degree-two mobile vertex per original edge.
pub fn bpsewc_to_fm(inst: &BpsewcInstance) -> FMBigraph {
    let fixed = (0..inst.graph.vertex_count())
        .map(|v| (BpsewcInstance::fixed_id(v), inst.zeta[v].clone()))
        .collect();
    let mut mobile = Vec::new();
    let mut edges = Vec::new();
    for &(u, v) in inst.graph.edges() {
        let m = BpsewcInstance::mobile_id(u, v);
        edges.push((BpsewcInstance::fixed_id(u), m.clone()));
        edges.push((BpsewcInstance::fixed_id(v), m.clone()));
        mobile.push(m);
    }
    FMBigraph::new(fixed, mobile, edges)
}

/// A polyline drawing of the original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BpsewcDrawing {
    /// Per original edge `(u, v)` with `u < v`: the full polyline from
    /// `zeta[u]` to `zeta[v]` including both endpoints.
    pub polylines: BTreeMap<(usize, usize), Vec<Point2>>,
}

impl BpsewcDrawing {
    pub fn max_bends(&self) -> usize {
        self.polylines
            .values()
            .map(|p| p.len().saturating_sub(2))
            .max()
            .unwrap_or(0)
    }
}

/// Map a planar k-bend drawing of the transformed instance back to a
/// (2k+1)-bend drawing of the original graph: each original edge is the
/// concatenation of its two half-polylines through the edge's mobile vertex.
pub fn fm_drawing_to_bpsewc(
    inst: &BpsewcInstance,
    d: &Drawing,
    k: usize,
) -> Result<BpsewcDrawing, ReductionError> {
    let g = bpsewc_to_fm(inst);
    let report = validate_drawing(&g, d, ValidationMode::Generic)
        .map_err(|e| ReductionError::InvalidInput(e.to_string()))?;
    if !report.planar {
        return Err(ReductionError::InvalidInput(format!(
            "drawing of the transformed instance is not planar: {:?}",
            report.violations.first()
        )));
    }
    for bends in d.bends.values() {
        if bends.len() > k {
            return Err(ReductionError::InvalidInput(format!(
                "edge carries {} bends, budget per transformed edge is {k}",
                bends.len()
            )));
        }
    }
    let mut polylines = BTreeMap::new();
    for &(u, v) in inst.graph.edges() {
        let m = BpsewcInstance::mobile_id(u, v);
        let eu = (BpsewcInstance::fixed_id(u), m.clone());
        let ev = (BpsewcInstance::fixed_id(v), m.clone());
        let mut poly = vec![inst.zeta[u].clone()];
        if let Some(bs) = d.bends.get(&eu) {
            poly.extend(bs.iter().cloned());
        }
        poly.push(d.positions[&m].clone());
        if let Some(bs) = d.bends.get(&ev) {
            poly.extend(bs.iter().rev().cloned());
        }
        poly.push(inst.zeta[v].clone());
        debug_assert!(poly.len() - 2 <= 2 * k + 1);
        polylines.insert((u.min(v), u.max(v)), poly);
    }
    Ok(BpsewcDrawing { polylines })
}

/// Crossing-freeness of a polyline drawing of the original graph: polylines
/// are simple and touch only at shared endpoint vertices.
pub fn bpsewc_drawing_is_planar(inst: &BpsewcInstance, d: &BpsewcDrawing) -> bool {
    let entries: Vec<(&(usize, usize), &Vec<Point2>)> = d.polylines.iter().collect();
    for (edge, poly) in &entries {
        if poly.len() < 2
            || poly.first() != Some(&inst.zeta[edge.0])
            || poly.last() != Some(&inst.zeta[edge.1])
        {
            return false;
        }
        if poly.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        let segs: Vec<Segment> = poly
            .windows(2)
            .map(|w| Segment::new(w[0].clone(), w[1].clone()))
            .collect();
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let cls = segments_intersect(&segs[i], &segs[j]);
                let ok = if j == i + 1 {
                    matches!(cls, SegmentIntersection::SharedEndpoint(_))
                } else {
                    matches!(cls, SegmentIntersection::Disjoint)
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    for a in 0..entries.len() {
        for b in (a + 1)..entries.len() {
            let (ea, pa) = entries[a];
            let (eb, pb) = entries[b];
            let shared: Vec<&Point2> = [ea.0, ea.1]
                .iter()
                .filter(|v| **v == eb.0 || **v == eb.1)
                .map(|&v| &inst.zeta[v])
                .collect();
            for sa in pa.windows(2) {
                let s1 = Segment::new(sa[0].clone(), sa[1].clone());
                for sb in pb.windows(2) {
                    let s2 = Segment::new(sb[0].clone(), sb[1].clone());
                    match segments_intersect(&s1, &s2) {
                        SegmentIntersection::Disjoint => {}
                        SegmentIntersection::SharedEndpoint(p) => {
                            if !shared.iter().any(|q| **q == p) {
                                return false;
                            }
                        }
                        _ => return false,
                    }
                }
            }
        }
    }
    // No vertex may sit on a polyline it does not terminate.
    for (v, pos) in inst.zeta.iter().enumerate() {
        for (edge, poly) in &entries {
            if edge.0 == v || edge.1 == v {
                continue;
            }
            for w in poly.windows(2) {
                let s = Segment::new(w[0].clone(), w[1].clone());
                if point_on_segment(&s, pos) {
                    return false;
                }
            }
        }
    }
    true
}

fn point_on_segment(s: &Segment, p: &Point2) -> bool {
    use crate::geometry::{orientation, Orientation};
    if orientation(&s.a, &s.b, p) != Orientation::Collinear {
        return false;
    }
    let (xlo, xhi) = if s.a.x <= s.b.x {
        (&s.a.x, &s.b.x)
    } else {
        (&s.b.x, &s.a.x)
    };
    let (ylo, yhi) = if s.a.y <= s.b.y {
        (&s.a.y, &s.b.y)
    } else {
        (&s.b.y, &s.a.y)
    };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// A 3SAT formula: clauses of exactly three literals, each a variable index
/// with a polarity (`true` = positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatInstance {
    pub var_count: usize,
    pub clauses: Vec<[(usize, bool); 3]>,
}

impl SatInstance {
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|&(v, polarity)| assignment[v] == polarity)
        })
    }
}

/// Cluster and cell naming of the gadget.
#[derive(Debug, Clone)]
pub struct SatLabels {
    pub var_cluster: Vec<String>,
    pub clause_cluster: Vec<String>,
    pub pos_cell: String,
    pub neg_cell: String,
}

/// The skeleton gadget of a 3SAT formula: one two-cell cluster per variable,
/// one three-cell cluster per clause; each clause literal cell connects to
/// its matching variable-literal cell and to every cell of the clause's
/// other variables.
pub fn sat_to_skeleton(inst: &SatInstance) -> (IntersectionGraph, CellGraph, SatLabels) {
    let labels = SatLabels {
        var_cluster: (0..inst.var_count).map(|i| format!("x{i}")).collect(),
        clause_cluster: (0..inst.clauses.len()).map(|j| format!("c{j}")).collect(),
        pos_cell: "pos".to_string(),
        neg_cell: "neg".to_string(),
    };
    let mut cg = CellGraph::default();
    for name in &labels.var_cluster {
        cg.clusters.insert(
            name.clone(),
            vec![
                CellVertex {
                    id: labels.neg_cell.clone(),
                    representative: None,
                },
                CellVertex {
                    id: labels.pos_cell.clone(),
                    representative: None,
                },
            ],
        );
    }
    for (j, _) in inst.clauses.iter().enumerate() {
        cg.clusters.insert(
            labels.clause_cluster[j].clone(),
            (0..3)
                .map(|t| CellVertex {
                    id: format!("l{t}"),
                    representative: None,
                })
                .collect(),
        );
    }
    let mut nodes: Vec<String> = labels
        .var_cluster
        .iter()
        .chain(labels.clause_cluster.iter())
        .cloned()
        .collect();
    nodes.sort();
    let mut edges = BTreeSet::new();
    let insert_adj = |cg: &mut CellGraph, a: &str, ca: &str, b: &str, cb: &str| {
        let (key, pair) = if a <= b {
            ((a.to_string(), b.to_string()), (ca.to_string(), cb.to_string()))
        } else {
            ((b.to_string(), a.to_string()), (cb.to_string(), ca.to_string()))
        };
        cg.adjacency.entry(key).or_default().insert(pair);
    };
    for (j, clause) in inst.clauses.iter().enumerate() {
        let cname = labels.clause_cluster[j].clone();
        let vars: BTreeSet<usize> = clause.iter().map(|&(v, _)| v).collect();
        for v in &vars {
            let key = if cname <= labels.var_cluster[*v] {
                (cname.clone(), labels.var_cluster[*v].clone())
            } else {
                (labels.var_cluster[*v].clone(), cname.clone())
            };
            edges.insert(key.clone());
            cg.adjacency.entry(key).or_default();
        }
        for (t, &(v, polarity)) in clause.iter().enumerate() {
            let cell = format!("l{t}");
            let lit_cell = if polarity {
                &labels.pos_cell
            } else {
                &labels.neg_cell
            };
            insert_adj(&mut cg, &cname, &cell, &labels.var_cluster[v], lit_cell);
            for w in &vars {
                if *w == v {
                    continue;
                }
                insert_adj(&mut cg, &cname, &cell, &labels.var_cluster[*w], &labels.pos_cell);
                insert_adj(&mut cg, &cname, &cell, &labels.var_cluster[*w], &labels.neg_cell);
            }
        }
    }
    let gx = IntersectionGraph { nodes, edges };
    (gx, cg, labels)
}

/// Read the truth assignment off a skeleton of the gadget.
pub fn skeleton_to_assignment(
    inst: &SatInstance,
    labels: &SatLabels,
    s: &Skeleton,
) -> Result<Vec<bool>, ReductionError> {
    let mut assignment = Vec::with_capacity(inst.var_count);
    for name in &labels.var_cluster {
        let cell = s
            .selection
            .get(name)
            .ok_or_else(|| ReductionError::InvalidSkeleton(format!("cluster {name} unselected")))?;
        if *cell == labels.pos_cell {
            assignment.push(true);
        } else if *cell == labels.neg_cell {
            assignment.push(false);
        } else {
            return Err(ReductionError::InvalidSkeleton(format!(
                "cluster {name} selects unknown cell {cell}"
            )));
        }
    }
    Ok(assignment)
}
