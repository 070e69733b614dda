//! Instance and drawing data model shared by all solvers, plus the geometric
//! drawing validator.
//!
//! Positions are exact rationals end to end. A "crossing" means: the
//! interiors of two segments intersect, two segments overlap in more than
//! one point, or a segment's interior contains a vertex point that is not
//! its own endpoint. Shared endpoints at a common graph vertex are not
//! crossings.

use crate::geometry::{
    convex_hull, point_in_polygon, segments_intersect, Hull, Point2, PointLocation, Rat, Segment,
    SegmentIntersection,
};
use crate::strip::StripSet;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

/// A fixed vertex with its prescribed position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedVertex {
    pub id: String,
    pub pos: Point2,
}

/// A fixed-mobile bigraph: fixed vertices pinned to points, mobile vertices
/// freely placeable, and edges joining one fixed to one mobile vertex.
///
/// Construction does not validate; run [`validate_instance`] to obtain a
/// report, or [`FMBigraph::indexed`] for a checked indexed view.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMBigraph {
    pub fixed: Vec<FixedVertex>,
    pub mobile: Vec<String>,
    /// Edges as `(fixed id, mobile id)` pairs.
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("edge ({0}, {1}) references unknown vertex {2}")]
    UnknownEndpoint(String, String, String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("fixed vertices {0} and {1} share a position")]
    DuplicateFixedPosition(String, String),
}

/// Checked, index-based view of a structurally valid instance.
#[derive(Debug, Clone)]
pub struct IndexedInstance {
    pub fixed_index: BTreeMap<String, usize>,
    pub mobile_index: BTreeMap<String, usize>,
    /// Canonical edge list, sorted lexicographically by (fixed id, mobile id).
    pub edges: Vec<(usize, usize)>,
    pub mobile_neighbors: Vec<Vec<usize>>,
    pub fixed_neighbors: Vec<Vec<usize>>,
}

impl FMBigraph {
    pub fn new(
        fixed: Vec<(String, Point2)>,
        mobile: Vec<String>,
        edges: Vec<(String, String)>,
    ) -> Self {
        FMBigraph {
            fixed: fixed
                .into_iter()
                .map(|(id, pos)| FixedVertex { id, pos })
                .collect(),
            mobile,
            edges,
        }
    }

    pub fn fixed_count(&self) -> usize {
        self.fixed.len()
    }

    pub fn mobile_count(&self) -> usize {
        self.mobile.len()
    }

    pub fn fixed_position(&self, id: &str) -> Option<&Point2> {
        self.fixed.iter().find(|f| f.id == id).map(|f| &f.pos)
    }

    /// Edges in canonical report order.
    pub fn canonical_edges(&self) -> Vec<(String, String)> {
        let mut es = self.edges.clone();
        es.sort();
        es
    }

    /// Indexed view; fails on structural problems (the same ones
    /// [`validate_instance`] reports).
    pub fn indexed(&self) -> Result<IndexedInstance, InstanceError> {
        let mut fixed_index = BTreeMap::new();
        let mut mobile_index = BTreeMap::new();
        for (i, f) in self.fixed.iter().enumerate() {
            if fixed_index.insert(f.id.clone(), i).is_some() {
                return Err(InstanceError::DuplicateId(f.id.clone()));
            }
        }
        for (i, m) in self.mobile.iter().enumerate() {
            if mobile_index.contains_key(m) || fixed_index.contains_key(m) {
                return Err(InstanceError::DuplicateId(m.clone()));
            }
            mobile_index.insert(m.clone(), i);
        }
        let mut pos_seen: BTreeMap<&Point2, &str> = BTreeMap::new();
        for f in &self.fixed {
            if let Some(other) = pos_seen.insert(&f.pos, &f.id) {
                return Err(InstanceError::DuplicateFixedPosition(
                    other.to_string(),
                    f.id.clone(),
                ));
            }
        }
        let mut named = self.edges.clone();
        named.sort();
        let mut edges = Vec::with_capacity(named.len());
        let mut seen = BTreeSet::new();
        for (fid, mid) in named {
            let &fi = fixed_index.get(&fid).ok_or_else(|| {
                InstanceError::UnknownEndpoint(fid.clone(), mid.clone(), fid.clone())
            })?;
            let &mi = mobile_index.get(&mid).ok_or_else(|| {
                InstanceError::UnknownEndpoint(fid.clone(), mid.clone(), mid.clone())
            })?;
            if !seen.insert((fi, mi)) {
                return Err(InstanceError::DuplicateEdge(fid, mid));
            }
            edges.push((fi, mi));
        }
        let mut mobile_neighbors = vec![Vec::new(); self.mobile.len()];
        let mut fixed_neighbors = vec![Vec::new(); self.fixed.len()];
        for &(fi, mi) in &edges {
            mobile_neighbors[mi].push(fi);
            fixed_neighbors[fi].push(mi);
        }
        for v in mobile_neighbors.iter_mut().chain(fixed_neighbors.iter_mut()) {
            v.sort_unstable();
        }
        Ok(IndexedInstance {
            fixed_index,
            mobile_index,
            edges,
            mobile_neighbors,
            fixed_neighbors,
        })
    }
}

/// Positions for every vertex plus per-edge bend points.
///
/// Bends are keyed by the `(fixed id, mobile id)` edge pair and ordered from
/// the fixed endpoint towards the mobile endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Drawing {
    pub positions: BTreeMap<String, Point2>,
    pub bends: BTreeMap<(String, String), Vec<Point2>>,
}

impl Drawing {
    pub fn polyline(&self, edge: &(String, String)) -> Option<Vec<Point2>> {
        let fpos = self.positions.get(&edge.0)?.clone();
        let mpos = self.positions.get(&edge.1)?.clone();
        let mut pts = vec![fpos];
        if let Some(bs) = self.bends.get(edge) {
            pts.extend(bs.iter().cloned());
        }
        pts.push(mpos);
        Some(pts)
    }
}

/// Validation mode for [`validate_drawing`].
#[derive(Debug, Clone)]
pub enum ValidationMode<'a> {
    /// Crossing-freeness of the edge polylines only.
    Generic,
    /// Additionally enforce the h-strip drawing conditions.
    Strip(&'a StripSet),
    /// Additionally require 0 bends and each mobile inside the convex hull
    /// of its neighbors.
    ConvexHull,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidateError {
    #[error("vertex {0} has no position in the drawing")]
    MissingPosition(String),
    #[error("instance is structurally invalid: {0}")]
    InvalidInstance(InstanceError),
}

/// One reported defect of an instance or drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateId {
        id: String,
    },
    DuplicateFixedPosition {
        first: String,
        second: String,
        at: Point2,
    },
    UnknownEndpoint {
        edge: (String, String),
        missing: String,
    },
    DuplicateEdge {
        edge: (String, String),
    },
    /// Two distinct vertices drawn at the same point.
    CoincidentVertices {
        first: String,
        second: String,
    },
    /// A fixed vertex not drawn bit-exactly at its prescribed position.
    FixedMoved {
        id: String,
    },
    /// Consecutive identical points in an edge polyline.
    DegeneratePolyline {
        edge: (String, String),
        at: Point2,
    },
    /// An edge polyline that intersects itself.
    SelfIntersectingEdge {
        edge: (String, String),
        witness: Point2,
    },
    /// Two edge polylines meeting outside a shared endpoint vertex.
    EdgeCrossing {
        first: (String, String),
        second: (String, String),
        witness: Point2,
    },
    /// A vertex lying on an edge it is not an endpoint of.
    VertexOnEdge {
        vertex: String,
        edge: (String, String),
        witness: Point2,
    },
    /// More bends than the mode permits.
    TooManyBends {
        edge: (String, String),
        count: usize,
    },
    /// Strip mode: a mobile vertex inside a closed strip.
    MobileNotFree {
        id: String,
    },
    /// Strip mode: a fixed vertex covered by no strip.
    FixedOutsideStrips {
        id: String,
    },
    /// Strip mode: missing bend, bend off the strip boundary, or inner
    /// segment not vertical.
    MalformedStripEdge {
        edge: (String, String),
    },
    /// Strip mode: an edge intersecting a strip beyond its entry point.
    EdgeCrossesStrip {
        edge: (String, String),
        strip: usize,
    },
    /// Convex-hull mode: a mobile vertex outside the hull of its neighbors.
    OutsideNeighborHull {
        id: String,
    },
    /// Convex-hull mode: fewer than three affinely independent neighbors.
    DegenerateHull {
        id: String,
    },
}

/// Result of instance or drawing validation; `planar` is true exactly when
/// `violations` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub planar: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport {
            planar: violations.is_empty(),
            violations,
        }
    }
}

/// Report structural problems of an instance: duplicate ids, duplicate fixed
/// positions, unknown edge endpoints, duplicate edges.
pub fn validate_instance(g: &FMBigraph) -> ValidationReport {
    let mut violations = Vec::new();
    let mut ids: BTreeSet<&str> = BTreeSet::new();
    for id in g.fixed.iter().map(|f| f.id.as_str()).chain(g.mobile.iter().map(|s| s.as_str())) {
        if !ids.insert(id) {
            violations.push(Violation::DuplicateId { id: id.to_string() });
        }
    }
    let mut pos_seen: BTreeMap<&Point2, &str> = BTreeMap::new();
    for f in &g.fixed {
        if let Some(other) = pos_seen.insert(&f.pos, &f.id) {
            violations.push(Violation::DuplicateFixedPosition {
                first: other.to_string(),
                second: f.id.clone(),
                at: f.pos.clone(),
            });
        }
    }
    let fixed_ids: BTreeSet<&str> = g.fixed.iter().map(|f| f.id.as_str()).collect();
    let mobile_ids: BTreeSet<&str> = g.mobile.iter().map(|s| s.as_str()).collect();
    let mut seen_edges: BTreeSet<(&str, &str)> = BTreeSet::new();
    for (fid, mid) in &g.canonical_edges() {
        let mut known = true;
        if !fixed_ids.contains(fid.as_str()) {
            violations.push(Violation::UnknownEndpoint {
                edge: (fid.clone(), mid.clone()),
                missing: fid.clone(),
            });
            known = false;
        }
        if !mobile_ids.contains(mid.as_str()) {
            violations.push(Violation::UnknownEndpoint {
                edge: (fid.clone(), mid.clone()),
                missing: mid.clone(),
            });
            known = false;
        }
        if known && !seen_edges.insert((fid, mid)) {
            violations.push(Violation::DuplicateEdge {
                edge: (fid.clone(), mid.clone()),
            });
        }
    }
    ValidationReport::from_violations(violations)
}

struct EdgeGeom {
    id: (String, String),
    polyline: Vec<Point2>,
    segments: Vec<Segment>,
    ok: bool,
}

/// Validate a drawing of `g` geometrically.
///
/// The report is a pure function of the inputs; violations are listed in a
/// canonical order and each crossing pair appears exactly once.
pub fn validate_drawing(
    g: &FMBigraph,
    d: &Drawing,
    mode: ValidationMode<'_>,
) -> Result<ValidationReport, ValidateError> {
    let idx = g.indexed().map_err(ValidateError::InvalidInstance)?;
    let mut violations = Vec::new();

    // Every vertex needs a position.
    for f in &g.fixed {
        if !d.positions.contains_key(&f.id) {
            return Err(ValidateError::MissingPosition(f.id.clone()));
        }
    }
    for m in &g.mobile {
        if !d.positions.contains_key(m) {
            return Err(ValidateError::MissingPosition(m.clone()));
        }
    }

    // Fixed vertices sit bit-exactly at their prescribed positions.
    for f in &g.fixed {
        if d.positions[&f.id] != f.pos {
            violations.push(Violation::FixedMoved { id: f.id.clone() });
        }
    }

    // Distinct vertices occupy distinct points.
    let mut by_pos: BTreeMap<&Point2, &str> = BTreeMap::new();
    for id in g.fixed.iter().map(|f| &f.id).chain(g.mobile.iter()) {
        let p = &d.positions[id];
        if let Some(other) = by_pos.insert(p, id) {
            violations.push(Violation::CoincidentVertices {
                first: other.to_string(),
                second: id.clone(),
            });
        }
    }

    // Assemble polylines in canonical edge order.
    let canonical = g.canonical_edges();
    let mut geoms: Vec<EdgeGeom> = Vec::with_capacity(canonical.len());
    for e in &canonical {
        let polyline = d.polyline(e).expect("positions checked above");
        let mut ok = true;
        for w in polyline.windows(2) {
            if w[0] == w[1] {
                violations.push(Violation::DegeneratePolyline {
                    edge: e.clone(),
                    at: w[0].clone(),
                });
                ok = false;
            }
        }
        let segments = if ok {
            polyline
                .windows(2)
                .map(|w| Segment::new(w[0].clone(), w[1].clone()))
                .collect()
        } else {
            Vec::new()
        };
        geoms.push(EdgeGeom {
            id: e.clone(),
            polyline,
            segments,
            ok,
        });
    }

    // Polyline simplicity.
    for eg in &geoms {
        if !eg.ok {
            continue;
        }
        let segs = &eg.segments;
        'outer: for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let cls = segments_intersect(&segs[i], &segs[j]);
                let bad = if j == i + 1 {
                    !matches!(cls, SegmentIntersection::SharedEndpoint(_))
                } else {
                    !matches!(cls, SegmentIntersection::Disjoint)
                };
                if bad {
                    let witness = cls
                        .witness()
                        .cloned()
                        .unwrap_or_else(|| segs[i].a.clone());
                    violations.push(Violation::SelfIntersectingEdge {
                        edge: eg.id.clone(),
                        witness,
                    });
                    break 'outer;
                }
            }
        }
    }

    // Pairwise crossing checks with the mode's contact allowances.
    for i in 0..geoms.len() {
        for j in (i + 1)..geoms.len() {
            let (e1, e2) = (&geoms[i], &geoms[j]);
            if !e1.ok || !e2.ok {
                continue;
            }
            if let Some(witness) = edge_pair_conflict(e1, e2, d, &mode) {
                violations.push(Violation::EdgeCrossing {
                    first: e1.id.clone(),
                    second: e2.id.clone(),
                    witness,
                });
            }
        }
    }

    // No vertex may lie on an edge it is not an endpoint of.
    for id in g.fixed.iter().map(|f| &f.id).chain(g.mobile.iter()) {
        let p = &d.positions[id];
        for eg in &geoms {
            if !eg.ok || eg.id.0 == *id || eg.id.1 == *id {
                continue;
            }
            if eg.segments.iter().any(|s| on_segment(s, p)) {
                violations.push(Violation::VertexOnEdge {
                    vertex: id.clone(),
                    edge: eg.id.clone(),
                    witness: p.clone(),
                });
            }
        }
    }

    match mode {
        ValidationMode::Generic => {}
        ValidationMode::ConvexHull => {
            for eg in &geoms {
                let k = eg.polyline.len() - 2;
                if k > 0 {
                    violations.push(Violation::TooManyBends {
                        edge: eg.id.clone(),
                        count: k,
                    });
                }
            }
            for (mi, m) in g.mobile.iter().enumerate() {
                let neighbor_pts: Vec<Point2> = idx.mobile_neighbors[mi]
                    .iter()
                    .map(|&fi| g.fixed[fi].pos.clone())
                    .collect();
                if neighbor_pts.is_empty() {
                    violations.push(Violation::DegenerateHull { id: m.clone() });
                    continue;
                }
                match convex_hull(&neighbor_pts) {
                    Hull::Polygon(poly) => {
                        if point_in_polygon(&d.positions[m], &poly) == PointLocation::Exterior {
                            violations.push(Violation::OutsideNeighborHull { id: m.clone() });
                        }
                    }
                    _ => violations.push(Violation::DegenerateHull { id: m.clone() }),
                }
            }
        }
        ValidationMode::Strip(strips) => {
            validate_strip_conditions(g, d, strips, &geoms, &mut violations);
        }
    }

    Ok(ValidationReport::from_violations(violations))
}

fn on_segment(s: &Segment, p: &Point2) -> bool {
    use crate::geometry::{orientation, Orientation};
    orientation(&s.a, &s.b, p) == Orientation::Collinear && {
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
}

/// Witness of a forbidden contact between two edge polylines, or None.
fn edge_pair_conflict(
    e1: &EdgeGeom,
    e2: &EdgeGeom,
    d: &Drawing,
    mode: &ValidationMode<'_>,
) -> Option<Point2> {
    // Positions of vertices shared by both edges; contact there is fine.
    let mut shared_vertex_points: Vec<&Point2> = Vec::new();
    if e1.id.0 == e2.id.0 {
        shared_vertex_points.push(&d.positions[&e1.id.0]);
    }
    if e1.id.1 == e2.id.1 {
        shared_vertex_points.push(&d.positions[&e1.id.1]);
    }

    // Strip mode: edges entering the same fixed vertex from the same side
    // share their bend point and their vertical segments.
    let shared_vertical = matches!(mode, ValidationMode::Strip(_))
        && e1.id.0 == e2.id.0
        && e1.polyline.len() == 3
        && e2.polyline.len() == 3
        && e1.polyline[1] == e2.polyline[1];

    for (si, s1) in e1.segments.iter().enumerate() {
        for (sj, s2) in e2.segments.iter().enumerate() {
            let cls = segments_intersect(s1, s2);
            match &cls {
                SegmentIntersection::Disjoint => {}
                SegmentIntersection::SharedEndpoint(p) => {
                    let at_shared_vertex = shared_vertex_points.iter().any(|q| *q == p);
                    let at_shared_bend = shared_vertical && *p == e1.polyline[1];
                    if !(at_shared_vertex || at_shared_bend) {
                        return Some(p.clone());
                    }
                }
                SegmentIntersection::Overlap(lo, _hi) => {
                    // Identical vertical segments into the same fixed vertex
                    // are the one permitted overlap. Polylines run from the
                    // fixed endpoint, so the vertical is the first segment.
                    let both_vertical = shared_vertical && si == 0 && sj == 0;
                    if !both_vertical {
                        return Some(lo.clone());
                    }
                }
                SegmentIntersection::ProperCrossing(p)
                | SegmentIntersection::EndpointInInterior(p) => {
                    return Some(p.clone());
                }
            }
        }
    }
    None
}

fn validate_strip_conditions(
    g: &FMBigraph,
    d: &Drawing,
    strips: &StripSet,
    geoms: &[EdgeGeom],
    violations: &mut Vec<Violation>,
) {
    for f in &g.fixed {
        if strips.strip_of_y(&f.pos.y).is_none() {
            violations.push(Violation::FixedOutsideStrips { id: f.id.clone() });
        }
    }
    for m in &g.mobile {
        if !strips.is_free_y(&d.positions[m].y) {
            violations.push(Violation::MobileNotFree { id: m.clone() });
        }
    }
    for eg in geoms {
        if !eg.ok {
            continue;
        }
        let upos = &d.positions[&eg.id.0];
        let strip_idx = match strips.strip_of_y(&upos.y) {
            Some(i) => i,
            None => continue,
        };
        let strip = strips.strip(strip_idx);
        let bend_count = eg.polyline.len() - 2;
        let entry: Option<&Point2> = match bend_count {
            0 => {
                // Allowed only when the fixed vertex sits on its strip's
                // boundary; the vertical segment degenerates to that point.
                if upos.y == strip.y_top || upos.y == strip.y_bottom {
                    Some(upos)
                } else {
                    violations.push(Violation::MalformedStripEdge { edge: eg.id.clone() });
                    None
                }
            }
            1 => {
                let p = &eg.polyline[1];
                if p.x != upos.x || (p.y != strip.y_top && p.y != strip.y_bottom) {
                    violations.push(Violation::MalformedStripEdge { edge: eg.id.clone() });
                    None
                } else {
                    Some(p)
                }
            }
            _ => {
                violations.push(Violation::TooManyBends {
                    edge: eg.id.clone(),
                    count: bend_count,
                });
                None
            }
        };
        let Some(entry) = entry else { continue };
        // The free part runs from the mobile vertex to the entry point and
        // may touch no strip anywhere else.
        let vpos = &d.positions[&eg.id.1];
        if vpos != entry {
            for (ti, s) in strips.strips().iter().enumerate() {
                if segment_touches_band_beyond(vpos, entry, &s.y_bottom, &s.y_top, entry) {
                    violations.push(Violation::EdgeCrossesStrip {
                        edge: eg.id.clone(),
                        strip: ti,
                    });
                }
            }
        }
    }
}

/// Does segment `a -> b` contain a point with ordinate in `[ylo, yhi]` other
/// than `allowed`?
fn segment_touches_band_beyond(
    a: &Point2,
    b: &Point2,
    ylo: &Rat,
    yhi: &Rat,
    allowed: &Point2,
) -> bool {
    let dy = &b.y - &a.y;
    if dy.is_zero() {
        if ylo <= &a.y && &a.y <= yhi {
            // Whole segment inside the band; it has more than one point.
            return true;
        }
        return false;
    }
    // t-range where y(t) is inside the band, intersected with [0, 1].
    let t1 = (ylo - &a.y) / &dy;
    let t2 = (yhi - &a.y) / &dy;
    let (mut lo, mut hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
    if lo < Rat::zero() {
        lo = Rat::zero();
    }
    if hi > Rat::one() {
        hi = Rat::one();
    }
    if lo > hi {
        return false;
    }
    if lo == hi {
        let p = a.lerp(b, &lo);
        return p != *allowed;
    }
    // A positive-length sub-segment inside the band: more than one point, so
    // at least one of them differs from `allowed`.
    true
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rat;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn star_instance() -> FMBigraph {
        FMBigraph::new(
            vec![
                ("a".into(), pt(0, 0)),
                ("b".into(), pt(2, 0)),
                ("c".into(), pt(1, 2)),
            ],
            vec!["m".into()],
            vec![
                ("a".into(), "m".into()),
                ("b".into(), "m".into()),
                ("c".into(), "m".into()),
            ],
        )
    }

    fn positions_of(g: &FMBigraph, mobiles: &[(&str, Point2)]) -> Drawing {
        let mut d = Drawing::default();
        for f in &g.fixed {
            d.positions.insert(f.id.clone(), f.pos.clone());
        }
        for (m, p) in mobiles {
            d.positions.insert((*m).into(), p.clone());
        }
        d
    }

    #[test]
    fn validate_minimal_instance() {
        let g = FMBigraph::new(
            vec![("f".into(), pt(0, 0))],
            vec!["m".into()],
            vec![("f".into(), "m".into())],
        );
        assert!(validate_instance(&g).planar);
    }

    #[test]
    fn validate_duplicate_fixed_position() {
        let g = FMBigraph::new(
            vec![("f".into(), pt(1, 1)), ("g".into(), pt(1, 1))],
            vec![],
            vec![],
        );
        let rep = validate_instance(&g);
        assert!(!rep.planar);
        assert!(matches!(
            rep.violations[0],
            Violation::DuplicateFixedPosition { .. }
        ));
    }

    #[test]
    fn validate_unknown_endpoint() {
        let g = FMBigraph::new(
            vec![("f".into(), pt(0, 0))],
            vec!["m".into()],
            vec![("f".into(), "nope".into())],
        );
        let rep = validate_instance(&g);
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, Violation::UnknownEndpoint { missing, .. } if missing == "nope")));
    }

    #[test]
    fn star_drawing_is_planar() {
        let g = star_instance();
        let d = positions_of(&g, &[("m", Point2::new(rat_int_t(1), rat(1, 2)))]);
        let rep = validate_drawing(&g, &d, ValidationMode::Generic).unwrap();
        assert!(rep.planar, "{:?}", rep.violations);
    }

    fn rat_int_t(n: i64) -> Rat {
        crate::geometry::rat_int(n)
    }

    #[test]
    fn detour_bend_crossing_with_witness() {
        // Two mobiles joined to (0,0) and (2,0); the edge (2,0)-(1,1) takes a
        // detour bend at (1/2, -2), crossing the straight edge (0,0)-(1,-1).
        let g = FMBigraph::new(
            vec![("a".into(), pt(0, 0)), ("b".into(), pt(2, 0))],
            vec!["m1".into(), "m2".into()],
            vec![
                ("a".into(), "m1".into()),
                ("a".into(), "m2".into()),
                ("b".into(), "m1".into()),
                ("b".into(), "m2".into()),
            ],
        );
        let mut d = positions_of(&g, &[("m1", pt(1, 1)), ("m2", pt(1, -1))]);
        d.bends.insert(
            ("b".into(), "m1".into()),
            vec![Point2::new(rat(1, 2), rat_int_t(-2))],
        );
        let rep = validate_drawing(&g, &d, ValidationMode::Generic).unwrap();
        assert!(!rep.planar);
        let witness = rep.violations.iter().find_map(|v| match v {
            Violation::EdgeCrossing { first, second, witness }
                if first == &("a".to_string(), "m2".to_string())
                    && second == &("b".to_string(), "m1".to_string()) =>
            {
                Some(witness.clone())
            }
            _ => None,
        });
        assert_eq!(witness, Some(Point2::new(rat(5, 7), rat(-5, 7))));
    }

    #[test]
    fn crossing_reported_once_per_pair() {
        let g = FMBigraph::new(
            vec![("a".into(), pt(0, 0)), ("b".into(), pt(0, 2))],
            vec!["m1".into(), "m2".into()],
            vec![("a".into(), "m1".into()), ("b".into(), "m2".into())],
        );
        let d = positions_of(&g, &[("m1", pt(2, 2)), ("m2", pt(2, 0))]);
        let rep = validate_drawing(&g, &d, ValidationMode::Generic).unwrap();
        let crossings: Vec<_> = rep
            .violations
            .iter()
            .filter(|v| matches!(v, Violation::EdgeCrossing { .. }))
            .collect();
        assert_eq!(crossings.len(), 1);
        assert!(matches!(
            crossings[0],
            Violation::EdgeCrossing { witness, .. } if *witness == pt(1, 1)
        ));
    }

    #[test]
    fn missing_position_is_an_error() {
        let g = star_instance();
        let d = positions_of(&g, &[]);
        assert!(matches!(
            validate_drawing(&g, &d, ValidationMode::Generic),
            Err(ValidateError::MissingPosition(m)) if m == "m"
        ));
    }

    #[test]
    fn strip_mode_allows_shared_verticals() {
        use crate::strip::{Strip, StripSet};
        // One strip containing u; two mobiles above connect to u, entering
        // through the same boundary point: their verticals coincide.
        let g = FMBigraph::new(
            vec![("u".into(), pt(0, 0))],
            vec!["m1".into(), "m2".into()],
            vec![("u".into(), "m1".into()), ("u".into(), "m2".into())],
        );
        let strips = StripSet::new(vec![Strip {
            y_top: rat_int_t(1),
            y_bottom: rat_int_t(-1),
        }])
        .unwrap();
        let mut d = positions_of(&g, &[("m1", pt(-2, 3)), ("m2", pt(2, 3))]);
        d.bends.insert(("u".into(), "m1".into()), vec![pt(0, 1)]);
        d.bends.insert(("u".into(), "m2".into()), vec![pt(0, 1)]);
        let rep = validate_drawing(&g, &d, ValidationMode::Strip(&strips)).unwrap();
        assert!(rep.planar, "{:?}", rep.violations);

        // The same drawing in generic mode is an overlap violation.
        let rep = validate_drawing(&g, &d, ValidationMode::Generic).unwrap();
        assert!(!rep.planar);
    }

    #[test]
    fn strip_mode_rejects_strip_crossing() {
        use crate::strip::{Strip, StripSet};
        let g = FMBigraph::new(
            vec![("u".into(), pt(0, 0)), ("w".into(), pt(5, -10))],
            vec!["m1".into()],
            vec![("u".into(), "m1".into())],
        );
        let strips = StripSet::new(vec![
            Strip {
                y_top: rat_int_t(1),
                y_bottom: rat_int_t(-1),
            },
            Strip {
                y_top: rat_int_t(-9),
                y_bottom: rat_int_t(-11),
            },
        ])
        .unwrap();
        // Mobile below both strips reaching up to the top strip: its free
        // segment crosses the second strip.
        let mut d = positions_of(&g, &[("m1", pt(1, -20))]);
        d.bends.insert(("u".into(), "m1".into()), vec![pt(0, -1)]);
        let rep = validate_drawing(&g, &d, ValidationMode::Strip(&strips)).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, Violation::EdgeCrossesStrip { strip: 1, .. })));
    }

    #[test]
    fn convex_hull_mode_checks_containment() {
        let g = star_instance();
        let inside = positions_of(&g, &[("m", Point2::new(rat_int_t(1), rat(1, 2)))]);
        assert!(validate_drawing(&g, &inside, ValidationMode::ConvexHull)
            .unwrap()
            .planar);
        let outside = positions_of(&g, &[("m", pt(5, 5))]);
        let rep = validate_drawing(&g, &outside, ValidationMode::ConvexHull).unwrap();
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, Violation::OutsideNeighborHull { .. })));
    }

    #[test]
    fn report_is_deterministic() {
        let g = star_instance();
        let d = positions_of(&g, &[("m", pt(5, 5))]);
        let r1 = validate_drawing(&g, &d, ValidationMode::ConvexHull).unwrap();
        let r2 = validate_drawing(&g, &d, ValidationMode::ConvexHull).unwrap();
        assert_eq!(r1, r2);
    }
}
