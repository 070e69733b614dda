//! The h-strip 1-bend drawing model: strip sets, vertex classification, the
//! augmented planarity-test graph, the decision procedure, strip-partition
//! enumeration, and a best-effort geometric construction.

use crate::geometry::{rat_int, Rat};
use crate::layout::layout_side;
use crate::model::FMBigraph;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StripError {
    #[error("strip {0} has y_top <= y_bottom")]
    EmptyStrip(usize),
    #[error("strips {0} and {1} are not separated by a nonempty gap")]
    NoGap(usize, usize),
    #[error("fixed vertex {0} lies in no strip")]
    UncoveredFixed(String),
    #[error("fixed vertices {0} and {1} share an x-coordinate")]
    DuplicateX(String, String),
    #[error("mobile vertex {0} has neighbors in non-consecutive strips")]
    Infeasible(String),
    #[error("no strip partition into {0} groups is feasible")]
    InfeasibleForAllPartitions(usize),
    #[error("need at least {0} distinct y-coordinates for {0} strips")]
    TooFewLevels(usize),
    #[error("instance error: {0}")]
    Instance(String),
    #[error("decision is positive but the geometric construction did not complete")]
    ConstructionIncomplete,
}

/// One closed horizontal strip of infinite width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Strip {
    pub y_top: Rat,
    pub y_bottom: Rat,
}

impl Strip {
    pub fn contains_y(&self, y: &Rat) -> bool {
        &self.y_bottom <= y && y <= &self.y_top
    }
}

/// A top-to-bottom sequence of disjoint horizontal strips with nonempty gaps
/// between consecutive strips.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripSet {
    strips: Vec<Strip>,
}

impl StripSet {
    pub fn new(strips: Vec<Strip>) -> Result<Self, StripError> {
        for (i, s) in strips.iter().enumerate() {
            if s.y_top <= s.y_bottom {
                return Err(StripError::EmptyStrip(i));
            }
        }
        for i in 1..strips.len() {
            if strips[i - 1].y_bottom <= strips[i].y_top {
                return Err(StripError::NoGap(i - 1, i));
            }
        }
        Ok(StripSet { strips })
    }

    pub fn len(&self) -> usize {
        self.strips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strips.is_empty()
    }

    pub fn strips(&self) -> &[Strip] {
        &self.strips
    }

    pub fn strip(&self, i: usize) -> &Strip {
        &self.strips[i]
    }

    /// Index of the strip whose closed band contains `y`.
    pub fn strip_of_y(&self, y: &Rat) -> Option<usize> {
        self.strips.iter().position(|s| s.contains_y(y))
    }

    /// True iff `y` lies at a free point (outside every closed strip).
    pub fn is_free_y(&self, y: &Rat) -> bool {
        self.strip_of_y(y).is_none()
    }

    /// Every fixed vertex of `g` must lie inside exactly one strip.
    pub fn covers(&self, g: &FMBigraph) -> Result<(), StripError> {
        for f in &g.fixed {
            if self.strip_of_y(&f.pos.y).is_none() {
                return Err(StripError::UncoveredFixed(f.id.clone()));
            }
        }
        Ok(())
    }

    /// The gap band above strip 0 is gap 0, between strips `i-1` and `i` is
    /// gap `i`, below the last strip is gap `len()`. Returns the open
    /// y-interval of a gap as (upper, lower) bounds where present.
    pub fn gap_bounds(&self, gap: usize) -> (Option<Rat>, Option<Rat>) {
        let h = self.strips.len();
        let upper = if gap == 0 {
            None
        } else {
            Some(self.strips[gap - 1].y_bottom.clone())
        };
        let lower = if gap == h {
            None
        } else {
            Some(self.strips[gap].y_top.clone())
        };
        (upper, lower)
    }

    /// Gap index containing the free ordinate `y`, if `y` is indeed free.
    pub fn gap_of_y(&self, y: &Rat) -> Option<usize> {
        if !self.is_free_y(y) {
            return None;
        }
        for (i, s) in self.strips.iter().enumerate() {
            if *y > s.y_top {
                return Some(i);
            }
        }
        Some(self.strips.len())
    }

    /// A strictly interior ordinate of a gap; unbounded gaps extend one unit
    /// past the outermost strip.
    pub fn gap_midline(&self, gap: usize) -> Rat {
        let (upper, lower) = self.gap_bounds(gap);
        match (upper, lower) {
            (Some(u), Some(l)) => (u + l) / rat_int(2),
            (Some(u), None) => u - rat_int(1),
            (None, Some(l)) => l + rat_int(1),
            (None, None) => Rat::zero(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexClass {
    /// All neighbors in one strip.
    White(usize),
    /// Neighbors in exactly the two consecutive strips `(i, i + 1)`.
    Gray(usize, usize),
}

/// Classification of every mobile vertex; fixed vertices are implicitly
/// black.
#[derive(Debug, Clone)]
pub struct VertexClassification {
    pub classes: BTreeMap<String, VertexClass>,
}

pub(crate) const DEGREE_ZERO_STRIP: usize = 0;

/// Classify mobiles as white/gray; rejects instances where a mobile spans
/// more than two or non-consecutive strips.
pub fn classify_vertices(
    g: &FMBigraph,
    strips: &StripSet,
) -> Result<VertexClassification, StripError> {
    strips.covers(g)?;
    // The strips must partition the fixed vertices into nonempty groups.
    for (i, s) in strips.strips().iter().enumerate() {
        if !g.fixed.iter().any(|f| s.contains_y(&f.pos.y)) {
            return Err(StripError::Instance(format!("strip {i} contains no fixed vertex")));
        }
    }
    let mut by_x: BTreeMap<&Rat, &String> = BTreeMap::new();
    for f in &g.fixed {
        if let Some(other) = by_x.insert(&f.pos.x, &f.id) {
            return Err(StripError::DuplicateX(other.clone(), f.id.clone()));
        }
    }
    let idx = g
        .indexed()
        .map_err(|e| StripError::Instance(e.to_string()))?;
    let mut classes = BTreeMap::new();
    for (mi, m) in g.mobile.iter().enumerate() {
        let mut touched: Vec<usize> = idx.mobile_neighbors[mi]
            .iter()
            .map(|&fi| strips.strip_of_y(&g.fixed[fi].pos.y).expect("covered"))
            .collect();
        touched.sort_unstable();
        touched.dedup();
        let class = match touched.as_slice() {
            [] => VertexClass::White(DEGREE_ZERO_STRIP),
            [i] => VertexClass::White(*i),
            [i, j] if *j == *i + 1 => VertexClass::Gray(*i, *j),
            _ => return Err(StripError::Infeasible(m.clone())),
        };
        classes.insert(m.clone(), class);
    }
    Ok(VertexClassification { classes })
}

/// The planarity-test graph built from an instance and a strip set: one
/// cycle per strip through its fixed vertices in x-order, the closing edge
/// subdivided by three dummies, and ladder edges between consecutive strips'
/// dummies.
#[derive(Debug, Clone)]
pub struct AugmentedStripGraph {
    pub graph: crate::planarity::SimpleGraph,
    /// Per strip, fixed vertex ids in left-to-right order.
    pub fixed_order: Vec<Vec<String>>,
    /// Per strip, the graph indices of the three dummy vertices.
    pub dummies: Vec<[usize; 3]>,
    /// Graph index of every original vertex.
    pub vertex_of: BTreeMap<String, usize>,
    /// Strip index of each graph vertex (fixed and dummies); None for
    /// mobiles.
    pub strip_of_vertex: Vec<Option<usize>>,
    mobile_base: usize,
    mobile_count: usize,
}

impl AugmentedStripGraph {
    pub fn is_mobile_vertex(&self, v: usize) -> bool {
        v >= self.mobile_base && v < self.mobile_base + self.mobile_count
    }
}

/// Build the augmented graph G'. `|V(G')| = n + 3h`.
pub fn build_augmented_graph(
    g: &FMBigraph,
    strips: &StripSet,
    cls: &VertexClassification,
) -> Result<AugmentedStripGraph, StripError> {
    let _ = cls;
    let idx = g
        .indexed()
        .map_err(|e| StripError::Instance(e.to_string()))?;
    let n_f = g.fixed.len();
    let n_m = g.mobile.len();
    let h = strips.len();
    let mut vertex_of = BTreeMap::new();
    for (fi, f) in g.fixed.iter().enumerate() {
        vertex_of.insert(f.id.clone(), fi);
    }
    for (mi, m) in g.mobile.iter().enumerate() {
        vertex_of.insert(m.clone(), n_f + mi);
    }
    let mut strip_of_vertex: Vec<Option<usize>> = vec![None; n_f + n_m + 3 * h];
    let mut fixed_order: Vec<Vec<String>> = vec![Vec::new(); h];
    let mut per_strip: Vec<Vec<(Rat, usize, String)>> = vec![Vec::new(); h];
    for (fi, f) in g.fixed.iter().enumerate() {
        let si = strips
            .strip_of_y(&f.pos.y)
            .ok_or_else(|| StripError::UncoveredFixed(f.id.clone()))?;
        strip_of_vertex[fi] = Some(si);
        per_strip[si].push((f.pos.x.clone(), fi, f.id.clone()));
    }
    let mut edges: Vec<(usize, usize)> = idx
        .edges
        .iter()
        .map(|&(fi, mi)| (fi, n_f + mi))
        .collect();
    let mut dummies = Vec::with_capacity(h);
    for (si, list) in per_strip.iter_mut().enumerate() {
        list.sort();
        fixed_order[si] = list.iter().map(|(_, _, id)| id.clone()).collect();
        let base = n_f + n_m + 3 * si;
        let (v1, v2, v3) = (base, base + 1, base + 2);
        strip_of_vertex[v1] = Some(si);
        strip_of_vertex[v2] = Some(si);
        strip_of_vertex[v3] = Some(si);
        dummies.push([v1, v2, v3]);
        if list.is_empty() {
            // A strip with no fixed vertices still contributes its dummy
            // triangle-free path so the ladder stays connected.
            edges.extend([(v1, v2), (v2, v3)]);
            continue;
        }
        let first = list[0].1;
        let last = list[list.len() - 1].1;
        for w in list.windows(2) {
            edges.push((w[0].1, w[1].1));
        }
        edges.extend([(first, v1), (v1, v2), (v2, v3), (v3, last)]);
    }
    for si in 1..h {
        for j in 0..3 {
            edges.push((dummies[si - 1][j], dummies[si][j]));
        }
    }
    let graph = crate::planarity::SimpleGraph::new(n_f + n_m + 3 * h, &edges)
        .map_err(|e| StripError::Instance(e.to_string()))?;
    Ok(AugmentedStripGraph {
        graph,
        fixed_order,
        dummies,
        vertex_of,
        strip_of_vertex,
        mobile_base: n_f,
        mobile_count: n_m,
    })
}

/// Gap indices: 0 is above the first strip, `i` lies between strips `i-1`
/// and `i`, `h` is below the last strip.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GapAssignment {
    pub gaps: BTreeMap<String, usize>,
}

/// Decide 1-bend drawability within the given strips; on success, read a
/// gap assignment for the mobiles off a planar embedding of the augmented
/// graph.
pub fn decide_strip(
    g: &FMBigraph,
    strips: &StripSet,
) -> Result<Option<(VertexClassification, GapAssignment)>, StripError> {
    let cls = match classify_vertices(g, strips) {
        Ok(c) => c,
        Err(StripError::Infeasible(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let aug = build_augmented_graph(g, strips, &cls)?;
    if !crate::planarity::is_planar(&aug.graph) {
        return Ok(None);
    }
    let emb = crate::planarity::planar_embedding(&aug.graph).expect("planar graph embeds");
    let idx = g
        .indexed()
        .map_err(|e| StripError::Instance(e.to_string()))?;
    let h = strips.len();

    // Faces of G'' (the augmented graph minus mobiles), as orbits over the
    // mobile-free rotation system.
    let mut skeleton_rotations: Vec<Vec<usize>> = Vec::with_capacity(aug.graph.vertex_count());
    for v in 0..aug.graph.vertex_count() {
        if aug.is_mobile_vertex(v) {
            skeleton_rotations.push(Vec::new());
        } else {
            skeleton_rotations.push(
                emb.rotation(v)
                    .iter()
                    .copied()
                    .filter(|w| !aug.is_mobile_vertex(*w))
                    .collect(),
            );
        }
    }
    let faces = crate::planarity::trace_faces(&skeleton_rotations);
    // Signature of a face: the set of strips its vertices belong to.
    let signatures: Vec<Vec<usize>> = faces
        .iter()
        .map(|face| {
            let mut sig: Vec<usize> = face
                .iter()
                .filter_map(|&(a, _)| aug.strip_of_vertex[a])
                .collect();
            sig.sort_unstable();
            sig.dedup();
            sig
        })
        .collect();
    // Face owning each directed skeleton edge.
    let mut face_of_edge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (fi, face) in faces.iter().enumerate() {
        for &e in face {
            face_of_edge.insert(e, fi);
        }
    }
    let gap_of_face = |fi: usize| -> usize {
        let sig = &signatures[fi];
        if sig.len() == 2 {
            // Between strips sig[0] and sig[0] + 1.
            sig[0] + 1
        } else if h == 1 {
            // A single cycle has two faces; pick deterministically by the
            // smallest directed edge of the orbit.
            let min_edge = faces[fi].iter().min().unwrap();
            let other: Vec<&Vec<(usize, usize)>> =
                faces.iter().filter(|f| !f.contains(min_edge)).collect();
            let min_other = other
                .iter()
                .flat_map(|f| f.iter())
                .min();
            match min_other {
                Some(mo) if mo < min_edge => 1,
                _ => 0,
            }
        } else if sig == &[0] {
            0
        } else {
            debug_assert_eq!(sig, &[h - 1]);
            h
        }
    };

    let mut gaps = GapAssignment::default();
    for (mi, m) in g.mobile.iter().enumerate() {
        if idx.mobile_neighbors[mi].is_empty() {
            gaps.gaps.insert(m.clone(), 0);
            continue;
        }
        let v = aug.vertex_of[m];
        let u = idx.mobile_neighbors[mi][0];
        let rot = emb.rotation(u);
        let at = rot.iter().position(|&w| w == v).expect("edge in rotation");
        let len = rot.len();
        // First non-mobile neighbor after v in the rotation at u: the corner
        // of G'' whose face hosts this mobile's star.
        let mut k = at;
        let b = loop {
            k = (k + 1) % len;
            if !aug.is_mobile_vertex(rot[k]) {
                break rot[k];
            }
        };
        let face = face_of_edge[&(u, b)];
        let gap = gap_of_face(face);
        // The gray forcing and white freedom invariants hold by topology.
        match &cls.classes[m] {
            VertexClass::Gray(i, _) => debug_assert_eq!(gap, i + 1),
            VertexClass::White(i) => debug_assert!(gap == *i || gap == *i + 1),
        }
        gaps.gaps.insert(m.clone(), gap);
    }
    Ok(Some((cls, gaps)))
}

/// Result of the strip-partition search.
#[derive(Debug, Clone)]
pub struct StripSearchHit {
    pub strips: StripSet,
    pub classification: VertexClassification,
    pub gaps: GapAssignment,
}

/// Enumerate all partitions of the fixed vertices into `h` contiguous
/// nonempty groups by descending y (equal ordinates stay together), decide
/// each candidate, and return the first feasible one in lexicographic split
/// order.
pub fn enumerate_strip_partitions(g: &FMBigraph, h: usize) -> Result<StripSearchHit, StripError> {
    enumerate_impl(g, h, true)
}

/// Sequential variant of [`enumerate_strip_partitions`].
pub fn enumerate_strip_partitions_seq(
    g: &FMBigraph,
    h: usize,
) -> Result<StripSearchHit, StripError> {
    enumerate_impl(g, h, false)
}

fn enumerate_impl(g: &FMBigraph, h: usize, parallel: bool) -> Result<StripSearchHit, StripError> {
    assert!(h >= 1);
    let mut levels: Vec<Rat> = g.fixed.iter().map(|f| f.pos.y.clone()).collect();
    levels.sort_by(|a, b| b.cmp(a));
    levels.dedup();
    if levels.len() < h {
        return Err(StripError::TooFewLevels(h));
    }
    // Split positions: h-1 cut points among the levels' d-1 boundaries.
    let cuts: Vec<Vec<usize>> = combinations(levels.len() - 1, h - 1);
    let candidates: Vec<StripSet> = cuts
        .iter()
        .map(|cut| strips_from_cut(&levels, cut))
        .collect();
    let hit = crate::par::find_first_index(parallel, candidates.len(), |i| {
        matches!(decide_strip(g, &candidates[i]), Ok(Some(_)))
    });
    match hit {
        None => Err(StripError::InfeasibleForAllPartitions(h)),
        Some(i) => {
            let strips = candidates[i].clone();
            let (classification, gaps) = decide_strip(g, &strips)?.expect("re-check feasible");
            Ok(StripSearchHit {
                strips,
                classification,
                gaps,
            })
        }
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Strip boundaries for one cut vector: outermost boundaries one unit past
/// the extreme ordinates, inner gaps centered on the midpoint covering the
/// middle third of the span between consecutive groups.
fn strips_from_cut(levels: &[Rat], cut: &[usize]) -> StripSet {
    let mut groups: Vec<(Rat, Rat)> = Vec::new(); // (y_high, y_low) per group
    let mut start = 0usize;
    let mut bounds: Vec<usize> = cut.to_vec();
    bounds.push(levels.len() - 1);
    for &last in &bounds {
        groups.push((levels[start].clone(), levels[last].clone()));
        start = last + 1;
    }
    let h = groups.len();
    let mut strips = Vec::with_capacity(h);
    for (i, (hi, lo)) in groups.iter().enumerate() {
        let y_top = if i == 0 {
            hi + rat_int(1)
        } else {
            let span = &groups[i - 1].1 - hi;
            hi + span / rat_int(3)
        };
        let y_bottom = if i == h - 1 {
            lo - rat_int(1)
        } else {
            let span = lo - &groups[i + 1].0;
            lo - span / rat_int(3)
        };
        strips.push(Strip { y_top, y_bottom });
    }
    StripSet::new(strips).expect("synthesized strips are disjoint with gaps")
}

/// Best-effort geometric realization of a positive decision. The drawing,
/// when returned, passes strip-mode validation; mixed gray/white gaps may
/// fail to realize, reported as `ConstructionIncomplete` (the decision and
/// gap assignment stand regardless).
pub fn construct_strip_drawing(
    g: &FMBigraph,
    strips: &StripSet,
    gaps: &GapAssignment,
) -> Result<crate::model::Drawing, StripError> {
    use crate::geometry::Point2;
    let idx = g
        .indexed()
        .map_err(|e| StripError::Instance(e.to_string()))?;
    let h = strips.len();
    let global_max_x = g
        .fixed
        .iter()
        .map(|f| f.pos.x.clone())
        .max()
        .unwrap_or_else(Rat::zero);

    for shrink in 0..4 {
        let mut drawing = crate::model::Drawing::default();
        for f in &g.fixed {
            drawing.positions.insert(f.id.clone(), f.pos.clone());
        }
        let mut ok = true;
        let mut spare = 0i64;
        'gaps: for gap in 0..=h {
            let (upper, lower) = strips.gap_bounds(gap);
            let lower = lower.unwrap_or_else(|| upper.clone().unwrap() - rat_int(4));
            let upper = upper.unwrap_or_else(|| &lower + rat_int(4));
            let height = &upper - &lower;

            // Population of this gap, with ports per wall.
            #[derive(Default)]
            struct Member {
                ups: Vec<(usize, Rat)>,
                downs: Vec<(usize, Rat)>,
            }
            let mut members: BTreeMap<String, Member> = BTreeMap::new();
            for (mi, m) in g.mobile.iter().enumerate() {
                if gaps.gaps.get(m) != Some(&gap) {
                    continue;
                }
                let mut member = Member::default();
                for &fi in &idx.mobile_neighbors[mi] {
                    let si = strips
                        .strip_of_y(&g.fixed[fi].pos.y)
                        .ok_or_else(|| StripError::UncoveredFixed(g.fixed[fi].id.clone()))?;
                    if si + 1 == gap {
                        member.ups.push((fi, g.fixed[fi].pos.x.clone()));
                    } else if si == gap {
                        member.downs.push((fi, g.fixed[fi].pos.x.clone()));
                    } else {
                        // Assignment inconsistent with the strips.
                        ok = false;
                        continue 'gaps;
                    }
                }
                members.insert(m.clone(), member);
            }

            // Degree-0 mobiles parked beyond everything.
            for (m, member) in &members {
                if member.ups.is_empty() && member.downs.is_empty() {
                    let y = &lower + &height / rat_int(2);
                    let x = &global_max_x + rat_int(2 + spare);
                    spare += 1;
                    drawing.positions.insert(m.clone(), Point2::new(x, y));
                }
            }

            // Grays become pillars spanning the gap.
            let grays: Vec<(&String, &Member)> = members
                .iter()
                .filter(|(_, mm)| !mm.ups.is_empty() && !mm.downs.is_empty())
                .collect();
            let k = grays.len();
            for (j, (m, mm)) in grays.iter().enumerate() {
                let mut xs: Vec<Rat> = mm.ups.iter().chain(mm.downs.iter()).map(|(_, x)| x.clone()).collect();
                xs.sort();
                let x = (&xs[0] + &xs[xs.len() - 1]) / rat_int(2);
                let y = &lower + &height * rat_int((j + 1) as i64) / rat_int((k + 1) as i64);
                drawing.positions.insert((*m).clone(), Point2::new(x, y));
                for (fi, px) in mm.ups.iter() {
                    drawing.bends.insert(
                        (g.fixed[*fi].id.clone(), (*m).clone()),
                        vec![Point2::new(px.clone(), upper.clone())],
                    );
                }
                for (fi, px) in mm.downs.iter() {
                    drawing.bends.insert(
                        (g.fixed[*fi].id.clone(), (*m).clone()),
                        vec![Point2::new(px.clone(), lower.clone())],
                    );
                }
            }

            // Whites hug their wall; the budget shrinks on retries so the
            // tents clear the gray pillars when possible.
            let budget = &height / rat_int(3 * 4i64.pow(shrink));
            for &down in &[true, false] {
                let mut items: Vec<(String, Vec<Rat>)> = Vec::new();
                for (m, mm) in &members {
                    let ports = if down { &mm.downs } else { &mm.ups };
                    let other = if down { &mm.ups } else { &mm.downs };
                    if ports.is_empty() || !other.is_empty() {
                        continue;
                    }
                    let mut feet: Vec<Rat> = ports.iter().map(|(_, x)| x.clone()).collect();
                    feet.sort();
                    feet.dedup();
                    items.push((m.clone(), feet));
                }
                if items.is_empty() {
                    continue;
                }
                let stars = match layout_side(&items, &budget) {
                    Ok(s) => s,
                    Err(_) => {
                        ok = false;
                        continue 'gaps;
                    }
                };
                for star in stars {
                    let y = if down {
                        &lower + &star.apex.y
                    } else {
                        &upper - &star.apex.y
                    };
                    drawing
                        .positions
                        .insert(star.mobile.clone(), Point2::new(star.apex.x.clone(), y));
                }
            }
            // Bends for the whites.
            for (m, mm) in &members {
                let gray = !mm.ups.is_empty() && !mm.downs.is_empty();
                if gray {
                    continue;
                }
                for (fi, px) in mm.ups.iter() {
                    drawing.bends.insert(
                        (g.fixed[*fi].id.clone(), m.clone()),
                        vec![Point2::new(px.clone(), upper.clone())],
                    );
                }
                for (fi, px) in mm.downs.iter() {
                    drawing.bends.insert(
                        (g.fixed[*fi].id.clone(), m.clone()),
                        vec![Point2::new(px.clone(), lower.clone())],
                    );
                }
            }
        }
        if !ok {
            continue;
        }
        // Degenerate verticals: a fixed vertex sitting exactly on its strip
        // boundary makes the bend coincide with it; drop the bend then.
        let mut cleaned = crate::model::Drawing::default();
        cleaned.positions = drawing.positions.clone();
        for (edge, bends) in &drawing.bends {
            let upos = &drawing.positions[&edge.0];
            if bends.len() == 1 && bends[0] == *upos {
                continue;
            }
            cleaned.bends.insert(edge.clone(), bends.clone());
        }
        let report = crate::model::validate_drawing(
            g,
            &cleaned,
            crate::model::ValidationMode::Strip(strips),
        )
        .map_err(|e| StripError::Instance(e.to_string()))?;
        if report.planar {
            return Ok(cleaned);
        }
    }
    Err(StripError::ConstructionIncomplete)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{rat, Point2};
    use crate::model::{validate_drawing, FMBigraph, ValidationMode};

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn strip(top: i64, bottom: i64) -> Strip {
        Strip {
            y_top: rat_int(top),
            y_bottom: rat_int(bottom),
        }
    }

    fn instance(fixed: &[(&str, i64, i64)], mobiles: &[(&str, &[&str])]) -> FMBigraph {
        FMBigraph::new(
            fixed
                .iter()
                .map(|(id, x, y)| (id.to_string(), pt(*x, *y)))
                .collect(),
            mobiles.iter().map(|(m, _)| m.to_string()).collect(),
            mobiles
                .iter()
                .flat_map(|(m, ns)| ns.iter().map(move |f| (f.to_string(), m.to_string())))
                .collect(),
        )
    }

    #[test]
    fn classification_examples() {
        let g = instance(
            &[("a", 0, 0), ("b", 2, 0)],
            &[("m", &["a", "b"])],
        );
        let strips = StripSet::new(vec![strip(1, -1)]).unwrap();
        let cls = classify_vertices(&g, &strips).unwrap();
        assert_eq!(cls.classes["m"], VertexClass::White(0));

        let g = instance(
            &[("a", 0, 4), ("b", 1, 0)],
            &[("m", &["a", "b"])],
        );
        let strips = StripSet::new(vec![strip(5, 3), strip(1, -1)]).unwrap();
        let cls = classify_vertices(&g, &strips).unwrap();
        assert_eq!(cls.classes["m"], VertexClass::Gray(0, 1));

        let g = instance(
            &[("a", 0, 8), ("b", 1, 4), ("c", 2, 0)],
            &[("m", &["a", "c"])],
        );
        let strips =
            StripSet::new(vec![strip(9, 7), strip(5, 3), strip(1, -1)]).unwrap();
        assert!(matches!(
            classify_vertices(&g, &strips),
            Err(StripError::Infeasible(m)) if m == "m"
        ));
        // decide treats the immediate rejection as a negative instance.
        assert!(decide_strip(&g, &strips).unwrap().is_none());
    }

    #[test]
    fn duplicate_x_rejected() {
        let g = instance(&[("a", 0, 0), ("b", 0, 1)], &[]);
        let strips = StripSet::new(vec![strip(2, -1)]).unwrap();
        assert!(matches!(
            classify_vertices(&g, &strips),
            Err(StripError::DuplicateX(_, _))
        ));
    }

    #[test]
    fn augmented_graph_counts() {
        // h = 1, three fixed, two mobiles: 3 + 3 + 2 = 8 vertices; the strip
        // cycle contributes 2 + 4 = 6 edges.
        let g = instance(
            &[("a", 0, 0), ("b", 1, 0), ("c", 2, 0)],
            &[("m1", &["a"]), ("m2", &["c"])],
        );
        let strips = StripSet::new(vec![strip(1, -1)]).unwrap();
        let cls = classify_vertices(&g, &strips).unwrap();
        let aug = build_augmented_graph(&g, &strips, &cls).unwrap();
        assert_eq!(aug.graph.vertex_count(), 8);
        assert_eq!(aug.graph.edge_count(), 6 + 2);

        // h = 2: exactly three ladder edges between the dummy triples.
        let g2 = instance(&[("a", 0, 4), ("b", 1, 0)], &[]);
        let strips2 = StripSet::new(vec![strip(5, 3), strip(1, -1)]).unwrap();
        let cls2 = classify_vertices(&g2, &strips2).unwrap();
        let aug2 = build_augmented_graph(&g2, &strips2, &cls2).unwrap();
        // Each single-vertex strip forms the 4-cycle u-v1-v2-v3-u.
        assert_eq!(aug2.graph.vertex_count(), 2 + 6);
        assert_eq!(aug2.graph.edge_count(), 4 + 4 + 3);
    }

    #[test]
    fn single_strip_k23_pattern() {
        let g = instance(
            &[("a", 0, 0), ("b", 1, 0), ("c", 2, 0)],
            &[("m1", &["a", "b", "c"]), ("m2", &["a", "b", "c"])],
        );
        let strips = StripSet::new(vec![strip(1, -1)]).unwrap();
        let hit = decide_strip(&g, &strips).unwrap();
        assert!(hit.is_some());
        let (_, gaps) = hit.unwrap();
        // The two mobiles must take opposite sides of the single strip.
        assert_ne!(gaps.gaps["m1"], gaps.gaps["m2"]);

        let g3 = instance(
            &[("a", 0, 0), ("b", 1, 0), ("c", 2, 0)],
            &[
                ("m1", &["a", "b", "c"]),
                ("m2", &["a", "b", "c"]),
                ("m3", &["a", "b", "c"]),
            ],
        );
        assert!(decide_strip(&g3, &strips).unwrap().is_none());
    }

    #[test]
    fn gray_only_nested_instance() {
        let g = instance(
            &[("a", 0, 4), ("b", 1, 4), ("c", 2, 0), ("d", 3, 0)],
            &[("left", &["a", "c"]), ("right", &["b", "d"])],
        );
        let strips = StripSet::new(vec![strip(5, 3), strip(1, -1)]).unwrap();
        let hit = decide_strip(&g, &strips).unwrap().expect("feasible");
        let (cls, gaps) = hit;
        assert_eq!(cls.classes["left"], VertexClass::Gray(0, 1));
        assert_eq!(gaps.gaps["left"], 1);
        assert_eq!(gaps.gaps["right"], 1);
    }

    #[test]
    fn split_can_make_feasible() {
        // Three mobiles whose one-strip interval conflicts form an odd
        // cycle; after splitting the fixed vertices into two strips every
        // conflict disappears.
        let g = instance(
            &[
                ("f1", 1, 2),
                ("f2", 2, 2),
                ("f3", 3, 2),
                ("f4", 4, 0),
                ("f5", 5, 0),
            ],
            &[
                ("ma", &["f1", "f4"]),
                ("mb", &["f2", "f4", "f5"]),
                ("mc", &["f3", "f5"]),
            ],
        );
        let one = StripSet::new(vec![strip(3, -1)]).unwrap();
        assert!(decide_strip(&g, &one).unwrap().is_none());

        let two = StripSet::new(vec![
            Strip { y_top: rat_int(3), y_bottom: rat(3, 2) },
            Strip { y_top: rat(1, 2), y_bottom: rat_int(-1) },
        ])
        .unwrap();
        assert!(decide_strip(&g, &two).unwrap().is_some());

        // The partition search finds a feasible 2-split.
        let hit = enumerate_strip_partitions(&g, 2).unwrap();
        assert_eq!(hit.strips.len(), 2);
        assert!(matches!(
            enumerate_strip_partitions(&g, 1),
            Err(StripError::InfeasibleForAllPartitions(1))
        ));
    }

    #[test]
    fn split_can_make_infeasible() {
        // Nested one-strip instance that becomes an interleaved pair of
        // grays after the split.
        let g = instance(
            &[("f1", 0, 2), ("f2", 1, 2), ("f3", 2, 0), ("f4", 3, 0)],
            &[("ma", &["f1", "f4"]), ("mb", &["f2", "f3"])],
        );
        let one = StripSet::new(vec![strip(3, -1)]).unwrap();
        assert!(decide_strip(&g, &one).unwrap().is_some());

        let two = StripSet::new(vec![
            Strip { y_top: rat_int(3), y_bottom: rat(3, 2) },
            Strip { y_top: rat(1, 2), y_bottom: rat_int(-1) },
        ])
        .unwrap();
        assert!(decide_strip(&g, &two).unwrap().is_none());
    }

    #[test]
    fn enumerate_single_strip_is_bounding() {
        let g = instance(&[("a", 0, 0), ("b", 1, 5)], &[]);
        let hit = enumerate_strip_partitions(&g, 1).unwrap();
        assert_eq!(hit.strips.len(), 1);
        assert_eq!(hit.strips.strip(0).y_top, rat_int(6));
        assert_eq!(hit.strips.strip(0).y_bottom, rat_int(-1));
        assert!(matches!(
            enumerate_strip_partitions(&g, 3),
            Err(StripError::TooFewLevels(3))
        ));
    }

    #[test]
    fn construct_simple_white() {
        let g = instance(
            &[("a", 0, 0), ("b", 2, 0)],
            &[("m", &["a", "b"])],
        );
        let strips = StripSet::new(vec![strip(1, -1)]).unwrap();
        let (_, gaps) = decide_strip(&g, &strips).unwrap().unwrap();
        let d = construct_strip_drawing(&g, &strips, &gaps).unwrap();
        let rep = validate_drawing(&g, &d, ValidationMode::Strip(&strips)).unwrap();
        assert!(rep.planar, "{:?}", rep.violations);
        // Each edge has exactly one bend at the neighbor's x.
        let ba = &d.bends[&("a".to_string(), "m".to_string())];
        assert_eq!(ba.len(), 1);
        assert_eq!(ba[0].x, rat_int(0));
        let bb = &d.bends[&("b".to_string(), "m".to_string())];
        assert_eq!(bb[0].x, rat_int(2));
    }

    #[test]
    fn construct_gray_between_strips() {
        let g = instance(
            &[("a", 0, 4), ("b", 1, 0)],
            &[("m", &["a", "b"])],
        );
        let strips = StripSet::new(vec![strip(5, 3), strip(1, -1)]).unwrap();
        let (_, gaps) = decide_strip(&g, &strips).unwrap().unwrap();
        assert_eq!(gaps.gaps["m"], 1);
        let d = construct_strip_drawing(&g, &strips, &gaps).unwrap();
        let rep = validate_drawing(&g, &d, ValidationMode::Strip(&strips)).unwrap();
        assert!(rep.planar, "{:?}", rep.violations);
        // One bend on each facing boundary.
        assert_eq!(d.bends[&("a".to_string(), "m".to_string())][0].y, rat_int(3));
        assert_eq!(d.bends[&("b".to_string(), "m".to_string())][0].y, rat_int(1));
    }

    #[test]
    fn construct_white_only_gaps() {
        let g = instance(
            &[
                ("a", 0, 4),
                ("b", 2, 4),
                ("c", 4, 4),
                ("d", 1, 0),
                ("e", 3, 0),
            ],
            &[
                ("m1", &["a", "b"]),
                ("m2", &["b", "c"]),
                ("m3", &["a", "c"]),
                ("m4", &["d", "e"]),
                ("m5", &["d"]),
            ],
        );
        let strips = StripSet::new(vec![strip(5, 3), strip(1, -1)]).unwrap();
        let (_, gaps) = decide_strip(&g, &strips).unwrap().expect("feasible");
        let d = construct_strip_drawing(&g, &strips, &gaps).unwrap();
        let rep = validate_drawing(&g, &d, ValidationMode::Strip(&strips)).unwrap();
        assert!(rep.planar, "{:?}", rep.violations);
    }

    #[test]
    fn shared_port_instance_constructs() {
        // Two grays sharing their lower port plus a white: the feasible side
        // of the split phenomenon, realized geometrically.
        let g = instance(
            &[
                ("f1", 1, 2),
                ("f2", 2, 2),
                ("f3", 3, 2),
                ("f4", 4, 0),
                ("f5", 5, 0),
            ],
            &[
                ("ma", &["f1", "f4"]),
                ("mb", &["f2", "f4", "f5"]),
                ("mc", &["f3", "f5"]),
            ],
        );
        let two = StripSet::new(vec![
            Strip { y_top: rat_int(3), y_bottom: rat(3, 2) },
            Strip { y_top: rat(1, 2), y_bottom: rat_int(-1) },
        ])
        .unwrap();
        let (_, gaps) = decide_strip(&g, &two).unwrap().expect("feasible");
        match construct_strip_drawing(&g, &two, &gaps) {
            Ok(d) => {
                let rep = validate_drawing(&g, &d, ValidationMode::Strip(&two)).unwrap();
                assert!(rep.planar, "{:?}", rep.violations);
            }
            Err(StripError::ConstructionIncomplete) => {
                // Mixed gray/white gaps are best-effort.
            }
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }
}
