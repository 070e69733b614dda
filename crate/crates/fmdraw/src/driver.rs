//! End-to-end pipeline for the convex-hull 0-bend problem: hulls, line
//! arrangement, intersection graph, cell graph, per-component skeleton
//! solving, and the skeleton-to-drawing conversion. The guess-and-check
//! counterpart enumerates cell placements directly and asks the drawing
//! validator, sharing nothing with the skeleton machinery but the cell
//! decomposition itself.

use crate::arrangement::build_arrangement;
use crate::cellgraph::{
    build_cell_graph, build_intersection_graph, check_skeleton, drawing_from_skeleton, CellGraph,
    CellGraphError, IntersectionGraph, Skeleton,
};
use crate::geometry::Point2;
use crate::model::{validate_drawing, Drawing, FMBigraph, ValidationMode};
use crate::par;
use crate::skeleton::{
    classify_intersection_graph, restrict_to_component, solve_skeleton, GxClass, SkeletonError,
};
use std::collections::BTreeMap;
use thiserror::Error;

pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error(transparent)]
    Cells(#[from] CellGraphError),
    #[error("arrangement error: {0}")]
    Arrangement(String),
    #[error("skeleton solver error: {0}")]
    Skeleton(String),
    #[error("placement enumeration would exceed the cap of {0}")]
    CapExceeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullVerdict {
    Drawable,
    NotDrawable,
    /// The intersection graph falls outside the cactus family and the
    /// brute-force fallback exceeds the cap.
    Unsupported,
}

/// Shape and size diagnostics of the solved instance.
#[derive(Debug, Clone, Default)]
pub struct HullDiagnostics {
    /// Connected components of the intersection graph with their classes.
    pub components: Vec<(Vec<String>, GxClass)>,
    pub cluster_sizes: BTreeMap<String, usize>,
}

#[derive(Debug, Clone)]
pub struct ConvexHullSolution {
    pub verdict: HullVerdict,
    pub skeleton: Option<Skeleton>,
    pub drawing: Option<Drawing>,
    pub diagnostics: HullDiagnostics,
}

fn diagnostics(cg: &CellGraph, gx: &IntersectionGraph) -> HullDiagnostics {
    HullDiagnostics {
        components: gx
            .components()
            .into_iter()
            .map(|comp| {
                let (_, sub) = restrict_to_component(cg, gx, &comp);
                let class = classify_intersection_graph(&sub);
                (comp, class)
            })
            .collect(),
        cluster_sizes: cg
            .clusters
            .iter()
            .map(|(k, v)| (k.clone(), v.len()))
            .collect(),
    }
}

/// Decide and construct via the cell-graph skeleton machinery.
pub fn solve_convex_hull(g: &FMBigraph, cap: u64) -> Result<ConvexHullSolution, DriverError> {
    let arr = build_arrangement(g).map_err(|e| DriverError::Arrangement(e.to_string()))?;
    let gx = build_intersection_graph(g)?;
    let cg = build_cell_graph(g, &arr)?;
    let diagnostics = diagnostics(&cg, &gx);
    match solve_skeleton(&cg, &gx, cap) {
        Ok(Some(skeleton)) => {
            debug_assert!(check_skeleton(&cg, &gx, &skeleton).unwrap_or(false));
            let drawing = drawing_from_skeleton(g, &cg, &skeleton)?;
            debug_assert!(
                validate_drawing(g, &drawing, ValidationMode::ConvexHull)
                    .map(|r| r.planar)
                    .unwrap_or(false),
                "skeleton drawing must validate"
            );
            Ok(ConvexHullSolution {
                verdict: HullVerdict::Drawable,
                skeleton: Some(skeleton),
                drawing: Some(drawing),
                diagnostics,
            })
        }
        Ok(None) => Ok(ConvexHullSolution {
            verdict: HullVerdict::NotDrawable,
            skeleton: None,
            drawing: None,
            diagnostics,
        }),
        Err(SkeletonError::Unsupported) => Ok(ConvexHullSolution {
            verdict: HullVerdict::Unsupported,
            skeleton: None,
            drawing: None,
            diagnostics,
        }),
        Err(e) => Err(DriverError::Skeleton(e.to_string())),
    }
}

/// Guess-and-check: enumerate one-cell-per-cluster placements at the cells'
/// representatives in lexicographic order and ask the validator; the first
/// planar placement wins.
pub fn brute_force_convex_hull(
    g: &FMBigraph,
    cap: u64,
) -> Result<(HullVerdict, Option<Drawing>), DriverError> {
    brute_force_impl(g, cap, true)
}

/// Sequential variant of [`brute_force_convex_hull`].
pub fn brute_force_convex_hull_seq(
    g: &FMBigraph,
    cap: u64,
) -> Result<(HullVerdict, Option<Drawing>), DriverError> {
    brute_force_impl(g, cap, false)
}

fn brute_force_impl(
    g: &FMBigraph,
    cap: u64,
    parallel: bool,
) -> Result<(HullVerdict, Option<Drawing>), DriverError> {
    let arr = build_arrangement(g).map_err(|e| DriverError::Arrangement(e.to_string()))?;
    let hulls = crate::cellgraph::mobile_hulls(g)?;
    let mut mobiles: Vec<String> = g.mobile.clone();
    mobiles.sort();
    // Identical cell decomposition and per-cluster representatives as the
    // skeleton route, so both enumerations range over the same placements.
    let mut cells_per_mobile: Vec<Vec<Point2>> = Vec::with_capacity(mobiles.len());
    for (cluster_index, m) in mobiles.iter().enumerate() {
        let decomposed = crate::arrangement::decompose_hull(&arr, &hulls[m], m);
        let reps: Vec<Point2> = decomposed
            .cells
            .iter()
            .map(|c| c.cluster_representative(cluster_index))
            .collect();
        cells_per_mobile.push(reps);
    }
    let mut total: u128 = 1;
    for reps in &cells_per_mobile {
        total = total.saturating_mul(reps.len().max(1) as u128);
        if total > cap as u128 {
            return Err(DriverError::CapExceeded(cap));
        }
    }
    let radixes: Vec<usize> = cells_per_mobile.iter().map(|r| r.len()).collect();
    if radixes.iter().any(|&r| r == 0) {
        return Ok((HullVerdict::NotDrawable, None));
    }
    let base_positions: BTreeMap<String, Point2> = g
        .fixed
        .iter()
        .map(|f| (f.id.clone(), f.pos.clone()))
        .collect();
    let try_code = |code: usize| -> Option<Drawing> {
        let mut d = Drawing::default();
        d.positions = base_positions.clone();
        let mut c = code;
        for i in (0..mobiles.len()).rev() {
            let pick = c % radixes[i];
            c /= radixes[i];
            d.positions
                .insert(mobiles[i].clone(), cells_per_mobile[i][pick].clone());
        }
        match validate_drawing(g, &d, ValidationMode::ConvexHull) {
            Ok(rep) if rep.planar => Some(d),
            _ => None,
        }
    };
    let hit = par::find_first_index(parallel, total as usize, |code| try_code(code).is_some());
    Ok(match hit {
        Some(code) => (HullVerdict::Drawable, try_code(code)),
        None => (HullVerdict::NotDrawable, None),
    })
}
