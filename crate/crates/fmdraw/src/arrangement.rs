//! The line arrangement spanned by all pairs of fixed points, and the
//! decomposition of a mobile vertex's convex hull into arrangement cells.
//!
//! Cells are computed per hull by sequential convex clipping; only cells that
//! lie inside some hull ever matter to the solvers. Each cell is identified
//! by its vector of line-side signs, which is unique within a hull.

use crate::geometry::{clip_polygon_by_line, rat, ConvexPolygon, Point2, Rat};
use crate::model::FMBigraph;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("an arrangement needs at least two fixed vertices, got {0}")]
    TooFewFixed(usize),
    #[error("hull of mobile vertex is degenerate (a point or a segment)")]
    DegenerateHull,
}

/// A line in canonical form: primitive integer coefficients `(a, b, c)` of
/// `a x + b y + c = 0` with positive leading coefficient, plus two defining
/// points for use in clipping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub p: Point2,
    pub q: Point2,
    coeffs: (BigInt, BigInt, BigInt),
}

impl Line {
    pub fn through(p: &Point2, q: &Point2) -> Line {
        assert!(p != q, "line through two distinct points");
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = -(&a * &p.x + &b * &p.y);
        // Clear denominators.
        let lcm = a
            .denom()
            .lcm(b.denom())
            .lcm(c.denom());
        let mut ai = a.numer() * (&lcm / a.denom());
        let mut bi = b.numer() * (&lcm / b.denom());
        let mut ci = c.numer() * (&lcm / c.denom());
        // Divide out the gcd and normalize the sign of the first nonzero.
        let g = ai.gcd(&bi).gcd(&ci);
        if !g.is_zero() {
            ai /= &g;
            bi /= &g;
            ci /= &g;
        }
        let lead_negative = if !ai.is_zero() {
            ai.is_negative()
        } else {
            bi.is_negative()
        };
        if lead_negative {
            ai = -ai;
            bi = -bi;
            ci = -ci;
        }
        Line {
            p: p.clone(),
            q: q.clone(),
            coeffs: (ai, bi, ci),
        }
    }

    pub fn coefficients(&self) -> &(BigInt, BigInt, BigInt) {
        &self.coeffs
    }

    /// Sign of `a x + b y + c` at `r`: -1, 0, or +1.
    pub fn side(&self, r: &Point2) -> i8 {
        let (a, b, c) = &self.coeffs;
        let v = Rat::from(a.clone()) * &r.x + Rat::from(b.clone()) * &r.y + Rat::from(c.clone());
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }
}

/// The deduplicated set of lines through all pairs of fixed points, in a
/// canonical order.
#[derive(Debug, Clone)]
pub struct Arrangement {
    lines: Vec<Line>,
}

impl Arrangement {
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line_count(&self) -> usize {
        self.lines.len()
    }
}

/// Build the arrangement of `g`'s fixed points. One canonical line per
/// distinct point pair; collinear pairs collapse into a single line.
pub fn build_arrangement(g: &FMBigraph) -> Result<Arrangement, ArrangementError> {
    let mut pts: Vec<Point2> = g.fixed.iter().map(|f| f.pos.clone()).collect();
    pts.sort();
    pts.dedup();
    if pts.len() < 2 {
        return Err(ArrangementError::TooFewFixed(pts.len()));
    }
    let mut lines: Vec<Line> = Vec::new();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let line = Line::through(&pts[i], &pts[j]);
            if !lines.iter().any(|l| l.coeffs == line.coeffs) {
                lines.push(line);
            }
        }
    }
    lines.sort_by(|l, m| l.coeffs.cmp(&m.coeffs));
    Ok(Arrangement { lines })
}

/// One arrangement cell restricted to a hull.
#[derive(Debug, Clone)]
pub struct Cell {
    /// Sign-vector identifier over the arrangement's canonical line order.
    pub id: String,
    pub polygon: ConvexPolygon,
    /// Strictly interior representative (the vertex centroid).
    pub representative: Point2,
    pub signs: Vec<i8>,
}

impl Cell {
    /// A strictly interior representative specific to one cluster: the
    /// centroid pulled towards the cell's first polygon vertex by
    /// `1 / (3 + cluster_index)`. Distinct clusters sharing a geometric cell
    /// thereby receive distinct points.
    pub fn cluster_representative(&self, cluster_index: usize) -> Point2 {
        let t = rat(1, 3 + cluster_index as i64);
        self.polygon.centroid().lerp(&self.polygon.vertices()[0], &t)
    }
}

/// The cells of the arrangement inside one mobile vertex's hull.
#[derive(Debug, Clone)]
pub struct HullCells {
    pub mobile_id: String,
    pub hull: ConvexPolygon,
    pub cells: Vec<Cell>,
}

fn sign_char(s: i8) -> char {
    match s {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

/// Decompose `hull` into the arrangement cells intersecting it, with a
/// strictly interior representative per cell.
pub fn decompose_hull(
    arr: &Arrangement,
    hull: &ConvexPolygon,
    mobile_id: &str,
) -> HullCells {
    let mut pieces: Vec<ConvexPolygon> = vec![hull.clone()];
    for line in &arr.lines {
        let mut next = Vec::with_capacity(pieces.len() + 1);
        for piece in &pieces {
            let (left, right) = clip_polygon_by_line(piece, &line.p, &line.q);
            next.extend(left);
            next.extend(right);
        }
        pieces = next;
    }
    let mut cells: Vec<Cell> = pieces
        .into_iter()
        .map(|polygon| {
            let representative = polygon.centroid();
            let signs: Vec<i8> = arr.lines.iter().map(|l| l.side(&representative)).collect();
            debug_assert!(
                signs.iter().all(|&s| s != 0),
                "cell representative lies on an arrangement line"
            );
            let id: String = signs.iter().map(|&s| sign_char(s)).collect();
            Cell {
                id,
                polygon,
                representative,
                signs,
            }
        })
        .collect();
    cells.sort_by(|a, b| a.id.cmp(&b.id));
    HullCells {
        mobile_id: mobile_id.to_string(),
        hull: hull.clone(),
        cells,
    }
}

/// The classical bound on the number of cells a hull can meet:
/// `1 + L + L(L-1)/2` for `L` lines.
pub fn cell_count_bound_check(arr: &Arrangement, cells: &HullCells) -> bool {
    let l = arr.line_count();
    cells.cells.len() <= 1 + l + l * (l - 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull;
    use crate::geometry::Point2;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    fn instance(fixed: &[(i64, i64)]) -> FMBigraph {
        FMBigraph::new(
            fixed
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| (format!("f{i}"), pt(x, y)))
                .collect(),
            vec![],
            vec![],
        )
    }

    #[test]
    fn line_counts() {
        let g = instance(&[(0, 0), (6, 0), (0, 6)]);
        assert_eq!(build_arrangement(&g).unwrap().line_count(), 3);

        let g = instance(&[(0, 0), (1, 0), (2, 0)]);
        assert_eq!(build_arrangement(&g).unwrap().line_count(), 1);

        // Five points in general position: C(5,2) = 10 lines.
        let g = instance(&[(0, 0), (7, 1), (3, 9), (-4, 5), (2, -6)]);
        assert_eq!(build_arrangement(&g).unwrap().line_count(), 10);
    }

    #[test]
    fn too_few_fixed() {
        let g = instance(&[(0, 0)]);
        assert!(matches!(
            build_arrangement(&g),
            Err(ArrangementError::TooFewFixed(1))
        ));
    }

    #[test]
    fn triangle_hull_single_cell() {
        let g = instance(&[(0, 0), (6, 0), (0, 6)]);
        let arr = build_arrangement(&g).unwrap();
        let hull = convex_hull(&[pt(0, 0), pt(6, 0), pt(0, 6)]);
        let cells = decompose_hull(&arr, hull.polygon().unwrap(), "m");
        assert_eq!(cells.cells.len(), 1);
        assert!(cell_count_bound_check(&arr, &cells));
    }

    #[test]
    fn quad_hull_four_cells() {
        // Four points in convex position: 6 lines, the two diagonals cross
        // the hull interior and cut it into 4 cells.
        let g = instance(&[(0, 0), (4, 0), (4, 4), (0, 4)]);
        let arr = build_arrangement(&g).unwrap();
        assert_eq!(arr.line_count(), 6);
        let hull = convex_hull(&[pt(0, 0), pt(4, 0), pt(4, 4), pt(0, 4)]);
        let hull = hull.polygon().unwrap().clone();
        let cells = decompose_hull(&arr, &hull, "m");
        assert_eq!(cells.cells.len(), 4);

        // Exact areas of the cells add up to the hull area.
        let total: Rat = cells.cells.iter().map(|c| c.polygon.area2()).sum();
        assert_eq!(total, hull.area2());

        // Sign vectors are zero-free and pairwise distinct.
        for c in &cells.cells {
            assert!(c.signs.iter().all(|&s| s != 0));
        }
        for i in 0..cells.cells.len() {
            for j in (i + 1)..cells.cells.len() {
                assert_ne!(cells.cells[i].id, cells.cells[j].id);
            }
        }
    }

    #[test]
    fn representatives_avoid_all_lines() {
        let g = instance(&[(0, 0), (5, 1), (2, 7), (-3, 4)]);
        let arr = build_arrangement(&g).unwrap();
        let hull = convex_hull(&[pt(0, 0), pt(5, 1), pt(2, 7), pt(-3, 4)]);
        let cells = decompose_hull(&arr, hull.polygon().unwrap(), "m");
        assert!(cell_count_bound_check(&arr, &cells));
        for c in &cells.cells {
            for line in arr.lines() {
                assert_ne!(line.side(&c.representative), 0);
            }
            for k in 0..3 {
                let alt = c.cluster_representative(k);
                assert_eq!(
                    arr.lines().iter().map(|l| l.side(&alt)).collect::<Vec<_>>(),
                    c.signs
                );
            }
        }
    }

    #[test]
    fn formula_bound_small_cases() {
        // L = 3 generic lines can split a big region into at most 7 cells;
        // L = 1 into at most 2.
        assert_eq!(1 + 3 + 3 * 2 / 2, 7);
        assert_eq!(1 + 1, 2);
    }
}
