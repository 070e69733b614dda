//! Exact rational geometric kernel: orientation and intersection predicates,
//! convex hulls, convex polygon clipping.
//!
//! Every coordinate is an arbitrary-precision rational, so all predicates are
//! decided exactly; there are no epsilon comparisons anywhere in this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact scalar used throughout the crate.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A point of the plane with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl fmt::Debug for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(rat_int(x), rat_int(y))
    }

    /// Componentwise `self + t * (other - self)`.
    pub fn lerp(&self, other: &Point2, t: &Rat) -> Point2 {
        Point2 {
            x: &self.x + t * (&other.x - &self.x),
            y: &self.y + t * (&other.y - &self.y),
        }
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        self.lerp(other, &rat(1, 2))
    }
}

/// Sign of the turn `a -> b -> c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

/// Twice the signed area of the triangle `a b c`.
pub fn cross(a: &Point2, b: &Point2, c: &Point2) -> Rat {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Exact sign of the 2x2 determinant of `(b - a, c - a)`.
pub fn orientation(a: &Point2, b: &Point2, c: &Point2) -> Orientation {
    let d = cross(a, b, c);
    if d.is_zero() {
        Orientation::Collinear
    } else if d.is_positive() {
        Orientation::Left
    } else {
        Orientation::Right
    }
}

/// A closed segment with distinct endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    /// Panics if the endpoints coincide; degenerate segments are never valid
    /// inputs to the intersection predicates.
    pub fn new(a: Point2, b: Point2) -> Self {
        assert!(a != b, "segment endpoints must be distinct");
        Segment { a, b }
    }

    /// True if `p` lies on the closed segment. Assumes `p` collinear with it.
    fn contains_collinear(&self, p: &Point2) -> bool {
        in_box(&self.a, &self.b, p)
    }
}

fn in_box(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
}

/// Exact classification of how two segments meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentIntersection {
    Disjoint,
    /// The segments share exactly one point which is an endpoint of both.
    SharedEndpoint(Point2),
    /// The interiors cross in exactly one point.
    ProperCrossing(Point2),
    /// Collinear segments sharing more than one point; the witness pair spans
    /// the common sub-segment.
    Overlap(Point2, Point2),
    /// An endpoint of one segment lies in the interior of the other.
    EndpointInInterior(Point2),
}

impl SegmentIntersection {
    /// Some witness point of the intersection, if any.
    pub fn witness(&self) -> Option<&Point2> {
        match self {
            SegmentIntersection::Disjoint => None,
            SegmentIntersection::SharedEndpoint(p)
            | SegmentIntersection::ProperCrossing(p)
            | SegmentIntersection::EndpointInInterior(p)
            | SegmentIntersection::Overlap(p, _) => Some(p),
        }
    }
}

/// Intersection point of the (distinct, non-parallel) lines through
/// `(p1, p2)` and `(p3, p4)`.
pub fn line_line_intersection(p1: &Point2, p2: &Point2, p3: &Point2, p4: &Point2) -> Option<Point2> {
    let denom = (&p1.x - &p2.x) * (&p3.y - &p4.y) - (&p1.y - &p2.y) * (&p3.x - &p4.x);
    if denom.is_zero() {
        return None;
    }
    let part_a = &p1.x * &p2.y - &p1.y * &p2.x;
    let part_b = &p3.x * &p4.y - &p3.y * &p4.x;
    let x = (&part_a * (&p3.x - &p4.x) - (&p1.x - &p2.x) * &part_b) / &denom;
    let y = (&part_a * (&p3.y - &p4.y) - (&p1.y - &p2.y) * &part_b) / &denom;
    Some(Point2::new(x, y))
}

/// Classify the intersection of two segments exactly.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    // Disjoint bounding boxes settle most pairs without any determinant.
    {
        let (a1, b1) = if s1.a.x <= s1.b.x { (&s1.a.x, &s1.b.x) } else { (&s1.b.x, &s1.a.x) };
        let (a2, b2) = if s2.a.x <= s2.b.x { (&s2.a.x, &s2.b.x) } else { (&s2.b.x, &s2.a.x) };
        if b1 < a2 || b2 < a1 {
            return SegmentIntersection::Disjoint;
        }
        let (a1, b1) = if s1.a.y <= s1.b.y { (&s1.a.y, &s1.b.y) } else { (&s1.b.y, &s1.a.y) };
        let (a2, b2) = if s2.a.y <= s2.b.y { (&s2.a.y, &s2.b.y) } else { (&s2.b.y, &s2.a.y) };
        if b1 < a2 || b2 < a1 {
            return SegmentIntersection::Disjoint;
        }
    }
    let d1 = orientation(&s2.a, &s2.b, &s1.a);
    let d2 = orientation(&s2.a, &s2.b, &s1.b);
    let d3 = orientation(&s1.a, &s1.b, &s2.a);
    let d4 = orientation(&s1.a, &s1.b, &s2.b);

    use Orientation::Collinear as Co;
    if d1 == Co && d2 == Co {
        // Same supporting line: compare the 1D spans along the dominant axis.
        return collinear_overlap(s1, s2);
    }

    // A shared endpoint of non-collinear segments is the entire intersection.
    if s1.a == s2.a || s1.a == s2.b {
        return SegmentIntersection::SharedEndpoint(s1.a.clone());
    }
    if s1.b == s2.a || s1.b == s2.b {
        return SegmentIntersection::SharedEndpoint(s1.b.clone());
    }

    let strict = |p: Orientation, q: Orientation| {
        (p == Orientation::Left && q == Orientation::Right)
            || (p == Orientation::Right && q == Orientation::Left)
    };
    if strict(d1, d2) && strict(d3, d4) {
        let p = line_line_intersection(&s1.a, &s1.b, &s2.a, &s2.b)
            .expect("straddling segments have non-parallel lines");
        return SegmentIntersection::ProperCrossing(p);
    }

    // Touching configurations: an endpoint on the other segment's interior.
    if d1 == Co && s2.contains_collinear(&s1.a) {
        return SegmentIntersection::EndpointInInterior(s1.a.clone());
    }
    if d2 == Co && s2.contains_collinear(&s1.b) {
        return SegmentIntersection::EndpointInInterior(s1.b.clone());
    }
    if d3 == Co && s1.contains_collinear(&s2.a) {
        return SegmentIntersection::EndpointInInterior(s2.a.clone());
    }
    if d4 == Co && s1.contains_collinear(&s2.b) {
        return SegmentIntersection::EndpointInInterior(s2.b.clone());
    }

    SegmentIntersection::Disjoint
}

fn collinear_overlap(s1: &Segment, s2: &Segment) -> SegmentIntersection {
    // Order endpoints along the segment direction; the x axis dominates
    // unless the common line is vertical.
    let vertical = s1.a.x == s1.b.x;
    let key = |p: &Point2| if vertical { p.y.clone() } else { p.x.clone() };
    let (mut a1, mut b1) = (s1.a.clone(), s1.b.clone());
    if key(&a1) > key(&b1) {
        std::mem::swap(&mut a1, &mut b1);
    }
    let (mut a2, mut b2) = (s2.a.clone(), s2.b.clone());
    if key(&a2) > key(&b2) {
        std::mem::swap(&mut a2, &mut b2);
    }
    let lo = if key(&a1) >= key(&a2) { a1 } else { a2 };
    let hi = if key(&b1) <= key(&b2) { b1 } else { b2 };
    match key(&lo).cmp(&key(&hi)) {
        Ordering::Greater => SegmentIntersection::Disjoint,
        Ordering::Equal => SegmentIntersection::SharedEndpoint(lo),
        Ordering::Less => SegmentIntersection::Overlap(lo, hi),
    }
}

/// Result of a convex hull computation; inputs in degenerate position yield
/// the lower-dimensional descriptors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hull {
    Point(Point2),
    Segment(Point2, Point2),
    Polygon(ConvexPolygon),
}

impl Hull {
    pub fn polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Hull::Polygon(p) => Some(p),
            _ => None,
        }
    }
}

/// A strictly convex polygon: counterclockwise vertices, no three collinear,
/// canonically rotated to start at the lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexPolygon {
    verts: Vec<Point2>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolygonError {
    #[error("a convex polygon needs at least 3 vertices")]
    TooFewVertices,
    #[error("vertices are not in strictly convex counterclockwise position")]
    NotStrictlyConvex,
}

impl ConvexPolygon {
    /// Validate a counterclockwise strictly convex vertex list.
    pub fn try_new(verts: Vec<Point2>) -> Result<Self, PolygonError> {
        if verts.len() < 3 {
            return Err(PolygonError::TooFewVertices);
        }
        let n = verts.len();
        for i in 0..n {
            let a = &verts[i];
            let b = &verts[(i + 1) % n];
            let c = &verts[(i + 2) % n];
            if orientation(a, b, c) != Orientation::Left {
                return Err(PolygonError::NotStrictlyConvex);
            }
        }
        Ok(ConvexPolygon { verts }.canonicalized())
    }

    fn canonicalized(mut self) -> Self {
        let min = self
            .verts
            .iter()
            .enumerate()
            .min_by(|(_, p), (_, q)| p.cmp(q))
            .map(|(i, _)| i)
            .unwrap();
        self.verts.rotate_left(min);
        self
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Twice the (positive) area, by the shoelace formula.
    pub fn area2(&self) -> Rat {
        let n = self.verts.len();
        let mut acc = Rat::zero();
        for i in 0..n {
            let p = &self.verts[i];
            let q = &self.verts[(i + 1) % n];
            acc += &p.x * &q.y - &q.x * &p.y;
        }
        acc
    }

    /// Arithmetic mean of the vertices; strictly interior for a strictly
    /// convex polygon.
    pub fn centroid(&self) -> Point2 {
        let n = rat_int(self.verts.len() as i64);
        let mut x = Rat::zero();
        let mut y = Rat::zero();
        for v in &self.verts {
            x += &v.x;
            y += &v.y;
        }
        Point2::new(x / &n, y / n)
    }

    /// A strictly interior point obtained by pulling the centroid toward the
    /// `k`-th vertex with weight `t` (0 < t < 1).
    pub fn interior_point_towards(&self, k: usize, t: &Rat) -> Point2 {
        let c = self.centroid();
        let v = &self.verts[k % self.verts.len()];
        c.lerp(v, t)
    }
}

/// Exact point-versus-convex-polygon classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Interior,
    Boundary,
    Exterior,
}

pub fn point_in_polygon(p: &Point2, poly: &ConvexPolygon) -> PointLocation {
    let n = poly.verts.len();
    let mut on_boundary = false;
    for i in 0..n {
        let a = &poly.verts[i];
        let b = &poly.verts[(i + 1) % n];
        match orientation(a, b, p) {
            Orientation::Right => return PointLocation::Exterior,
            Orientation::Collinear => {
                if in_box(a, b, p) {
                    on_boundary = true;
                } else {
                    return PointLocation::Exterior;
                }
            }
            Orientation::Left => {}
        }
    }
    if on_boundary {
        PointLocation::Boundary
    } else {
        PointLocation::Interior
    }
}

/// Convex hull by monotone chain; collinear points on the boundary are
/// absorbed so the output is strictly convex.
pub fn convex_hull(points: &[Point2]) -> Hull {
    assert!(!points.is_empty(), "convex hull of an empty set");
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return Hull::Point(pts.pop().unwrap());
    }
    let all_collinear = {
        let a = &pts[0];
        let b = pts.last().unwrap();
        pts.iter().all(|p| orientation(a, b, p) == Orientation::Collinear)
    };
    if all_collinear {
        let a = pts[0].clone();
        let b = pts.pop().unwrap();
        return Hull::Segment(a, b);
    }

    let build = |iter: &mut dyn Iterator<Item = &Point2>| {
        let mut chain: Vec<Point2> = Vec::new();
        for p in iter {
            while chain.len() >= 2
                && orientation(&chain[chain.len() - 2], &chain[chain.len() - 1], p)
                    != Orientation::Left
            {
                chain.pop();
            }
            chain.push(p.clone());
        }
        chain
    };
    let mut lower = build(&mut pts.iter());
    let mut upper = build(&mut pts.iter().rev());
    lower.pop();
    upper.pop();
    lower.append(&mut upper);
    Hull::Polygon(
        ConvexPolygon::try_new(lower).expect("monotone chain yields a strictly convex polygon"),
    )
}

/// Split a convex polygon by the oriented line through `la -> lb`.
///
/// Returns the closed pieces on the left and on the right of the line; a
/// piece that would have empty interior is reported as `None`, so a line
/// missing (or merely grazing) the polygon leaves it whole on one side.
pub fn clip_polygon_by_line(
    poly: &ConvexPolygon,
    la: &Point2,
    lb: &Point2,
) -> (Option<ConvexPolygon>, Option<ConvexPolygon>) {
    assert!(la != lb, "clip line through two distinct points");
    let n = poly.verts.len();
    let sides: Vec<Orientation> = poly.verts.iter().map(|v| orientation(la, lb, v)).collect();
    let mut left: Vec<Point2> = Vec::new();
    let mut right: Vec<Point2> = Vec::new();
    for i in 0..n {
        let v = &poly.verts[i];
        let s = sides[i];
        let s_next = sides[(i + 1) % n];
        match s {
            Orientation::Left => left.push(v.clone()),
            Orientation::Right => right.push(v.clone()),
            Orientation::Collinear => {
                left.push(v.clone());
                right.push(v.clone());
            }
        }
        let crosses = matches!(
            (s, s_next),
            (Orientation::Left, Orientation::Right) | (Orientation::Right, Orientation::Left)
        );
        if crosses {
            let w = &poly.verts[(i + 1) % n];
            let x = line_line_intersection(la, lb, v, w)
                .expect("strictly straddling edge crosses the line");
            left.push(x.clone());
            right.push(x);
        }
    }
    (finish_piece(left), finish_piece(right))
}

fn finish_piece(mut verts: Vec<Point2>) -> Option<ConvexPolygon> {
    verts.dedup();
    while verts.len() > 1 && verts.first() == verts.last() {
        verts.pop();
    }
    // Drop middles of collinear runs so the piece is strictly convex.
    loop {
        let n = verts.len();
        if n < 3 {
            return None;
        }
        let mut removed = false;
        let mut i = 0;
        while i < verts.len() && verts.len() >= 3 {
            let n = verts.len();
            let a = verts[(i + n - 1) % n].clone();
            let b = verts[i].clone();
            let c = verts[(i + 1) % n].clone();
            if orientation(&a, &b, &c) == Orientation::Collinear {
                verts.remove(i);
                removed = true;
            } else {
                i += 1;
            }
        }
        if !removed {
            break;
        }
    }
    ConvexPolygon::try_new(verts).ok()
}

/// True iff the closed polygons share at least one point, by the exact
/// separating-axis test over both edge sets.
pub fn polygons_intersect(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    !has_separating_edge(a, b) && !has_separating_edge(b, a)
}

fn has_separating_edge(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    let n = a.verts.len();
    for i in 0..n {
        let p = &a.verts[i];
        let q = &a.verts[(i + 1) % n];
        // `a` is counterclockwise, so its interior is on the left of p->q;
        // if all of `b` is strictly right, the edge line separates them.
        if b.verts.iter().all(|v| orientation(p, q, v) == Orientation::Right) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point2 {
        Point2::from_ints(x, y)
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)), Orientation::Left);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)), Orientation::Collinear);
        let c = Point2::new(rat_int(1), rat(-1, 3));
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &c), Orientation::Right);
    }

    #[test]
    fn orientation_antisymmetry() {
        let pts = [p(0, 0), p(3, 1), p(-2, 5), p(7, 7), p(1, 1)];
        for a in &pts {
            for b in &pts {
                for c in &pts {
                    let lhs = orientation(a, b, c);
                    let rhs = orientation(a, c, b);
                    match lhs {
                        Orientation::Collinear => assert_eq!(rhs, Orientation::Collinear),
                        Orientation::Left => assert_eq!(rhs, Orientation::Right),
                        Orientation::Right => assert_eq!(rhs, Orientation::Left),
                    }
                }
            }
        }
    }

    #[test]
    fn segment_classification() {
        let s = |a: Point2, b: Point2| Segment::new(a, b);
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(2, 2)), &s(p(0, 2), p(2, 0))),
            SegmentIntersection::ProperCrossing(p(1, 1))
        );
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(1, 0)), &s(p(1, 0), p(2, 1))),
            SegmentIntersection::SharedEndpoint(p(1, 0))
        );
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(2, 0)), &s(p(1, 0), p(3, 0))),
            SegmentIntersection::Overlap(p(1, 0), p(2, 0))
        );
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(2, 0)), &s(p(1, 0), p(1, 5))),
            SegmentIntersection::EndpointInInterior(p(1, 0))
        );
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(1, 0)), &s(p(0, 1), p(1, 1))),
            SegmentIntersection::Disjoint
        );
        // Collinear touching exactly at a common endpoint.
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(2, 0)), &s(p(2, 0), p(3, 0))),
            SegmentIntersection::SharedEndpoint(p(2, 0))
        );
        // Vertical overlap.
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(0, 3)), &s(p(0, 1), p(0, 5))),
            SegmentIntersection::Overlap(p(0, 1), p(0, 3))
        );
        // Containment along a line.
        assert_eq!(
            segments_intersect(&s(p(0, 0), p(4, 0)), &s(p(1, 0), p(2, 0))),
            SegmentIntersection::Overlap(p(1, 0), p(2, 0))
        );
    }

    #[test]
    fn hull_triangle_and_interior_absorption() {
        let h = convex_hull(&[p(0, 0), p(4, 0), p(0, 4)]);
        let t = h.polygon().unwrap();
        assert_eq!(t.vertices(), &[p(0, 0), p(4, 0), p(0, 4)]);

        let h2 = convex_hull(&[p(0, 0), p(4, 0), p(0, 4), p(1, 1)]);
        assert_eq!(h2, h);
    }

    #[test]
    fn hull_degenerate() {
        assert_eq!(convex_hull(&[p(2, 3)]), Hull::Point(p(2, 3)));
        assert_eq!(
            convex_hull(&[p(0, 0), p(2, 2), p(1, 1)]),
            Hull::Segment(p(0, 0), p(2, 2))
        );
        assert_eq!(convex_hull(&[p(5, 5), p(5, 5)]), Hull::Point(p(5, 5)));
    }

    #[test]
    fn hull_idempotent() {
        let pts = [p(0, 0), p(4, 0), p(5, 3), p(2, 6), p(-1, 2), p(2, 2), p(3, 1)];
        let h = convex_hull(&pts);
        let poly = h.polygon().unwrap();
        let again = convex_hull(poly.vertices());
        assert_eq!(again.polygon().unwrap(), poly);
    }

    #[test]
    fn point_location() {
        let t = convex_hull(&[p(0, 0), p(6, 0), p(0, 6)]);
        let t = t.polygon().unwrap();
        assert_eq!(point_in_polygon(&t.centroid(), t), PointLocation::Interior);
        assert_eq!(point_in_polygon(&p(0, 0), t), PointLocation::Boundary);
        assert_eq!(point_in_polygon(&p(3, 0), t), PointLocation::Boundary);
        assert_eq!(point_in_polygon(&p(7, 7), t), PointLocation::Exterior);
        assert_eq!(point_in_polygon(&p(7, 0), t), PointLocation::Exterior);
    }

    #[test]
    fn clip_square() {
        let sq = ConvexPolygon::try_new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        let la = Point2::new(rat(1, 2), rat_int(-1));
        let lb = Point2::new(rat(1, 2), rat_int(2));
        let (left, right) = clip_polygon_by_line(&sq, &la, &lb);
        let left = left.unwrap();
        let right = right.unwrap();
        // Line points up, so the left piece is x <= 1/2.
        assert!(left.vertices().iter().all(|v| v.x <= rat(1, 2)));
        assert!(right.vertices().iter().all(|v| v.x >= rat(1, 2)));
        assert_eq!(left.area2() + right.area2(), sq.area2());
    }

    #[test]
    fn clip_miss_keeps_polygon() {
        let t = ConvexPolygon::try_new(vec![p(0, 0), p(2, 0), p(0, 2)]).unwrap();
        let (left, right) = clip_polygon_by_line(&t, &p(10, 0), &p(10, 1));
        // Line x = 10 pointing up: the triangle is entirely on its left.
        assert_eq!(left.unwrap(), t);
        assert!(right.is_none());
    }

    #[test]
    fn clip_grazing_vertex() {
        let t = ConvexPolygon::try_new(vec![p(0, 0), p(2, 0), p(0, 2)]).unwrap();
        // Vertical line through the origin: triangle fully on the right side.
        let (left, right) = clip_polygon_by_line(&t, &p(0, -1), &p(0, 1));
        assert!(left.is_none());
        assert_eq!(right.unwrap(), t);
    }

    #[test]
    fn polygons_intersection_cases() {
        let a = ConvexPolygon::try_new(vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        let b = ConvexPolygon::try_new(vec![p(2, 0), p(3, 0), p(3, 1), p(2, 1)]).unwrap();
        assert!(!polygons_intersect(&a, &b));

        let outer = ConvexPolygon::try_new(vec![p(-1, -1), p(5, -1), p(2, 5)]).unwrap();
        let inner = ConvexPolygon::try_new(vec![p(1, 0), p(2, 0), p(2, 1)]).unwrap();
        assert!(polygons_intersect(&outer, &inner));

        // Sharing exactly one vertex still intersects as closed sets.
        let c = ConvexPolygon::try_new(vec![p(1, 1), p(2, 1), p(2, 2)]).unwrap();
        let d = ConvexPolygon::try_new(vec![p(0, 0), p(1, 0), p(1, 1)]).unwrap();
        assert!(polygons_intersect(&c, &d));
    }
}
