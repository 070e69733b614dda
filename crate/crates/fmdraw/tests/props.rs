//! Property tests for the exact geometry kernel.

use fmdraw::geometry::{
    clip_polygon_by_line, convex_hull, point_in_polygon, polygons_intersect, segments_intersect,
    ConvexPolygon, Hull, Point2, PointLocation, Rat, Segment, SegmentIntersection,
};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| Rat::new(BigInt::from(n), BigInt::from(d)))
}

fn point() -> impl Strategy<Value = Point2> {
    (rational(), rational()).prop_map(|(x, y)| Point2::new(x, y))
}

fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    proptest::collection::vec(point(), 3..10).prop_filter_map("degenerate hull", |pts| {
        match convex_hull(&pts) {
            Hull::Polygon(p) => Some(p),
            _ => None,
        }
    })
}

proptest! {
    #[test]
    fn orientation_antisymmetric(a in point(), b in point(), c in point()) {
        use fmdraw::geometry::{orientation, Orientation};
        let lhs = orientation(&a, &b, &c);
        let rhs = orientation(&a, &c, &b);
        match lhs {
            Orientation::Collinear => prop_assert_eq!(rhs, Orientation::Collinear),
            Orientation::Left => prop_assert_eq!(rhs, Orientation::Right),
            Orientation::Right => prop_assert_eq!(rhs, Orientation::Left),
        }
    }

    #[test]
    fn hull_is_idempotent_and_covers(pts in proptest::collection::vec(point(), 1..12)) {
        match convex_hull(&pts) {
            Hull::Polygon(poly) => {
                let again = convex_hull(poly.vertices());
                prop_assert_eq!(again.polygon(), Some(&poly));
                for p in &pts {
                    prop_assert_ne!(point_in_polygon(p, &poly), PointLocation::Exterior);
                }
            }
            Hull::Segment(a, b) => prop_assert_ne!(a, b),
            Hull::Point(_) => prop_assert!(!pts.is_empty()),
        }
    }

    #[test]
    fn clip_conserves_area(poly in polygon(), la in point(), lb in point()) {
        prop_assume!(la != lb);
        let (left, right) = clip_polygon_by_line(&poly, &la, &lb);
        let total = left.as_ref().map(|p| p.area2()).unwrap_or_else(Rat::zero)
            + right.as_ref().map(|p| p.area2()).unwrap_or_else(Rat::zero);
        prop_assert_eq!(total, poly.area2());
        // Pieces sit on their closed sides of the line.
        use fmdraw::geometry::{orientation, Orientation};
        if let Some(l) = left {
            for v in l.vertices() {
                prop_assert_ne!(orientation(&la, &lb, v), Orientation::Right);
            }
        }
        if let Some(r) = right {
            for v in r.vertices() {
                prop_assert_ne!(orientation(&la, &lb, v), Orientation::Left);
            }
        }
    }

    #[test]
    fn segment_classification_is_symmetric(a in point(), b in point(), c in point(), d in point()) {
        prop_assume!(a != b && c != d);
        let s1 = Segment::new(a, b);
        let s2 = Segment::new(c, d);
        let fwd = segments_intersect(&s1, &s2);
        let bwd = segments_intersect(&s2, &s1);
        let kind = |x: &SegmentIntersection| std::mem::discriminant(x);
        prop_assert_eq!(kind(&fwd), kind(&bwd));
        match (&fwd, &bwd) {
            (SegmentIntersection::Overlap(l1, h1), SegmentIntersection::Overlap(l2, h2)) => {
                prop_assert_eq!((l1, h1), (l2, h2));
            }
            _ => {
                prop_assert_eq!(fwd.witness(), bwd.witness());
            }
        }
    }
}

proptest! {
    // The separating-axis implementation must agree with the brute-force
    // test: some edge pair intersects, or one polygon contains the other's
    // first vertex.
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn polygon_intersection_matches_brute_force(a in polygon(), b in polygon()) {
        let brute = {
            let edge_pair_hit = 'found: {
                let va = a.vertices();
                let vb = b.vertices();
                for i in 0..va.len() {
                    let sa = Segment::new(va[i].clone(), va[(i + 1) % va.len()].clone());
                    for j in 0..vb.len() {
                        let sb = Segment::new(vb[j].clone(), vb[(j + 1) % vb.len()].clone());
                        if segments_intersect(&sa, &sb) != SegmentIntersection::Disjoint {
                            break 'found true;
                        }
                    }
                }
                false
            };
            edge_pair_hit
                || point_in_polygon(&a.vertices()[0], &b) != PointLocation::Exterior
                || point_in_polygon(&b.vertices()[0], &a) != PointLocation::Exterior
        };
        prop_assert_eq!(polygons_intersect(&a, &b), brute);
    }
}

proptest! {
    // Hull against the quadratic edge oracle: (a, b) is a hull edge iff
    // every other point lies strictly left of it or collinear strictly
    // between its endpoints.
    #[test]
    fn hull_matches_edge_oracle(pts in proptest::collection::vec(point(), 3..11)) {
        use fmdraw::geometry::{orientation, Orientation};
        let mut distinct = pts.clone();
        distinct.sort();
        distinct.dedup();
        if let Hull::Polygon(poly) = convex_hull(&pts) {
            let between = |a: &Point2, b: &Point2, p: &Point2| {
                let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
                let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
                p != a && p != b && xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
            };
            let mut oracle_edges: Vec<(Point2, Point2)> = Vec::new();
            for a in &distinct {
                for b in &distinct {
                    if a == b {
                        continue;
                    }
                    let ok = distinct.iter().filter(|p| *p != a && *p != b).all(|p| {
                        match orientation(a, b, p) {
                            Orientation::Left => true,
                            Orientation::Collinear => between(a, b, p),
                            Orientation::Right => false,
                        }
                    });
                    if ok {
                        oracle_edges.push((a.clone(), b.clone()));
                    }
                }
            }
            let mut hull_edges: Vec<(Point2, Point2)> = Vec::new();
            let vs = poly.vertices();
            for i in 0..vs.len() {
                hull_edges.push((vs[i].clone(), vs[(i + 1) % vs.len()].clone()));
            }
            oracle_edges.sort();
            hull_edges.sort();
            prop_assert_eq!(hull_edges, oracle_edges);
        }
    }
}
