//! One-sided tent layout on a baseline.
//!
//! Works in a normalized (t, h) plane: fixed vertices sit at (t_i, 0), every
//! mobile of this side is placed at positive height with straight segments
//! down to its neighbors. Mobiles with a positive-length neighbor interval
//! become tent apexes over their interval; nesting follows the laminar
//! structure of the intervals. Degree-one mobiles (degenerate intervals) are
//! tucked into a free angular wedge at their anchor. Every placement is
//! verified exactly against everything placed before it and retried at a
//! finer scale on contact, so the produced side is crossing-free by
//! construction.

use crate::geometry::{
    orientation, rat, segments_intersect, Orientation, Point2, Rat, Segment, SegmentIntersection,
};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

const MAX_RETRIES: usize = 64;

/// A placed mobile star: apex plus the feet it connects to.
#[derive(Debug, Clone)]
pub(crate) struct PlacedStar {
    pub mobile: String,
    pub apex: Point2,
    pub feet: Vec<Rat>,
}

struct Node {
    mobile: String,
    feet: Vec<Rat>,
    lo: Rat,
    hi: Rat,
    has_inner: bool,
    parent: Option<usize>,
}

/// Lay out one side. `items` maps each mobile to its nonempty, sorted list
/// of neighbor baseline coordinates; every apex height stays strictly below
/// `height_budget`.
pub(crate) fn layout_side(
    items: &[(String, Vec<Rat>)],
    height_budget: &Rat,
) -> Result<Vec<PlacedStar>, String> {
    assert!(height_budget.is_positive());
    let mut nodes: Vec<Node> = items
        .iter()
        .map(|(m, feet)| {
            assert!(!feet.is_empty());
            let lo = feet.first().unwrap().clone();
            let hi = feet.last().unwrap().clone();
            let has_inner = feet.iter().any(|t| *t > lo && *t < hi);
            Node {
                mobile: m.clone(),
                feet: feet.clone(),
                lo,
                hi,
                has_inner,
                parent: None,
            }
        })
        .collect();

    // Laminar forest: outermost-first ordering; equal intervals chain with
    // the inner-neighbor-carrying one innermost.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| {
        let (na, nb) = (&nodes[a], &nodes[b]);
        na.lo
            .cmp(&nb.lo)
            .then(nb.hi.cmp(&na.hi))
            .then(na.has_inner.cmp(&nb.has_inner))
            .then(na.mobile.cmp(&nb.mobile))
    });
    let mut stack: Vec<usize> = Vec::new();
    for &i in &order {
        while let Some(&top) = stack.last() {
            if nodes[top].lo <= nodes[i].lo && nodes[i].hi <= nodes[top].hi {
                break;
            }
            // Not contained: legal only if fully to the right of the top
            // (touching allowed), otherwise the intervals interleave.
            if nodes[i].lo < nodes[top].hi {
                return Err(format!(
                    "intervals of {} and {} interleave",
                    nodes[top].mobile, nodes[i].mobile
                ));
            }
            stack.pop();
        }
        if let Some(&top) = stack.last() {
            // The parent's neighbors may not intrude into the open span.
            if nodes[top]
                .feet
                .iter()
                .any(|t| *t > nodes[i].lo && *t < nodes[i].hi)
            {
                return Err(format!(
                    "interval of {} spans a neighbor of its parent {}",
                    nodes[i].mobile, nodes[top].mobile
                ));
            }
            nodes[i].parent = Some(top);
        }
        // Degenerate intervals cannot host children, so they never become
        // stack containers.
        if nodes[i].lo < nodes[i].hi {
            stack.push(i);
        }
    }

    let mut placed: Vec<PlacedStar> = Vec::new();
    let mut apex_of: BTreeMap<usize, Point2> = BTreeMap::new();

    // Positive-length intervals first, in the outermost-first order.
    for &i in &order {
        if nodes[i].lo == nodes[i].hi {
            continue;
        }
        let region = nodes[i].parent.map(|p| gap_region(&nodes, &apex_of, p, i));
        let h_start = match &region {
            Some(r) => r.apex.y.clone() / rat(4, 1),
            None => height_budget.clone() / rat(2, 1),
        };
        let x = (&nodes[i].lo + &nodes[i].hi) / rat(2, 1);
        let apex = place_with_retries(&nodes[i], &placed, region.as_ref(), x, h_start)?;
        apex_of.insert(i, apex.clone());
        placed.push(PlacedStar {
            mobile: nodes[i].mobile.clone(),
            apex,
            feet: nodes[i].feet.clone(),
        });
    }

    // Degenerate intervals last: wedge placement at their anchor.
    for &i in &order {
        if nodes[i].lo != nodes[i].hi {
            continue;
        }
        let anchor = Point2::new(nodes[i].lo.clone(), Rat::zero());
        let region = nodes[i].parent.map(|p| gap_region(&nodes, &apex_of, p, i));
        let apex = place_degenerate(&nodes[i], &placed, region.as_ref(), &anchor, height_budget)?;
        apex_of.insert(i, apex.clone());
        placed.push(PlacedStar {
            mobile: nodes[i].mobile.clone(),
            apex,
            feet: nodes[i].feet.clone(),
        });
    }

    Ok(placed)
}

struct GapRegion {
    left: Point2,
    right: Point2,
    apex: Point2,
}

/// The parent's tent triangle over the gap (between consecutive parent
/// neighbors) that hosts child `c`.
fn gap_region(
    nodes: &[Node],
    apex_of: &BTreeMap<usize, Point2>,
    parent: usize,
    c: usize,
) -> GapRegion {
    let p = &nodes[parent];
    let child = &nodes[c];
    let mut left = p.feet[0].clone();
    let mut right = p.feet.last().unwrap().clone();
    for w in p.feet.windows(2) {
        if w[0] <= child.lo && child.hi <= w[1] {
            left = w[0].clone();
            right = w[1].clone();
            break;
        }
    }
    GapRegion {
        left: Point2::new(left, Rat::zero()),
        right: Point2::new(right, Rat::zero()),
        apex: apex_of[&parent].clone(),
    }
}

fn strictly_inside(region: &GapRegion, p: &Point2) -> bool {
    orientation(&region.left, &region.right, p) == Orientation::Left
        && orientation(&region.right, &region.apex, p) == Orientation::Left
        && orientation(&region.apex, &region.left, p) == Orientation::Left
}

/// Would a star at `apex` with the given feet conflict with what is placed?
fn star_conflicts(apex: &Point2, feet: &[Rat], placed: &[PlacedStar]) -> bool {
    for star in placed {
        if star.apex == *apex {
            return true;
        }
        for ft in feet {
            let foot = Point2::new(ft.clone(), Rat::zero());
            let seg = Segment::new(apex.clone(), foot.clone());
            if on_closed_segment(&seg, &star.apex) {
                return true;
            }
            for oft in &star.feet {
                let ofoot = Point2::new(oft.clone(), Rat::zero());
                let oseg = Segment::new(star.apex.clone(), ofoot.clone());
                if on_closed_segment(&oseg, apex) {
                    return true;
                }
                match segments_intersect(&seg, &oseg) {
                    SegmentIntersection::Disjoint => {}
                    SegmentIntersection::SharedEndpoint(p) => {
                        // Only a shared fixed foot is a legal contact.
                        if !(ft == oft && p == foot) {
                            return true;
                        }
                    }
                    _ => return true,
                }
            }
        }
    }
    false
}

fn on_closed_segment(s: &Segment, p: &Point2) -> bool {
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

fn place_with_retries(
    node: &Node,
    placed: &[PlacedStar],
    region: Option<&GapRegion>,
    x: Rat,
    h_start: Rat,
) -> Result<Point2, String> {
    let mut h = h_start;
    for _ in 0..MAX_RETRIES {
        let apex = Point2::new(x.clone(), h.clone());
        let inside = region.map(|r| strictly_inside(r, &apex)).unwrap_or(true);
        if inside && !star_conflicts(&apex, &node.feet, placed) {
            return Ok(apex);
        }
        h /= rat(2, 1);
    }
    Err(format!("could not place {} over its interval", node.mobile))
}

/// Place a degree-one mobile in a free angular wedge at its anchor point.
/// Wedges between consecutive incident directions (and the two baseline
/// sentinels) are tried in order at shrinking radii; region containment and
/// the exact conflict checks pick the workable one.
fn place_degenerate(
    node: &Node,
    placed: &[PlacedStar],
    region: Option<&GapRegion>,
    anchor: &Point2,
    height_budget: &Rat,
) -> Result<Point2, String> {
    // Normalized directions of placed segments incident to the anchor.
    let mut dirs: Vec<(Rat, Rat)> = Vec::new();
    for star in placed {
        for ft in &star.feet {
            if *ft == anchor.x {
                dirs.push(l1_normalized(&(&star.apex.x - &anchor.x, star.apex.y.clone())));
            }
        }
    }
    dirs.sort_by(|a, b| {
        let cr = &a.0 * &b.1 - &a.1 * &b.0;
        if cr.is_positive() {
            std::cmp::Ordering::Less
        } else if cr.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    dirs.dedup();
    let mut rays = vec![(Rat::one(), Rat::zero())];
    rays.extend(dirs);
    rays.push((-Rat::one(), Rat::zero()));

    for w in rays.windows(2) {
        let n1 = l1_normalized(&w[0]);
        let n2 = l1_normalized(&w[1]);
        let mut dir = (n1.0 + n2.0, n1.1 + n2.1);
        if dir.1 <= Rat::zero() {
            // Opposite baseline sentinels: the free wedge is the whole upper
            // half plane, bisected by the vertical.
            if dir.0.is_zero() {
                dir = (Rat::zero(), Rat::one());
            } else {
                continue;
            }
        }
        let mut s = height_budget.clone() / rat(4, 1);
        for _ in 0..MAX_RETRIES {
            let apex = Point2::new(&anchor.x + &dir.0 * &s, &dir.1 * &s);
            let ok_height = apex.y.is_positive() && apex.y < *height_budget;
            let inside = region.map(|r| strictly_inside(r, &apex)).unwrap_or(true);
            if ok_height && inside && !star_conflicts(&apex, &node.feet, placed) {
                return Ok(apex);
            }
            s /= rat(2, 1);
        }
    }
    Err(format!("could not place {} at its anchor", node.mobile))
}

fn l1_normalized(v: &(Rat, Rat)) -> (Rat, Rat) {
    let norm = v.0.abs() + v.1.abs();
    if norm.is_zero() {
        (Rat::zero(), Rat::zero())
    } else {
        (&v.0 / &norm, &v.1 / &norm)
    }
}
