//! Straight-line drawability when all fixed vertices are collinear: the
//! decision reduces to planarity of the graph augmented with a cycle through
//! the fixed vertices in their order along the line; a side assignment for
//! the mobiles falls out of the embedding, and a witness drawing is built by
//! the one-sided tent layout.

use crate::geometry::{orientation, rat_int, Orientation, Point2, Rat};
use crate::layout::layout_side;
use crate::model::{validate_drawing, Drawing, FMBigraph, ValidationMode};
use crate::planarity::{is_planar, planar_embedding, SimpleGraph};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollinearError {
    #[error("fixed vertices are not collinear")]
    NotCollinear,
    #[error("instance has no fixed vertices")]
    NoFixed,
    #[error("instance error: {0}")]
    Instance(String),
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
}

/// The common line of the fixed vertices and their strict order along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollinearityCertificate {
    pub line: (Point2, Point2),
    /// Fixed vertex ids sorted along the line.
    pub order: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Above,
    Below,
}

/// Which half plane each mobile vertex occupies.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SideAssignment {
    pub sides: BTreeMap<String, Side>,
}

/// Verify collinearity and order the fixed vertices along the line.
pub fn check_collinear(g: &FMBigraph) -> Result<CollinearityCertificate, CollinearError> {
    g.indexed().map_err(|e| CollinearError::Instance(e.to_string()))?;
    if g.fixed.is_empty() {
        return Err(CollinearError::NoFixed);
    }
    if g.fixed.len() == 1 {
        let p = g.fixed[0].pos.clone();
        let q = Point2::new(&p.x + rat_int(1), p.y.clone());
        return Ok(CollinearityCertificate {
            line: (p, q),
            order: vec![g.fixed[0].id.clone()],
        });
    }
    let a = g.fixed[0].pos.clone();
    let b = g
        .fixed
        .iter()
        .map(|f| f.pos.clone())
        .find(|p| *p != a)
        .expect("fixed positions are pairwise distinct");
    for f in &g.fixed {
        if orientation(&a, &b, &f.pos) != Orientation::Collinear {
            return Err(CollinearError::NotCollinear);
        }
    }
    let mut order: Vec<(Rat, String)> = g
        .fixed
        .iter()
        .map(|f| (line_parameter(&a, &b, &f.pos), f.id.clone()))
        .collect();
    order.sort();
    Ok(CollinearityCertificate {
        line: (a, b),
        order: order.into_iter().map(|(_, id)| id).collect(),
    })
}

/// Exact parameter t with `p = a + t (b - a)` for `p` on the line.
fn line_parameter(a: &Point2, b: &Point2, p: &Point2) -> Rat {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let denom = &dx * &dx + &dy * &dy;
    ((&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy) / denom
}

struct Augmented {
    graph: SimpleGraph,
    /// The fixed cycle as graph vertex ids, empty when there is no cycle.
    z_cycle: Vec<usize>,
    /// Mobile j is graph vertex `n_f + j`.
    mobile_base: usize,
}

fn augment(g: &FMBigraph, cert: &CollinearityCertificate) -> Result<Augmented, CollinearError> {
    let idx = g
        .indexed()
        .map_err(|e| CollinearError::Instance(e.to_string()))?;
    let n_f = g.fixed.len();
    let n_m = g.mobile.len();
    // Fixed vertex k of the augmented graph is the k-th vertex along the
    // line.
    let fixed_slot: BTreeMap<usize, usize> = cert
        .order
        .iter()
        .enumerate()
        .map(|(slot, id)| (idx.fixed_index[id], slot))
        .collect();
    let mut edges: Vec<(usize, usize)> = idx
        .edges
        .iter()
        .map(|&(fi, mi)| (fixed_slot[&fi], n_f + mi))
        .collect();
    let mut n = n_f + n_m;
    let mut z_cycle = Vec::new();
    match n_f {
        1 => {}
        2 => {
            let (d1, d2) = (n, n + 1);
            n += 2;
            edges.extend([(0, d1), (d1, 1), (0, d2), (d2, 1)]);
            z_cycle = vec![0, d1, 1, d2];
        }
        _ => {
            for k in 0..n_f {
                edges.push((k, (k + 1) % n_f));
            }
            z_cycle = (0..n_f).collect();
        }
    }
    let graph = SimpleGraph::new(n, &edges).map_err(|e| CollinearError::Instance(e.to_string()))?;
    Ok(Augmented {
        graph,
        z_cycle,
        mobile_base: n_f,
    })
}

/// Decide 0-bend drawability; on success, extract the mobiles' sides from a
/// planar embedding of the augmented graph (inside the fixed cycle reads as
/// above the line).
pub fn decide_collinear(
    g: &FMBigraph,
    cert: &CollinearityCertificate,
) -> Result<Option<SideAssignment>, CollinearError> {
    let aug = augment(g, cert)?;
    if !is_planar(&aug.graph) {
        return Ok(None);
    }
    let mut sides = SideAssignment::default();
    let idx = g
        .indexed()
        .map_err(|e| CollinearError::Instance(e.to_string()))?;
    if aug.z_cycle.is_empty() {
        for m in &g.mobile {
            sides.sides.insert(m.clone(), Side::Above);
        }
        return Ok(Some(sides));
    }
    let emb = planar_embedding(&aug.graph).expect("planar graph embeds");
    let is_mobile =
        |v: usize| v >= aug.mobile_base && v < aug.mobile_base + g.mobile.len();
    let zpos: BTreeMap<usize, usize> = aug
        .z_cycle
        .iter()
        .enumerate()
        .map(|(i, &v)| (v, i))
        .collect();
    let zlen = aug.z_cycle.len();
    for (mi, m) in g.mobile.iter().enumerate() {
        // Degree <= 1 never constrains either side.
        if idx.mobile_neighbors[mi].len() <= 1 {
            sides.sides.insert(m.clone(), Side::Above);
            continue;
        }
        let v = aug.mobile_base + mi;
        // Smallest fixed neighbor by slot along the line.
        let slot = cert
            .order
            .iter()
            .position(|id| idx.mobile_neighbors[mi].contains(&idx.fixed_index[id]))
            .expect("mobile has a fixed neighbor");
        let rot = emb.rotation(slot);
        let at = rot.iter().position(|&w| w == v).expect("edge in rotation");
        let scan = |step_back: bool| -> usize {
            let len = rot.len();
            let mut k = at;
            loop {
                k = if step_back { (k + len - 1) % len } else { (k + 1) % len };
                if !is_mobile(rot[k]) {
                    return rot[k];
                }
            }
        };
        let before = scan(true);
        let after = scan(false);
        let zprev = aug.z_cycle[(zpos[&slot] + zlen - 1) % zlen];
        let znext = aug.z_cycle[(zpos[&slot] + 1) % zlen];
        let side = if before == zprev && after == znext {
            Side::Above
        } else {
            debug_assert_eq!((before, after), (znext, zprev));
            Side::Below
        };
        sides.sides.insert(m.clone(), side);
    }
    Ok(Some(sides))
}

/// Build a validator-certified 0-bend drawing for a positive decision.
pub fn construct_collinear_drawing(
    g: &FMBigraph,
    cert: &CollinearityCertificate,
    sides: &SideAssignment,
) -> Result<Drawing, CollinearError> {
    let idx = g
        .indexed()
        .map_err(|e| CollinearError::Instance(e.to_string()))?;
    let a = &cert.line.0;
    let b = &cert.line.1;
    let dir = (&b.x - &a.x, &b.y - &a.y);
    let nrm = (-dir.1.clone(), dir.0.clone());
    let t_of_fixed: BTreeMap<usize, Rat> = g
        .fixed
        .iter()
        .enumerate()
        .map(|(fi, f)| (fi, line_parameter(a, b, &f.pos)))
        .collect();

    let mut drawing = Drawing::default();
    for f in &g.fixed {
        drawing.positions.insert(f.id.clone(), f.pos.clone());
    }
    let place = |t: &Rat, h: &Rat, sign: i64| -> Point2 {
        let hh = h * rat_int(sign);
        Point2::new(
            &a.x + t * &dir.0 + &hh * &nrm.0,
            &a.y + t * &dir.1 + &hh * &nrm.1,
        )
    };

    let mut spare = 0i64;
    for (side, sign) in [(Side::Above, 1i64), (Side::Below, -1i64)] {
        let mut items: Vec<(String, Vec<Rat>)> = Vec::new();
        for (mi, m) in g.mobile.iter().enumerate() {
            if sides.sides.get(m).copied().unwrap_or(Side::Above) != side {
                continue;
            }
            if idx.mobile_neighbors[mi].is_empty() {
                if side == Side::Above {
                    // Degree-0 mobiles go to an empty band beyond everything.
                    let t_max = t_of_fixed
                        .values()
                        .max()
                        .cloned()
                        .unwrap_or_else(Rat::zero);
                    let p = place(&(t_max + rat_int(1 + spare)), &rat_int(2 + spare), 1);
                    drawing.positions.insert(m.clone(), p);
                    spare += 1;
                }
                continue;
            }
            let mut feet: Vec<Rat> = idx.mobile_neighbors[mi]
                .iter()
                .map(|fi| t_of_fixed[fi].clone())
                .collect();
            feet.sort();
            feet.dedup();
            items.push((m.clone(), feet));
        }
        let stars =
            layout_side(&items, &rat_int(1)).map_err(CollinearError::ConstructionFailed)?;
        for star in stars {
            let p = place(&star.apex.x, &star.apex.y, sign);
            drawing.positions.insert(star.mobile.clone(), p);
        }
    }

    let report = validate_drawing(g, &drawing, ValidationMode::Generic)
        .map_err(|e| CollinearError::ConstructionFailed(e.to_string()))?;
    if !report.planar {
        return Err(CollinearError::ConstructionFailed(format!(
            "validator rejected the constructed drawing: {:?}",
            report.violations.first()
        )));
    }
    Ok(drawing)
}

/// Decide and, when positive, construct.
pub fn solve_collinear(
    g: &FMBigraph,
) -> Result<Option<(SideAssignment, Drawing)>, CollinearError> {
    let cert = check_collinear(g)?;
    match decide_collinear(g, &cert)? {
        None => Ok(None),
        Some(sides) => {
            let d = construct_collinear_drawing(g, &cert, &sides)?;
            Ok(Some((sides, d)))
        }
    }
}
