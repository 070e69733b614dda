//! Instance and drawing file formats, SVG rendering, seeded random instance
//! generators, and DIMACS CNF input.
//!
//! All coordinates travel as exact rationals: decimal strings ("0.25",
//! "-3"), `[numerator, denominator]` integer-string pairs, or plain JSON
//! integers. Serialization always emits the canonical pair form, so a
//! parse/serialize round trip is the identity on values.

use crate::geometry::{rat_int, Point2, Rat};
use crate::model::{Drawing, FMBigraph};
use crate::reductions::SatInstance;
use crate::skeleton::{classify_intersection_graph, GxClass};
use crate::strip::{Strip, StripSet};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {field}: {message}")]
    Schema { field: String, message: String },
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

fn schema(field: &str, message: impl Into<String>) -> IoError {
    IoError::Schema {
        field: field.to_string(),
        message: message.into(),
    }
}

/// Parse an exact rational from its JSON encodings.
pub fn parse_rational(v: &Value, field: &str) -> Result<Rat, IoError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rat_int(i))
            } else {
                Err(schema(field, "only integer JSON numbers are exact; use a string"))
            }
        }
        Value::String(s) => parse_decimal(s).ok_or_else(|| schema(field, format!("bad decimal '{s}'"))),
        Value::Array(parts) if parts.len() == 2 => {
            let num = parts[0]
                .as_str()
                .ok_or_else(|| schema(field, "numerator must be an integer string"))?;
            let den = parts[1]
                .as_str()
                .ok_or_else(|| schema(field, "denominator must be an integer string"))?;
            let n = BigInt::from_str(num).map_err(|e| schema(field, e.to_string()))?;
            let d = BigInt::from_str(den).map_err(|e| schema(field, e.to_string()))?;
            if d.is_zero() {
                return Err(schema(field, "denominator is zero"));
            }
            Ok(Rat::new(n, d))
        }
        _ => Err(schema(field, "expected decimal string, [num, den] pair, or integer")),
    }
}

fn parse_decimal(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits.is_empty() { "0".to_string() } else { digits };
    let numer = BigInt::from_str(&digits).ok()?;
    let denom = BigInt::from(10u8).pow(frac_part.len() as u32);
    Some(Rat::new(numer * sign, denom))
}

/// Canonical JSON form of a rational: reduced `[num, den]` strings.
pub fn rational_to_json(r: &Rat) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

fn point_to_json(p: &Point2) -> Value {
    json!([rational_to_json(&p.x), rational_to_json(&p.y)])
}

fn parse_point(v: &Value, field: &str) -> Result<Point2, IoError> {
    let arr = v
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| schema(field, "expected [x, y]"))?;
    Ok(Point2::new(
        parse_rational(&arr[0], field)?,
        parse_rational(&arr[1], field)?,
    ))
}

/// A parsed instance file: the bigraph plus optional strips.
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub graph: FMBigraph,
    pub strips: Option<StripSet>,
}

/// Parse and validate an instance file.
pub fn parse_instance(bytes: &[u8]) -> Result<ParsedInstance, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|e| IoError::Parse(e.to_string()))?;
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("$", "instance must be a JSON object"))?;

    let mut fixed = Vec::new();
    for (i, f) in obj
        .get("fixed")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("fixed", "missing array"))?
        .iter()
        .enumerate()
    {
        let field = format!("fixed[{i}]");
        let fo = f.as_object().ok_or_else(|| schema(&field, "expected object"))?;
        let id = fo
            .get("id")
            .and_then(Value::as_str)
            .ok_or_else(|| schema(&field, "missing id"))?;
        if id.contains(':') {
            return Err(schema(&field, "ids may not contain ':'"));
        }
        let x = parse_rational(fo.get("x").ok_or_else(|| schema(&field, "missing x"))?, &field)?;
        let y = parse_rational(fo.get("y").ok_or_else(|| schema(&field, "missing y"))?, &field)?;
        fixed.push((id.to_string(), Point2::new(x, y)));
    }
    let mut mobile = Vec::new();
    for (i, m) in obj
        .get("mobile")
        .and_then(Value::as_array)
        .map(|a| a.as_slice())
        .unwrap_or(&[])
        .iter()
        .enumerate()
    {
        let field = format!("mobile[{i}]");
        let id = m
            .as_object()
            .and_then(|mo| mo.get("id"))
            .and_then(Value::as_str)
            .ok_or_else(|| schema(&field, "expected {{id}}"))?;
        if id.contains(':') {
            return Err(schema(&field, "ids may not contain ':'"));
        }
        mobile.push(id.to_string());
    }
    let mut edges = Vec::new();
    for (i, e) in obj
        .get("edges")
        .and_then(Value::as_array)
        .map(|a| a.as_slice())
        .unwrap_or(&[])
        .iter()
        .enumerate()
    {
        let field = format!("edges[{i}]");
        let pair = e
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| schema(&field, "expected [fixed_id, mobile_id]"))?;
        let fid = pair[0]
            .as_str()
            .ok_or_else(|| schema(&field, "fixed id must be a string"))?;
        let mid = pair[1]
            .as_str()
            .ok_or_else(|| schema(&field, "mobile id must be a string"))?;
        edges.push((fid.to_string(), mid.to_string()));
    }
    let graph = FMBigraph::new(fixed, mobile, edges);
    let report = crate::model::validate_instance(&graph);
    if !report.planar {
        return Err(IoError::Invariant(format!("{:?}", report.violations[0])));
    }
    let strips = match obj.get("strips") {
        None => None,
        Some(Value::Array(list)) => {
            let mut strips = Vec::new();
            for (i, s) in list.iter().enumerate() {
                let field = format!("strips[{i}]");
                let so = s.as_object().ok_or_else(|| schema(&field, "expected object"))?;
                let y_top = parse_rational(
                    so.get("y_top").ok_or_else(|| schema(&field, "missing y_top"))?,
                    &field,
                )?;
                let y_bottom = parse_rational(
                    so.get("y_bottom")
                        .ok_or_else(|| schema(&field, "missing y_bottom"))?,
                    &field,
                )?;
                strips.push(Strip { y_top, y_bottom });
            }
            Some(StripSet::new(strips).map_err(|e| IoError::Invariant(e.to_string()))?)
        }
        Some(_) => return Err(schema("strips", "expected array")),
    };
    Ok(ParsedInstance { graph, strips })
}

/// Canonical JSON of an instance (ids in stored order, rationals reduced).
pub fn instance_to_json(g: &FMBigraph, strips: Option<&StripSet>) -> Value {
    let mut root = Map::new();
    root.insert(
        "fixed".into(),
        Value::Array(
            g.fixed
                .iter()
                .map(|f| {
                    json!({
                        "id": f.id,
                        "x": rational_to_json(&f.pos.x),
                        "y": rational_to_json(&f.pos.y),
                    })
                })
                .collect(),
        ),
    );
    root.insert(
        "mobile".into(),
        Value::Array(g.mobile.iter().map(|m| json!({ "id": m })).collect()),
    );
    root.insert(
        "edges".into(),
        Value::Array(
            g.canonical_edges()
                .iter()
                .map(|(f, m)| json!([f, m]))
                .collect(),
        ),
    );
    if let Some(strips) = strips {
        root.insert(
            "strips".into(),
            Value::Array(
                strips
                    .strips()
                    .iter()
                    .map(|s| {
                        json!({
                            "y_top": rational_to_json(&s.y_top),
                            "y_bottom": rational_to_json(&s.y_bottom),
                        })
                    })
                    .collect(),
            ),
        );
    }
    Value::Object(root)
}

/// Parse a drawing file.
pub fn parse_drawing(bytes: &[u8]) -> Result<Drawing, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|e| IoError::Parse(e.to_string()))?;
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| schema("$", "drawing must be a JSON object"))?;
    let mut d = Drawing::default();
    for (id, pos) in obj
        .get("positions")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("positions", "missing object"))?
    {
        d.positions
            .insert(id.clone(), parse_point(pos, &format!("positions.{id}"))?);
    }
    if let Some(bends) = obj.get("bends") {
        for (key, list) in bends
            .as_object()
            .ok_or_else(|| schema("bends", "expected object"))?
        {
            let (fid, mid) = key
                .split_once(':')
                .ok_or_else(|| schema("bends", format!("bad edge key '{key}'")))?;
            let pts = list
                .as_array()
                .ok_or_else(|| schema("bends", "expected list of points"))?
                .iter()
                .map(|p| parse_point(p, &format!("bends.{key}")))
                .collect::<Result<Vec<_>, _>>()?;
            d.bends.insert((fid.to_string(), mid.to_string()), pts);
        }
    }
    Ok(d)
}

pub fn drawing_to_json(d: &Drawing) -> Value {
    let mut positions = Map::new();
    for (id, p) in &d.positions {
        positions.insert(id.clone(), point_to_json(p));
    }
    let mut bends = Map::new();
    for ((f, m), pts) in &d.bends {
        bends.insert(
            format!("{f}:{m}"),
            Value::Array(pts.iter().map(point_to_json).collect()),
        );
    }
    json!({ "positions": positions, "bends": bends })
}

fn f64_of(r: &Rat) -> f64 {
    let n = r.numer().to_string().parse::<f64>().unwrap_or(0.0);
    let d = r.denom().to_string().parse::<f64>().unwrap_or(1.0);
    n / d
}

/// Deterministic SVG rendering: shaded strips, edge polylines with bend
/// dots, filled fixed vertices, hollow mobiles. Byte-identical output for
/// identical input.
pub fn render_svg(g: &FMBigraph, d: Option<&Drawing>, strips: Option<&StripSet>) -> String {
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    for f in &g.fixed {
        xs.push(f64_of(&f.pos.x));
        ys.push(f64_of(&f.pos.y));
    }
    if let Some(d) = d {
        for p in d.positions.values() {
            xs.push(f64_of(&p.x));
            ys.push(f64_of(&p.y));
        }
        for pts in d.bends.values() {
            for p in pts {
                xs.push(f64_of(&p.x));
                ys.push(f64_of(&p.y));
            }
        }
    }
    if let Some(s) = strips {
        for st in s.strips() {
            ys.push(f64_of(&st.y_top));
            ys.push(f64_of(&st.y_bottom));
        }
    }
    let (min_x, max_x) = bounds(&xs);
    let (min_y, max_y) = bounds(&ys);
    let pad = 1.0_f64.max((max_x - min_x).max(max_y - min_y) * 0.08);
    let (x0, x1) = (min_x - pad, max_x + pad);
    let (y0, y1) = (min_y - pad, max_y + pad);
    let scale = 640.0 / (x1 - x0).max(1e-9);
    let width = 640.0;
    let height = ((y1 - y0) * scale).max(64.0);
    let tx = |x: f64| (x - x0) * scale;
    let ty = |y: f64| height - (y - y0) * scale;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">\n"
    ));
    // Axes through the origin region.
    out.push_str(&format!(
        "  <line x1=\"0\" y1=\"{0:.2}\" x2=\"{width:.2}\" y2=\"{0:.2}\" stroke=\"#ddd\" stroke-width=\"1\"/>\n",
        ty(0.0)
    ));
    out.push_str(&format!(
        "  <line x1=\"{0:.2}\" y1=\"0\" x2=\"{0:.2}\" y2=\"{height:.2}\" stroke=\"#ddd\" stroke-width=\"1\"/>\n",
        tx(0.0)
    ));
    if let Some(s) = strips {
        for st in s.strips() {
            let top = ty(f64_of(&st.y_top));
            let bot = ty(f64_of(&st.y_bottom));
            out.push_str(&format!(
                "  <rect x=\"0\" y=\"{top:.2}\" width=\"{width:.2}\" height=\"{h:.2}\" fill=\"#e8e8f6\"/>\n",
                h = bot - top
            ));
        }
    }
    if let Some(d) = d {
        for e in g.canonical_edges() {
            if let Some(poly) = d.polyline(&e) {
                let pts: Vec<String> = poly
                    .iter()
                    .map(|p| format!("{:.2},{:.2}", tx(f64_of(&p.x)), ty(f64_of(&p.y))))
                    .collect();
                out.push_str(&format!(
                    "  <polyline points=\"{}\" fill=\"none\" stroke=\"#333\" stroke-width=\"1.5\"/>\n",
                    pts.join(" ")
                ));
                for b in &poly[1..poly.len() - 1] {
                    out.push_str(&format!(
                        "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2\" fill=\"#999\"/>\n",
                        tx(f64_of(&b.x)),
                        ty(f64_of(&b.y))
                    ));
                }
            }
        }
        let mut mobiles: Vec<&String> = g.mobile.iter().collect();
        mobiles.sort();
        for m in mobiles {
            if let Some(p) = d.positions.get(m) {
                out.push_str(&format!(
                    "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"white\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n",
                    tx(f64_of(&p.x)),
                    ty(f64_of(&p.y))
                ));
            }
        }
    }
    for f in &g.fixed {
        out.push_str(&format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"4\" fill=\"#236\"/>\n",
            tx(f64_of(&f.pos.x)),
            ty(f64_of(&f.pos.y))
        ));
    }
    out.push_str("</svg>\n");
    out
}

fn bounds(vals: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in vals {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else {
        (lo, hi)
    }
}

/// Kinds of random instances the generator produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Collinear,
    ConvexHullCactus,
    Strip { h: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub fixed: usize,
    pub mobile: usize,
}

/// Seed-reproducible instance generation. The convex-hull flavor retries
/// until the intersection graph falls into the cactus family (bounded
/// retries) and reports the class it hit.
pub fn generate_random(
    kind: GenKind,
    seed: u64,
    params: GenParams,
) -> Result<(FMBigraph, Option<StripSet>, String), IoError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        GenKind::Collinear => {
            let g = gen_collinear(&mut rng, params);
            Ok((g, None, "collinear".to_string()))
        }
        GenKind::ConvexHullCactus => gen_cactus(&mut rng, params),
        GenKind::Strip { h } => gen_strip(&mut rng, params, h),
    }
}

fn gen_collinear(rng: &mut ChaCha8Rng, params: GenParams) -> FMBigraph {
    let n_f = params.fixed.max(1);
    let fixed: Vec<(String, Point2)> = (0..n_f)
        .map(|i| (format!("f{i}"), Point2::from_ints(i as i64, 0)))
        .collect();
    let mut mobile = Vec::new();
    let mut edges = Vec::new();
    for j in 0..params.mobile {
        let m = format!("m{j}");
        for i in 0..n_f {
            if rng.gen_bool(0.45) {
                edges.push((format!("f{i}"), m.clone()));
            }
        }
        mobile.push(m);
    }
    FMBigraph::new(fixed, mobile, edges)
}

pub(crate) fn gen_cactus_attempt(
    rng: &mut ChaCha8Rng,
    params: GenParams,
) -> Option<FMBigraph> {
    let n_f = params.fixed.max(3);
    let span = (3 * n_f) as i64;
    let mut points = BTreeSet::new();
    while points.len() < n_f {
        points.insert((rng.gen_range(0..=span), rng.gen_range(0..=span)));
    }
    let fixed: Vec<(String, Point2)> = points
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| (format!("f{i}"), Point2::from_ints(x, y)))
        .collect();
    let mut mobile = Vec::new();
    let mut edges = Vec::new();
    for j in 0..params.mobile {
        let m = format!("m{j}");
        let deg = rng.gen_range(3..=3.max(n_f.min(4)));
        let mut picked = BTreeSet::new();
        let mut guard = 0;
        while picked.len() < deg && guard < 100 {
            picked.insert(rng.gen_range(0..n_f));
            guard += 1;
        }
        if picked.len() < 3 {
            return None;
        }
        // The hull must be full-dimensional.
        let pts: Vec<Point2> = picked
            .iter()
            .map(|&i| fixed[i].1.clone())
            .collect();
        if crate::geometry::convex_hull(&pts).polygon().is_none() {
            return None;
        }
        for i in picked {
            edges.push((format!("f{i}"), m.clone()));
        }
        mobile.push(m);
    }
    Some(FMBigraph::new(fixed, mobile, edges))
}

fn gen_cactus(
    rng: &mut ChaCha8Rng,
    params: GenParams,
) -> Result<(FMBigraph, Option<StripSet>, String), IoError> {
    const ATTEMPTS: usize = 300;
    for _ in 0..ATTEMPTS {
        let Some(g) = gen_cactus_attempt(rng, params) else {
            continue;
        };
        let Ok(gx) = crate::cellgraph::build_intersection_graph(&g) else {
            continue;
        };
        let mut classes = Vec::new();
        let mut cactus_family = true;
        for comp in gx.components() {
            let (_, sub) = crate::skeleton::restrict_to_component(&Default::default(), &gx, &comp);
            let class = classify_intersection_graph(&sub);
            if class == GxClass::Other {
                cactus_family = false;
            }
            classes.push(class);
        }
        if cactus_family {
            let label = classes
                .iter()
                .map(|c| format!("{c:?}"))
                .collect::<Vec<_>>()
                .join("+");
            return Ok((g, None, label));
        }
    }
    Err(IoError::GenerationFailed(format!(
        "no cactus-family instance within {ATTEMPTS} attempts"
    )))
}

fn gen_strip(
    rng: &mut ChaCha8Rng,
    params: GenParams,
    h: usize,
) -> Result<(FMBigraph, Option<StripSet>, String), IoError> {
    let h = h.max(1);
    let n_f = params.fixed.max(h);
    // Distinct x throughout; y levels 0, 4, 8, ... with every level hit.
    let mut levels: Vec<usize> = (0..n_f)
        .map(|i| if i < h { i } else { rng.gen_range(0..h) })
        .collect();
    for i in (1..levels.len()).rev() {
        levels.swap(i, rng.gen_range(0..=i));
    }
    let fixed: Vec<(String, Point2)> = levels
        .iter()
        .enumerate()
        .map(|(i, &lvl)| {
            (
                format!("f{i}"),
                Point2::from_ints(i as i64, (h - 1 - lvl) as i64 * 4),
            )
        })
        .collect();
    let strips = StripSet::new(
        (0..h)
            .map(|lvl| {
                let y = ((h - 1 - lvl) * 4) as i64;
                Strip {
                    y_top: rat_int(y + 1),
                    y_bottom: rat_int(y - 1),
                }
            })
            .collect(),
    )
    .map_err(|e| IoError::Invariant(e.to_string()))?;
    let mut mobile = Vec::new();
    let mut edges = Vec::new();
    for j in 0..params.mobile {
        let m = format!("m{j}");
        let deg = rng.gen_range(1..=3.min(n_f));
        let mut picked = BTreeSet::new();
        if rng.gen_bool(0.6) && h >= 1 {
            // Local flavor: neighbors from one or two consecutive levels.
            let base = rng.gen_range(0..h);
            let allow_next = rng.gen_bool(0.5) && base + 1 < h;
            let pool: Vec<usize> = (0..n_f)
                .filter(|&i| levels[i] == base || (allow_next && levels[i] == base + 1))
                .collect();
            if !pool.is_empty() {
                for _ in 0..deg * 3 {
                    if picked.len() >= deg {
                        break;
                    }
                    picked.insert(pool[rng.gen_range(0..pool.len())]);
                }
            }
        }
        while picked.len() < deg {
            picked.insert(rng.gen_range(0..n_f));
        }
        for i in picked {
            edges.push((format!("f{i}"), m.clone()));
        }
        mobile.push(m);
    }
    Ok((
        FMBigraph::new(fixed, mobile, edges),
        Some(strips),
        format!("strip-h{h}"),
    ))
}

/// Parse DIMACS CNF with exactly three literals per clause.
pub fn parse_dimacs(bytes: &[u8]) -> Result<SatInstance, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|e| IoError::Parse(e.to_string()))?;
    let mut var_count = 0usize;
    let mut clauses = Vec::new();
    let mut current: Vec<(usize, bool)> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let mut parts = rest.split_whitespace();
            if parts.next() != Some("cnf") {
                return Err(IoError::Parse(format!("line {}: expected 'p cnf'", ln + 1)));
            }
            var_count = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| IoError::Parse(format!("line {}: bad variable count", ln + 1)))?;
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i64 = tok
                .parse()
                .map_err(|_| IoError::Parse(format!("line {}: bad literal '{tok}'", ln + 1)))?;
            if lit == 0 {
                if current.len() != 3 {
                    return Err(IoError::Invariant(format!(
                        "clause must have exactly 3 literals, got {}",
                        current.len()
                    )));
                }
                clauses.push([current[0], current[1], current[2]]);
                current.clear();
            } else {
                let var = lit.unsigned_abs() as usize - 1;
                if var >= var_count {
                    return Err(IoError::Invariant(format!(
                        "literal {lit} exceeds declared variable count {var_count}"
                    )));
                }
                current.push((var, lit > 0));
            }
        }
    }
    if !current.is_empty() {
        return Err(IoError::Parse("unterminated clause".to_string()));
    }
    Ok(SatInstance { var_count, clauses })
}

/// Parse a simple-graph JSON `{"n": usize, "edges": [[u, v], ...]}` for the
/// planarity oracle.
pub fn parse_simple_graph(bytes: &[u8]) -> Result<crate::planarity::SimpleGraph, IoError> {
    let text = std::str::from_utf8(bytes).map_err(|e| IoError::Parse(e.to_string()))?;
    let root: Value = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let n = root
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| schema("n", "missing vertex count"))? as usize;
    let mut edges = Vec::new();
    for (i, e) in root
        .get("edges")
        .and_then(Value::as_array)
        .map(|a| a.as_slice())
        .unwrap_or(&[])
        .iter()
        .enumerate()
    {
        let field = format!("edges[{i}]");
        let pair = e
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| schema(&field, "expected [u, v]"))?;
        let u = pair[0].as_u64().ok_or_else(|| schema(&field, "bad endpoint"))? as usize;
        let v = pair[1].as_u64().ok_or_else(|| schema(&field, "bad endpoint"))? as usize;
        edges.push((u, v));
    }
    crate::planarity::SimpleGraph::new(n, &edges).map_err(|e| IoError::Invariant(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(
            parse_rational(&json!("0.25"), "t").unwrap(),
            Rat::new(BigInt::from(1), BigInt::from(4))
        );
        assert_eq!(
            parse_rational(&json!(["1", "3"]), "t").unwrap(),
            Rat::new(BigInt::from(1), BigInt::from(3))
        );
        assert_eq!(parse_rational(&json!(-7), "t").unwrap(), rat_int(-7));
        assert_eq!(parse_rational(&json!("-2.5"), "t").unwrap(), Rat::new(BigInt::from(-5), BigInt::from(2)));
        assert!(parse_rational(&json!(0.1), "t").is_err());
        assert!(parse_rational(&json!(["1", "0"]), "t").is_err());
    }

    #[test]
    fn instance_round_trip() {
        let text = br#"{
            "fixed": [{"id": "a", "x": "0", "y": "0"}, {"id": "b", "x": ["1","3"], "y": "0.5"}],
            "mobile": [{"id": "m"}],
            "edges": [["a", "m"], ["b", "m"]],
            "strips": [{"y_top": "2", "y_bottom": "-2"}]
        }"#;
        let parsed = parse_instance(text).unwrap();
        assert_eq!(parsed.graph.fixed.len(), 2);
        assert_eq!(
            parsed.graph.fixed[1].pos.x,
            Rat::new(BigInt::from(1), BigInt::from(3))
        );
        let json1 = instance_to_json(&parsed.graph, parsed.strips.as_ref());
        let reparsed = parse_instance(json1.to_string().as_bytes()).unwrap();
        let json2 = instance_to_json(&reparsed.graph, reparsed.strips.as_ref());
        assert_eq!(json1, json2);
        assert_eq!(parsed.graph, reparsed.graph);
    }

    #[test]
    fn duplicate_fixed_rejected_at_parse() {
        let text = br#"{
            "fixed": [{"id": "a", "x": "1", "y": "1"}, {"id": "b", "x": "1", "y": "1"}],
            "mobile": [], "edges": []
        }"#;
        assert!(matches!(parse_instance(text), Err(IoError::Invariant(_))));
    }

    #[test]
    fn drawing_round_trip() {
        let mut d = Drawing::default();
        d.positions
            .insert("a".into(), Point2::new(rat_int(1), Rat::new(BigInt::from(1), BigInt::from(2))));
        d.bends.insert(
            ("a".into(), "m".into()),
            vec![Point2::from_ints(3, 4)],
        );
        let j = drawing_to_json(&d);
        let d2 = parse_drawing(j.to_string().as_bytes()).unwrap();
        assert_eq!(d, d2);
    }

    #[test]
    fn svg_deterministic_and_minimal() {
        let g = FMBigraph::new(vec![], vec![], vec![]);
        let svg = render_svg(&g, None, None);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("line"));
        let g2 = FMBigraph::new(
            vec![("a".into(), Point2::from_ints(0, 0))],
            vec![],
            vec![],
        );
        let s1 = render_svg(&g2, None, None);
        let s2 = render_svg(&g2, None, None);
        assert_eq!(s1, s2);

        // Strips show up as one shaded rect each.
        let strips = crate::strip::StripSet::new(vec![
            crate::strip::Strip { y_top: rat_int(3), y_bottom: rat_int(1) },
            crate::strip::Strip { y_top: rat_int(0), y_bottom: rat_int(-2) },
        ])
        .unwrap();
        let svg = render_svg(&g2, None, Some(&strips));
        assert_eq!(svg.matches("<rect").count(), 2);
    }

    #[test]
    fn generators_reproducible() {
        let p = GenParams { fixed: 5, mobile: 3 };
        let a = generate_random(GenKind::Collinear, 42, p).unwrap();
        let b = generate_random(GenKind::Collinear, 42, p).unwrap();
        assert_eq!(a.0, b.0);
        assert!(a.0.fixed.iter().all(|f| f.pos.y.is_zero()));

        let (g, strips, label) = generate_random(GenKind::Strip { h: 2 }, 7, p).unwrap();
        let strips = strips.unwrap();
        assert_eq!(strips.len(), 2);
        assert!(strips.covers(&g).is_ok());
        assert_eq!(label, "strip-h2");

        let (g, _, label) = generate_random(GenKind::ConvexHullCactus, 3, p).unwrap();
        assert!(!label.is_empty());
        assert!(crate::cellgraph::build_intersection_graph(&g).is_ok());
    }

    #[test]
    fn dimacs_parsing() {
        let text = b"c comment\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n";
        let inst = parse_dimacs(text).unwrap();
        assert_eq!(inst.var_count, 3);
        assert_eq!(inst.clauses.len(), 2);
        assert_eq!(inst.clauses[0], [(0, true), (1, false), (2, true)]);

        let bad = b"p cnf 2 1\n1 -2 0\n";
        assert!(parse_dimacs(bad).is_err());
    }
}
