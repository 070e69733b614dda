//! Command-line surface: decide, construct, validate and render planar
//! drawings of fixed-mobile bigraphs.
//!
//! Exit codes: 0 drawable/feasible, 1 not drawable/infeasible,
//! 2 unsupported, 3 input error.

use clap::{Parser, Subcommand, ValueEnum};
use fmdraw::cellgraph::{build_cell_graph, build_intersection_graph};
use fmdraw::collinear::{check_collinear, construct_collinear_drawing, decide_collinear};
use fmdraw::driver::{brute_force_convex_hull, solve_convex_hull, HullVerdict, DEFAULT_CAP};
use fmdraw::io::{
    drawing_to_json, generate_random, instance_to_json, parse_dimacs, parse_drawing,
    parse_instance, parse_simple_graph, render_svg, GenKind, GenParams, ParsedInstance,
};
use fmdraw::model::{validate_drawing, validate_instance, Drawing, FMBigraph, ValidationMode};
use fmdraw::planarity::oracle_is_planar;
use fmdraw::reductions::{
    bpsewc_to_fm, sat_to_skeleton, skeleton_to_assignment, BpsewcInstance,
};
use fmdraw::skeleton::{brute_force_skeleton, solve_skeleton, SkeletonError};
use fmdraw::strip::{
    build_augmented_graph, classify_vertices, construct_strip_drawing, decide_strip,
    enumerate_strip_partitions, StripError, StripSet,
};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fmdraw", version, about = "Planar drawings of fixed-mobile bigraphs")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write an SVG rendering of the instance (and drawing, if any) here.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Seed for generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap for brute-force procedures.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance file, or a drawing of it.
    Validate {
        instance: PathBuf,
        /// Drawing file to validate against the instance.
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Generic)]
        mode: Mode,
    },
    /// Decide 0-bend drawability for collinear fixed vertices and construct
    /// a witness drawing.
    Collinear { instance: PathBuf },
    /// Decide 0-bend convex-hull drawability via the cell-graph skeleton.
    ConvexHull { instance: PathBuf },
    /// Decide 1-bend drawability within the instance's strips, or search
    /// over all partitions into a given number of strips.
    Strip {
        instance: PathBuf,
        /// Enumerate all partitions of the fixed vertices into this many
        /// strips instead of using the strips from the file.
        #[arg(long)]
        auto: Option<usize>,
    },
    /// Build and solve the clustered cell graph of an instance.
    Skeleton { instance: PathBuf },
    /// Hardness reductions as instance transformations.
    Reduce {
        #[command(subcommand)]
        what: ReduceCommand,
    },
    /// Generate a random instance.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 5)]
        fixed: usize,
        #[arg(long, default_value_t = 3)]
        mobile: usize,
        /// Number of strips for the strip kind.
        #[arg(long, default_value_t = 2)]
        strips: usize,
    },
    /// Brute-force oracles.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Generic,
    Strip,
    ConvexHull,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Collinear,
    ConvexHullCactus,
    Strip,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Transform a point-set-embedding instance into a fixed-mobile one.
    Bpsewc { file: PathBuf },
    /// Build the skeleton gadget of a DIMACS 3SAT formula and solve it.
    Sat { file: PathBuf },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Kuratowski-subdivision planarity on a simple-graph JSON file.
    Planarity { graph: PathBuf },
    /// Exhaustive skeleton search on an instance.
    Skeleton { instance: PathBuf },
    /// Placement enumeration for the convex-hull model.
    ConvexHull { instance: PathBuf },
    /// Kuratowski planarity of the strip model's augmented graph.
    Strip { instance: PathBuf },
}

enum Outcome {
    Feasible(Value),
    Infeasible(Value),
    Unsupported(Value),
    InputError(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let (code, value) = match outcome {
        Outcome::Feasible(v) => (0u8, v),
        Outcome::Infeasible(v) => (1, v),
        Outcome::Unsupported(v) => (2, v),
        Outcome::InputError(msg) => (3, json!({ "error": msg })),
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        Format::Text => print_text(&value, 0),
    }
    ExitCode::from(code)
}

fn print_text(v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}{k}:");
                        print_text(val, indent + 1);
                    }
                    _ => println!("{pad}{k}: {val}"),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => print_text(item, indent),
                    _ => println!("{pad}- {item}"),
                }
            }
        }
        other => println!("{pad}{other}"),
    }
}

fn read(path: &PathBuf) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_instance(path: &PathBuf) -> Result<ParsedInstance, String> {
    let bytes = read(path)?;
    parse_instance(&bytes).map_err(|e| e.to_string())
}

fn write_svg(
    cli: &Cli,
    g: &FMBigraph,
    d: Option<&Drawing>,
    strips: Option<&StripSet>,
) -> Result<(), String> {
    if let Some(path) = &cli.svg {
        let svg = render_svg(g, d, strips);
        std::fs::write(path, svg).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate {
            instance,
            drawing,
            mode,
        } => {
            let parsed = match load_instance(instance) {
                Ok(p) => p,
                Err(e) => return Outcome::InputError(e),
            };
            match drawing {
                None => {
                    let report = validate_instance(&parsed.graph);
                    let value = json!({
                        "command": "validate",
                        "planar": report.planar,
                        "violations": report.violations.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>(),
                    });
                    let _ = write_svg(cli, &parsed.graph, None, parsed.strips.as_ref());
                    if report.planar {
                        Outcome::Feasible(value)
                    } else {
                        Outcome::Infeasible(value)
                    }
                }
                Some(dpath) => {
                    let d = match read(dpath).and_then(|b| parse_drawing(&b).map_err(|e| e.to_string())) {
                        Ok(d) => d,
                        Err(e) => return Outcome::InputError(e),
                    };
                    let vmode = match mode {
                        Mode::Generic => ValidationMode::Generic,
                        Mode::ConvexHull => ValidationMode::ConvexHull,
                        Mode::Strip => match &parsed.strips {
                            Some(s) => ValidationMode::Strip(s),
                            None => {
                                return Outcome::InputError(
                                    "strip mode needs strips in the instance file".to_string(),
                                )
                            }
                        },
                    };
                    match validate_drawing(&parsed.graph, &d, vmode) {
                        Err(e) => Outcome::InputError(e.to_string()),
                        Ok(report) => {
                            let value = json!({
                                "command": "validate",
                                "planar": report.planar,
                                "violations": report.violations.iter().map(|v| format!("{v:?}")).collect::<Vec<_>>(),
                            });
                            let _ = write_svg(cli, &parsed.graph, Some(&d), parsed.strips.as_ref());
                            if report.planar {
                                Outcome::Feasible(value)
                            } else {
                                Outcome::Infeasible(value)
                            }
                        }
                    }
                }
            }
        }
        Command::Collinear { instance } => {
            let parsed = match load_instance(instance) {
                Ok(p) => p,
                Err(e) => return Outcome::InputError(e),
            };
            let cert = match check_collinear(&parsed.graph) {
                Ok(c) => c,
                Err(e) => return Outcome::Unsupported(json!({ "command": "collinear", "reason": e.to_string() })),
            };
            match decide_collinear(&parsed.graph, &cert) {
                Err(e) => Outcome::InputError(e.to_string()),
                Ok(None) => Outcome::Infeasible(json!({
                    "command": "collinear",
                    "drawable": false,
                })),
                Ok(Some(sides)) => match construct_collinear_drawing(&parsed.graph, &cert, &sides) {
                    Err(e) => Outcome::InputError(e.to_string()),
                    Ok(d) => {
                        let _ = write_svg(cli, &parsed.graph, Some(&d), None);
                        Outcome::Feasible(json!({
                            "command": "collinear",
                            "drawable": true,
                            "sides": sides.sides.iter().map(|(m, s)| (m.clone(), format!("{s:?}"))).collect::<std::collections::BTreeMap<_,_>>(),
                            "drawing": drawing_to_json(&d),
                        }))
                    }
                },
            }
        }
        Command::ConvexHull { instance } => {
            let parsed = match load_instance(instance) {
                Ok(p) => p,
                Err(e) => return Outcome::InputError(e),
            };
            match solve_convex_hull(&parsed.graph, cli.cap) {
                Err(e) => Outcome::InputError(e.to_string()),
                Ok(sol) => {
                    let value = json!({
                        "command": "convex-hull",
                        "verdict": format!("{:?}", sol.verdict),
                        "classes": sol.diagnostics.components.iter()
                            .map(|(nodes, class)| json!({ "nodes": nodes, "class": format!("{class:?}") }))
                            .collect::<Vec<_>>(),
                        "cluster_sizes": sol.diagnostics.cluster_sizes,
                        "skeleton": sol.skeleton.as_ref().map(|s| s.selection.clone()),
                        "drawing": sol.drawing.as_ref().map(drawing_to_json),
                    });
                    let _ = write_svg(cli, &parsed.graph, sol.drawing.as_ref(), None);
                    match sol.verdict {
                        HullVerdict::Drawable => Outcome::Feasible(value),
                        HullVerdict::NotDrawable => Outcome::Infeasible(value),
                        HullVerdict::Unsupported => Outcome::Unsupported(value),
                    }
                }
            }
        }
        Command::Strip { instance, auto } => {
            let parsed = match load_instance(instance) {
                Ok(p) => p,
                Err(e) => return Outcome::InputError(e),
            };
            let (strips, decision) = match auto {
                Some(h) => match enumerate_strip_partitions(&parsed.graph, *h) {
                    Ok(hit) => (hit.strips.clone(), (hit.classification, hit.gaps)),
                    Err(StripError::InfeasibleForAllPartitions(_)) => {
                        return Outcome::Infeasible(json!({
                            "command": "strip",
                            "feasible": false,
                            "auto": h,
                        }))
                    }
                    Err(e) => return Outcome::InputError(e.to_string()),
                },
                None => {
                    let strips = match &parsed.strips {
                        Some(s) => s.clone(),
                        None => return Outcome::InputError("instance file has no strips".to_string()),
                    };
                    match decide_strip(&parsed.graph, &strips) {
                        Err(e) => return Outcome::InputError(e.to_string()),
                        Ok(None) => {
                            return Outcome::Infeasible(json!({
                                "command": "strip",
                                "feasible": false,
                            }))
                        }
                        Ok(Some(hit)) => (strips, hit),
                    }
                }
            };
            let (cls, gaps) = decision;
            let construction = construct_strip_drawing(&parsed.graph, &strips, &gaps);
            let (drawing_json, complete) = match &construction {
                Ok(d) => {
                    let _ = write_svg(cli, &parsed.graph, Some(d), Some(&strips));
                    (Some(drawing_to_json(d)), true)
                }
                Err(_) => {
                    let _ = write_svg(cli, &parsed.graph, None, Some(&strips));
                    (None, false)
                }
            };
            Outcome::Feasible(json!({
                "command": "strip",
                "feasible": true,
                "strips": instance_to_json(&parsed.graph, Some(&strips))["strips"],
                "classes": cls.classes.iter().map(|(m, c)| (m.clone(), format!("{c:?}"))).collect::<std::collections::BTreeMap<_,_>>(),
                "gaps": gaps.gaps,
                "construction_complete": complete,
                "drawing": drawing_json,
            }))
        }
        Command::Skeleton { instance } => {
            let parsed = match load_instance(instance) {
                Ok(p) => p,
                Err(e) => return Outcome::InputError(e),
            };
            let gx = match build_intersection_graph(&parsed.graph) {
                Ok(gx) => gx,
                Err(e) => return Outcome::InputError(e.to_string()),
            };
            let arr = match fmdraw::arrangement::build_arrangement(&parsed.graph) {
                Ok(a) => a,
                Err(e) => return Outcome::InputError(e.to_string()),
            };
            let cg = match build_cell_graph(&parsed.graph, &arr) {
                Ok(cg) => cg,
                Err(e) => return Outcome::InputError(e.to_string()),
            };
            let mut dump = json!({
                "command": "skeleton",
                "intersection_graph": {
                    "nodes": gx.nodes,
                    "edges": gx.edges.iter().cloned().collect::<Vec<_>>(),
                },
                "cluster_sizes": cg.clusters.iter().map(|(k, v)| (k.clone(), v.len())).collect::<std::collections::BTreeMap<_,_>>(),
                "adjacency": cg.adjacency.iter()
                    .map(|((u, v), set)| json!({
                        "clusters": [u, v],
                        "pairs": set.iter().cloned().collect::<Vec<_>>(),
                    }))
                    .collect::<Vec<_>>(),
            });
            match solve_skeleton(&cg, &gx, cli.cap) {
                Err(SkeletonError::Unsupported) => Outcome::Unsupported(dump),
                Err(e) => Outcome::InputError(e.to_string()),
                Ok(None) => {
                    dump["skeleton"] = Value::Null;
                    Outcome::Infeasible(dump)
                }
                Ok(Some(s)) => {
                    dump["skeleton"] = json!(s.selection);
                    Outcome::Feasible(dump)
                }
            }
        }
        Command::Reduce { what } => match what {
            ReduceCommand::Bpsewc { file } => {
                let inst = match read(file).and_then(|b| parse_bpsewc(&b)) {
                    Ok(i) => i,
                    Err(e) => return Outcome::InputError(e),
                };
                let fm = bpsewc_to_fm(&inst);
                let _ = write_svg(cli, &fm, None, None);
                Outcome::Feasible(json!({
                    "command": "reduce-bpsewc",
                    "instance": instance_to_json(&fm, None),
                    "bend_budget": inst.bend_budget,
                }))
            }
            ReduceCommand::Sat { file } => {
                let psi = match read(file).and_then(|b| parse_dimacs(&b).map_err(|e| e.to_string())) {
                    Ok(p) => p,
                    Err(e) => return Outcome::InputError(e),
                };
                let (gx, cg, labels) = sat_to_skeleton(&psi);
                let mut dump = json!({
                    "command": "reduce-sat",
                    "variables": psi.var_count,
                    "clauses": psi.clauses.len(),
                    "intersection_graph": {
                        "nodes": gx.nodes,
                        "edges": gx.edges.iter().cloned().collect::<Vec<_>>(),
                    },
                    "cluster_sizes": cg.clusters.iter().map(|(k, v)| (k.clone(), v.len())).collect::<std::collections::BTreeMap<_,_>>(),
                });
                match brute_force_skeleton(&cg, &gx, cli.cap) {
                    Err(SkeletonError::CapExceeded { .. }) => Outcome::Unsupported(dump),
                    Err(e) => Outcome::InputError(e.to_string()),
                    Ok(None) => {
                        dump["satisfiable"] = json!(false);
                        Outcome::Infeasible(dump)
                    }
                    Ok(Some(s)) => {
                        let assignment = match skeleton_to_assignment(&psi, &labels, &s) {
                            Ok(a) => a,
                            Err(e) => return Outcome::InputError(e.to_string()),
                        };
                        debug_assert!(psi.evaluate(&assignment));
                        dump["satisfiable"] = json!(true);
                        dump["assignment"] = json!(assignment);
                        Outcome::Feasible(dump)
                    }
                }
            }
        },
        Command::Gen {
            kind,
            fixed,
            mobile,
            strips,
        } => {
            let gk = match kind {
                Kind::Collinear => GenKind::Collinear,
                Kind::ConvexHullCactus => GenKind::ConvexHullCactus,
                Kind::Strip => GenKind::Strip { h: *strips },
            };
            match generate_random(
                gk,
                cli.seed,
                GenParams {
                    fixed: *fixed,
                    mobile: *mobile,
                },
            ) {
                Err(e) => Outcome::InputError(e.to_string()),
                Ok((g, s, label)) => {
                    let _ = write_svg(cli, &g, None, s.as_ref());
                    Outcome::Feasible(json!({
                        "command": "gen",
                        "kind": label,
                        "seed": cli.seed,
                        "instance": instance_to_json(&g, s.as_ref()),
                    }))
                }
            }
        }
        Command::Oracle { what } => match what {
            OracleCommand::Planarity { graph } => {
                let g = match read(graph).and_then(|b| parse_simple_graph(&b).map_err(|e| e.to_string())) {
                    Ok(g) => g,
                    Err(e) => return Outcome::InputError(e),
                };
                match oracle_is_planar(&g) {
                    Err(e) => Outcome::Unsupported(json!({ "command": "oracle-planarity", "reason": e.to_string() })),
                    Ok(planar) => {
                        let v = json!({ "command": "oracle-planarity", "planar": planar });
                        if planar {
                            Outcome::Feasible(v)
                        } else {
                            Outcome::Infeasible(v)
                        }
                    }
                }
            }
            OracleCommand::Skeleton { instance } => {
                let parsed = match load_instance(instance) {
                    Ok(p) => p,
                    Err(e) => return Outcome::InputError(e),
                };
                let arr = match fmdraw::arrangement::build_arrangement(&parsed.graph) {
                    Ok(a) => a,
                    Err(e) => return Outcome::InputError(e.to_string()),
                };
                let (gx, cg) = match build_intersection_graph(&parsed.graph)
                    .and_then(|gx| build_cell_graph(&parsed.graph, &arr).map(|cg| (gx, cg)))
                {
                    Ok(p) => p,
                    Err(e) => return Outcome::InputError(e.to_string()),
                };
                match brute_force_skeleton(&cg, &gx, cli.cap) {
                    Err(SkeletonError::CapExceeded { .. }) => {
                        Outcome::Unsupported(json!({ "command": "oracle-skeleton", "reason": "cap exceeded" }))
                    }
                    Err(e) => Outcome::InputError(e.to_string()),
                    Ok(None) => Outcome::Infeasible(json!({ "command": "oracle-skeleton", "skeleton": Value::Null })),
                    Ok(Some(s)) => Outcome::Feasible(json!({ "command": "oracle-skeleton", "skeleton": s.selection })),
                }
            }
            OracleCommand::ConvexHull { instance } => {
                let parsed = match load_instance(instance) {
                    Ok(p) => p,
                    Err(e) => return Outcome::InputError(e),
                };
                match brute_force_convex_hull(&parsed.graph, cli.cap) {
                    Err(e) => Outcome::Unsupported(json!({ "command": "oracle-convex-hull", "reason": e.to_string() })),
                    Ok((verdict, d)) => {
                        let _ = write_svg(cli, &parsed.graph, d.as_ref(), None);
                        let v = json!({
                            "command": "oracle-convex-hull",
                            "verdict": format!("{verdict:?}"),
                            "drawing": d.as_ref().map(drawing_to_json),
                        });
                        match verdict {
                            HullVerdict::Drawable => Outcome::Feasible(v),
                            _ => Outcome::Infeasible(v),
                        }
                    }
                }
            }
            OracleCommand::Strip { instance } => {
                let parsed = match load_instance(instance) {
                    Ok(p) => p,
                    Err(e) => return Outcome::InputError(e),
                };
                let strips = match &parsed.strips {
                    Some(s) => s.clone(),
                    None => return Outcome::InputError("instance file has no strips".to_string()),
                };
                let cls = match classify_vertices(&parsed.graph, &strips) {
                    Ok(c) => c,
                    Err(StripError::Infeasible(_)) => {
                        return Outcome::Infeasible(json!({
                            "command": "oracle-strip",
                            "feasible": false,
                            "reason": "gray vertex spans non-consecutive strips",
                        }))
                    }
                    Err(e) => return Outcome::InputError(e.to_string()),
                };
                let aug = match build_augmented_graph(&parsed.graph, &strips, &cls) {
                    Ok(a) => a,
                    Err(e) => return Outcome::InputError(e.to_string()),
                };
                match oracle_is_planar(&aug.graph) {
                    Err(e) => Outcome::Unsupported(json!({ "command": "oracle-strip", "reason": e.to_string() })),
                    Ok(planar) => {
                        let v = json!({
                            "command": "oracle-strip",
                            "feasible": planar,
                            "augmented_vertices": aug.graph.vertex_count(),
                        });
                        if planar {
                            Outcome::Feasible(v)
                        } else {
                            Outcome::Infeasible(v)
                        }
                    }
                }
            }
        },
    }
}

/// BPSEWC input: `{"graph": {"n": .., "edges": [[u,v],..]},
/// "points": [[x,y],..], "budget": odd-int}`.
fn parse_bpsewc(bytes: &[u8]) -> Result<BpsewcInstance, String> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    let graph = root.get("graph").ok_or("missing graph")?;
    let g = parse_simple_graph(graph.to_string().as_bytes()).map_err(|e| e.to_string())?;
    let points = root
        .get("points")
        .and_then(Value::as_array)
        .ok_or("missing points")?
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let pair = p
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or(format!("points[{i}]: expected [x, y]"))?;
            Ok(fmdraw::geometry::Point2::new(
                fmdraw::io::parse_rational(&pair[0], "points").map_err(|e| e.to_string())?,
                fmdraw::io::parse_rational(&pair[1], "points").map_err(|e| e.to_string())?,
            ))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let budget = root
        .get("budget")
        .and_then(Value::as_u64)
        .ok_or("missing budget")? as usize;
    BpsewcInstance::new(g, points, budget).map_err(|e| e.to_string())
}
