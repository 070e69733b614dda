//! End-to-end checks of the command-line surface: subcommands, exit codes,
//! JSON output, SVG emission.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fmdraw"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("fmdraw-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn gen_is_reproducible_and_parses() {
    let run = || {
        bin()
            .args(["gen", "--kind", "collinear", "--fixed", "4", "--mobile", "2", "--seed", "9", "--format", "json"])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["kind"], "collinear");
    assert!(v["instance"]["fixed"].as_array().unwrap().len() == 4);
}

#[test]
fn collinear_pipeline_and_svg() {
    let gen = bin()
        .args(["gen", "--kind", "collinear", "--fixed", "3", "--mobile", "2", "--seed", "4", "--format", "json"])
        .output()
        .unwrap();
    let inst = json_of(&gen)["instance"].to_string();
    let path = write_temp("col.json", &inst);
    let svg_path = std::env::temp_dir().join("fmdraw-cli-tests/col.svg");
    let out = bin()
        .args(["collinear", path.to_str().unwrap(), "--svg", svg_path.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    let v = json_of(&out);
    match out.status.code() {
        Some(0) => {
            assert_eq!(v["drawable"], true);
            assert!(v["drawing"]["positions"].is_object());
        }
        Some(1) => assert_eq!(v["drawable"], false),
        code => panic!("unexpected exit {code:?}"),
    }
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn validate_reports_violations_with_exit_1() {
    let path = write_temp(
        "dup.json",
        r#"{"fixed": [{"id":"a","x":"1","y":"1"}],
            "mobile": [{"id":"m"}],
            "edges": [["a","m"],["a","m"]]}"#,
    );
    let out = bin()
        .args(["validate", path.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    // Duplicate edges are an invariant error at parse time: input error.
    assert_eq!(out.status.code(), Some(3));

    let bad_drawing_inst = write_temp(
        "ok.json",
        r#"{"fixed": [{"id":"a","x":"0","y":"0"}, {"id":"b","x":"0","y":"2"}],
            "mobile": [{"id":"m1"},{"id":"m2"}],
            "edges": [["a","m1"],["b","m2"]]}"#,
    );
    let drawing = write_temp(
        "cross.json",
        r#"{"positions": {"a": ["0","0"], "b": ["0","2"], "m1": ["2","2"], "m2": ["2","0"]},
            "bends": {}}"#,
    );
    let out = bin()
        .args([
            "validate",
            bad_drawing_inst.to_str().unwrap(),
            "--drawing",
            drawing.to_str().unwrap(),
            "--format",
            "json",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["planar"], false);
    assert!(v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|s| s.as_str().unwrap().contains("EdgeCrossing")));
}

#[test]
fn oracle_planarity_exit_codes() {
    let k5 = write_temp(
        "k5.json",
        r#"{"n": 5, "edges": [[0,1],[0,2],[0,3],[0,4],[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#,
    );
    let out = bin().args(["oracle", "planarity", k5.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    let k4 = write_temp(
        "k4.json",
        r#"{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
    );
    let out = bin().args(["oracle", "planarity", k4.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let big = write_temp("big.json", r#"{"n": 13, "edges": []}"#);
    let out = bin().args(["oracle", "planarity", big.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let garbage = write_temp("garbage.json", "not json");
    let out = bin().args(["oracle", "planarity", garbage.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reduce_sat_solves_and_decodes() {
    let cnf = write_temp("f.cnf", "c tiny\np cnf 3 2\n1 -2 3 0\n-1 2 -3 0\n");
    let out = bin()
        .args(["reduce", "sat", cnf.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["satisfiable"], true);
    assert_eq!(v["assignment"].as_array().unwrap().len(), 3);

    // All eight sign patterns over three variables: unsatisfiable.
    let mut unsat = String::from("p cnf 3 8\n");
    for mask in 0..8 {
        let lit = |i: usize| {
            let var = i + 1;
            if mask & (1 << i) != 0 {
                format!("{var}")
            } else {
                format!("-{var}")
            }
        };
        unsat.push_str(&format!("{} {} {} 0\n", lit(0), lit(1), lit(2)));
    }
    let cnf = write_temp("unsat.cnf", &unsat);
    let out = bin()
        .args(["reduce", "sat", cnf.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["satisfiable"], false);
}

#[test]
fn reduce_bpsewc_transforms() {
    let file = write_temp(
        "bp.json",
        r#"{"graph": {"n": 3, "edges": [[0,1],[1,2],[0,2]]},
            "points": [[0,0],[4,0],[0,4]],
            "budget": 1}"#,
    );
    let out = bin()
        .args(["reduce", "bpsewc", file.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["instance"]["mobile"].as_array().unwrap().len(), 3);
    assert_eq!(v["instance"]["edges"].as_array().unwrap().len(), 6);
}

#[test]
fn strip_auto_search() {
    let inst = write_temp(
        "phen.json",
        r#"{"fixed": [
              {"id":"f1","x":"1","y":"2"}, {"id":"f2","x":"2","y":"2"},
              {"id":"f3","x":"3","y":"2"}, {"id":"f4","x":"4","y":"0"},
              {"id":"f5","x":"5","y":"0"}],
            "mobile": [{"id":"ma"},{"id":"mb"},{"id":"mc"}],
            "edges": [["f1","ma"],["f4","ma"],["f2","mb"],["f4","mb"],
                      ["f5","mb"],["f3","mc"],["f5","mc"]]}"#,
    );
    let out = bin()
        .args(["strip", inst.to_str().unwrap(), "--auto", "1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin()
        .args(["strip", inst.to_str().unwrap(), "--auto", "2", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["feasible"], true);
    assert_eq!(v["gaps"]["ma"], 1);
}

#[test]
fn convex_hull_verdicts() {
    let not_drawable = write_temp(
        "shared.json",
        r#"{"fixed": [{"id":"a","x":"0","y":"0"},{"id":"b","x":"6","y":"0"},{"id":"c","x":"0","y":"6"}],
            "mobile": [{"id":"u"},{"id":"v"}],
            "edges": [["a","u"],["b","u"],["c","u"],["a","v"],["b","v"],["c","v"]]}"#,
    );
    let out = bin()
        .args(["convex-hull", not_drawable.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["verdict"], "NotDrawable");

    let out = bin()
        .args(["oracle", "convex-hull", not_drawable.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = bin()
        .args(["skeleton", not_drawable.to_str().unwrap(), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["cluster_sizes"]["u"], 1);
    assert!(v["skeleton"].is_null());
}
