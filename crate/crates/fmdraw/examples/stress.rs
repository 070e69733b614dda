use fmdraw::collinear::solve_collinear;
use fmdraw::io::{generate_random, GenKind, GenParams};
use fmdraw::model::{validate_drawing, ValidationMode};
use fmdraw::strip::{construct_strip_drawing, decide_strip, StripError};
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xbeef);
    let mut strip_feasible = 0;
    let mut strip_complete = 0;
    for case in 0..2000 {
        let h = rng.gen_range(1..=3);
        let (g, strips, _) = generate_random(
            GenKind::Strip { h },
            rng.gen(),
            GenParams { fixed: rng.gen_range(h.max(2)..=9), mobile: rng.gen_range(0..=6) },
        )
        .unwrap();
        let strips = strips.unwrap();
        match decide_strip(&g, &strips) {
            Ok(Some((_, gaps))) => {
                strip_feasible += 1;
                match construct_strip_drawing(&g, &strips, &gaps) {
                    Ok(d) => {
                        let rep = validate_drawing(&g, &d, ValidationMode::Strip(&strips)).unwrap();
                        assert!(rep.planar, "case {case}: invalid construction {:?}", rep.violations.first());
                        strip_complete += 1;
                    }
                    Err(StripError::ConstructionIncomplete) => {}
                    Err(e) => panic!("case {case}: {e}"),
                }
            }
            Ok(None) => {}
            Err(e) => panic!("case {case}: {e}"),
        }
    }
    println!("strip: 2000 cases, {strip_feasible} feasible, {strip_complete} constructions validated");

    let mut col_pos = 0;
    for case in 0..2000 {
        let (g, _, _) = generate_random(
            GenKind::Collinear,
            rng.gen(),
            GenParams { fixed: rng.gen_range(1..=8), mobile: rng.gen_range(0..=10) },
        )
        .unwrap();
        match solve_collinear(&g) {
            Ok(Some((_, d))) => {
                let rep = validate_drawing(&g, &d, ValidationMode::Generic).unwrap();
                assert!(rep.planar, "case {case}: {:?}", rep.violations.first());
                col_pos += 1;
            }
            Ok(None) => {}
            Err(e) => panic!("case {case}: {e}"),
        }
    }
    println!("collinear: 2000 cases, {col_pos} positives constructed and validated");
}
