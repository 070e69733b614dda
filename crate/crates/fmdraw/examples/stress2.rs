use fmdraw::cellgraph::{check_skeleton, CellGraph, CellVertex, IntersectionGraph};
use fmdraw::skeleton::{brute_force_skeleton, classify_intersection_graph, solve_cactus, GxClass, SkeletonError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn random_cactus_edges(rng: &mut ChaCha8Rng, max_nodes: usize) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut n = 1usize;
    while n < max_nodes {
        let attach = rng.gen_range(0..n);
        if rng.gen_bool(0.55) && n + 2 <= max_nodes {
            let len = rng.gen_range(3..=5).min(max_nodes - n + 1);
            if len < 3 { break; }
            let mut prev = attach;
            for _ in 0..len - 1 {
                edges.push((prev, n));
                prev = n;
                n += 1;
            }
            edges.push((prev, attach));
        } else {
            edges.push((attach, n));
            n += 1;
        }
    }
    (n, edges)
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xcafe);
    let mut done = 0;
    let mut skeletons = 0;
    while done < 3000 {
        let max_nodes = rng.gen_range(2..=10);
        let (n, edges) = random_cactus_edges(&mut rng, max_nodes);
        let names: Vec<String> = (0..n).map(|i| format!("u{i:02}")).collect();
        let mut cg = CellGraph::default();
        let mut sizes = Vec::new();
        for name in &names {
            let k = rng.gen_range(1..=6);
            sizes.push(k);
            cg.clusters.insert(
                name.clone(),
                (0..k).map(|c| CellVertex { id: format!("c{c}"), representative: None }).collect(),
            );
        }
        let p = rng.gen_range(25..95);
        let mut gx_edges = BTreeSet::new();
        for &(u, v) in &edges {
            let (a, b) = if names[u] <= names[v] { (u, v) } else { (v, u) };
            let key = (names[a].clone(), names[b].clone());
            let mut set = BTreeSet::new();
            for cu in 0..sizes[a] {
                for cv in 0..sizes[b] {
                    if rng.gen_range(0..100) < p {
                        set.insert((format!("c{cu}"), format!("c{cv}")));
                    }
                }
            }
            gx_edges.insert(key.clone());
            cg.adjacency.insert(key, set);
        }
        let gx = IntersectionGraph { nodes: names, edges: gx_edges };
        assert!(matches!(
            classify_intersection_graph(&gx),
            GxClass::Path | GxClass::Cycle | GxClass::Tree | GxClass::Cactus
        ));
        let slow = match brute_force_skeleton(&cg, &gx, 2_000_000) {
            Ok(s) => s,
            Err(SkeletonError::CapExceeded { .. }) => continue,
            Err(e) => panic!("{e}"),
        };
        let fast = solve_cactus(&cg, &gx).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "mismatch at case {done}");
        if let Some(s) = fast {
            assert!(check_skeleton(&cg, &gx, &s).unwrap());
            skeletons += 1;
        }
        done += 1;
    }
    println!("cactus stress: 3000 cases (<=10 clusters, <=6 cells), {skeletons} skeletons, solver == brute force");
}
