//! Planarity testing with combinatorial embedding extraction, plus an
//! independent small-graph oracle based on Kuratowski subdivisions.
//!
//! The embedding engine decomposes the graph into biconnected blocks and runs
//! a face-insertion algorithm on each block; block embeddings are merged at
//! cut vertices. The oracle searches exhaustively for a K5 or K3,3
//! subdivision and shares no code with the engine.

mod dmp;
mod kuratowski;

pub use kuratowski::{oracle_is_planar, oracle_is_planar_bounded, ORACLE_VERTEX_LIMIT};

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    MultiEdge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarityError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("oracle limit exceeded: {0} vertices (max {1})")]
    TooLarge(usize, usize),
}

/// An undirected simple graph over vertices `0..n`.
#[derive(Debug, Clone)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::MultiEdge(key.0, key.1));
            }
            adj[u].push(v);
            adj[v].push(u);
            edges.push(key);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        edges.sort_unstable();
        Ok(SimpleGraph { n, adj, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Connected components as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut verts = Vec::new();
            comp[start] = id;
            while let Some(u) = stack.pop() {
                verts.push(u);
                for &v in &self.adj[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        stack.push(v);
                    }
                }
            }
            verts.sort_unstable();
            out.push(verts);
        }
        out
    }

    /// Biconnected components as edge lists (Hopcroft–Tarjan).
    pub fn blocks(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut blocks = Vec::new();
        let mut edge_stack: Vec<(usize, usize)> = Vec::new();
        let mut timer = 0usize;

        // Iterative DFS; (vertex, parent, neighbor index).
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            while let Some(&mut (u, parent, ref mut idx)) = stack.last_mut() {
                if *idx < self.adj[u].len() {
                    let v = self.adj[u][*idx];
                    *idx += 1;
                    if disc[v] == usize::MAX {
                        edge_stack.push((u, v));
                        disc[v] = timer;
                        low[v] = timer;
                        timer += 1;
                        stack.push((v, u, 0));
                    } else if v != parent && disc[v] < disc[u] {
                        edge_stack.push((u, v));
                        low[u] = low[u].min(disc[v]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p] = low[p].min(low[u]);
                        if low[u] >= disc[p] {
                            // Everything pushed after (p, u) belongs to u's
                            // subtree, so pop down to and including (p, u).
                            let mut block = Vec::new();
                            while let Some(&(a, _)) = edge_stack.last() {
                                if disc[a] >= disc[u] {
                                    let (a, b) = edge_stack.pop().unwrap();
                                    block.push((a.min(b), a.max(b)));
                                } else {
                                    break;
                                }
                            }
                            if let Some((a, b)) = edge_stack.pop() {
                                debug_assert_eq!((a, b), (p, u));
                                block.push((a.min(b), a.max(b)));
                            }
                            block.sort_unstable();
                            blocks.push(block);
                        }
                    }
                }
            }
        }
        blocks.sort();
        blocks
    }
}

/// A rotation system together with its face orbits.
#[derive(Debug, Clone)]
pub struct CombinatorialEmbedding {
    /// Cyclic order of neighbors around each vertex.
    rotations: Vec<Vec<usize>>,
    /// Orbits of directed edges; each undirected edge appears once per
    /// direction over all faces.
    faces: Vec<Vec<(usize, usize)>>,
    components: usize,
    edgeless_components: usize,
}

impl CombinatorialEmbedding {
    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn faces(&self) -> &[Vec<(usize, usize)>] {
        &self.faces
    }

    /// Face count in the Euler sense `v - e + f = 1 + c`: all components
    /// share a single unbounded face.
    pub fn face_count(&self) -> usize {
        self.faces.len() + self.edgeless_components + 1 - self.components
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Recompute the face orbits from a rotation system.
    pub fn from_rotations(graph: &SimpleGraph, rotations: Vec<Vec<usize>>) -> Self {
        let faces = trace_faces(&rotations);
        let comps = graph.components();
        let edgeless = comps
            .iter()
            .filter(|c| c.iter().all(|&v| graph.degree(v) == 0))
            .count();
        CombinatorialEmbedding {
            rotations,
            faces,
            components: comps.len(),
            edgeless_components: edgeless,
        }
    }

    /// Euler and face-traversal consistency checks.
    pub fn verify(&self, graph: &SimpleGraph) -> bool {
        let v = graph.vertex_count();
        let e = graph.edge_count();
        if v + self.face_count() != 1 + self.components + e {
            return false;
        }
        // Every directed edge must occur in exactly one face orbit.
        let mut seen = BTreeSet::new();
        for face in &self.faces {
            for &(a, b) in face {
                if !graph.has_edge(a, b) || !seen.insert((a, b)) {
                    return false;
                }
            }
        }
        seen.len() == 2 * e
    }
}

/// Walk the face orbits of a rotation system. The successor of directed edge
/// `(u, v)` is `(v, w)` where `w` follows `u` in the rotation at `v`.
pub(crate) fn trace_faces(rotations: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut next_in_rot: Vec<std::collections::BTreeMap<usize, usize>> =
        Vec::with_capacity(rotations.len());
    for rot in rotations {
        let mut map = std::collections::BTreeMap::new();
        let k = rot.len();
        for i in 0..k {
            map.insert(rot[i], rot[(i + 1) % k]);
        }
        next_in_rot.push(map);
    }
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    for (u, rot) in rotations.iter().enumerate() {
        for &v in rot {
            if visited.contains(&(u, v)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (u, v);
            loop {
                face.push((a, b));
                visited.insert((a, b));
                let w = next_in_rot[b][&a];
                a = std::mem::replace(&mut b, w);
                if (a, b) == (u, v) {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

/// Linear-ish planarity decision.
pub fn is_planar(g: &SimpleGraph) -> bool {
    g.blocks().iter().all(|block| dmp::block_is_planar(block))
}

/// A combinatorial embedding of a planar graph.
pub fn planar_embedding(g: &SimpleGraph) -> Result<CombinatorialEmbedding, PlanarityError> {
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for block in g.blocks() {
        let block_rot = dmp::embed_block(&block).ok_or(PlanarityError::NotPlanar)?;
        for (v, mut rot) in block_rot {
            rotations[v].append(&mut rot);
        }
    }
    Ok(CombinatorialEmbedding::from_rotations(g, rotations))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(n, &edges).unwrap()
    }

    fn k33() -> SimpleGraph {
        let mut edges = Vec::new();
        for u in 0..3 {
            for v in 3..6 {
                edges.push((u, v));
            }
        }
        SimpleGraph::new(6, &edges).unwrap()
    }

    #[test]
    fn rejects_multigraphs() {
        assert!(matches!(
            SimpleGraph::new(3, &[(0, 1), (1, 0)]),
            Err(GraphError::MultiEdge(0, 1))
        ));
        assert!(matches!(
            SimpleGraph::new(3, &[(2, 2)]),
            Err(GraphError::SelfLoop(2))
        ));
    }

    #[test]
    fn small_planarity() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&k33()));
        // K3,3 minus one edge is planar.
        let mut edges: Vec<(usize, usize)> = k33().edges().to_vec();
        edges.pop();
        assert!(is_planar(&SimpleGraph::new(6, &edges).unwrap()));
    }

    #[test]
    fn embedding_face_counts() {
        let tri = SimpleGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let emb = planar_embedding(&tri).unwrap();
        assert_eq!(emb.face_count(), 2);
        assert!(emb.verify(&tri));

        // Cube graph: v=8, e=12, f=6.
        let cube = SimpleGraph::new(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
        .unwrap();
        let emb = planar_embedding(&cube).unwrap();
        assert_eq!(emb.face_count(), 6);
        assert!(emb.verify(&cube));
    }

    #[test]
    fn embedding_with_cut_vertices_and_isolated() {
        // Two triangles sharing vertex 0, a pendant, and an isolated vertex.
        let g = SimpleGraph::new(
            7,
            &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (4, 5)],
        )
        .unwrap();
        let emb = planar_embedding(&g).unwrap();
        assert!(emb.verify(&g));
        // v - e + f = 1 + c with c = 2 (vertex 6 isolated).
        assert_eq!(7 + emb.face_count(), 1 + 2 + 7);
    }

    #[test]
    fn nonplanar_embedding_fails() {
        assert!(matches!(
            planar_embedding(&complete(5)),
            Err(PlanarityError::NotPlanar)
        ));
    }

    #[test]
    fn engine_matches_oracle_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xfeed);
        for case in 0..400 {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(15..70);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in (u + 1)..n {
                    if rng.gen_range(0..100) < p {
                        edges.push((u, v));
                    }
                }
            }
            let g = SimpleGraph::new(n, &edges).unwrap();
            let fast = is_planar(&g);
            let slow = oracle_is_planar(&g).unwrap();
            assert_eq!(fast, slow, "case {case}: n={n} edges={edges:?}");
            if fast {
                let emb = planar_embedding(&g).unwrap();
                assert!(emb.verify(&g), "case {case}: bad embedding {edges:?}");
            }
        }
    }

    #[test]
    fn disconnected_planarity() {
        let mut edges = Vec::new();
        for u in 0..5usize {
            for v in (u + 1)..5 {
                edges.push((u + 5, v + 5));
            }
        }
        edges.push((0, 1));
        let g = SimpleGraph::new(10, &edges).unwrap();
        assert!(!is_planar(&g));
    }
}
