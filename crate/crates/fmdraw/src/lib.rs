//! Planar drawings of fixed-mobile bigraphs.
//!
//! A fixed-mobile bigraph is a bipartite graph in which one side (the fixed
//! vertices) comes with prescribed positions in the plane while the other
//! side (the mobile vertices) may be placed freely. This crate decides and
//! constructs planar straight-line and 1-bend drawings of such graphs:
//!
//! * an exact rational geometry kernel (orientation, segment intersection,
//!   hulls, clipping) and a geometric drawing validator built on it,
//! * planarity testing with embedding extraction and an independent
//!   Kuratowski-subdivision oracle,
//! * a solver for the collinear-fixed-vertices case,
//! * the convex-hull pipeline (line arrangement, cell graph, skeleton
//!   selection) with path/cycle/cactus solvers and a brute-force oracle,
//! * the h-strip 1-bend model with strip-partition enumeration,
//! * hardness reductions as instance generators and solution mappers,
//! * JSON/SVG I/O, seeded instance generators, and a CLI.

pub mod cellgraph;
pub mod collinear;
pub mod driver;
pub mod geometry;
pub mod io;
pub(crate) mod layout;
pub mod par;
pub mod arrangement;
pub mod model;
pub mod planarity;
pub mod reductions;
pub mod skeleton;
pub mod strip;
