//! DP-coloring (correspondence coloring) of multigraphs.
//!
//! The crate builds matching-assignment covers, solves for colorings
//! exactly, and decides colorability of degree-list instances through the
//! block structure of the graph, producing checkable obstruction
//! certificates when no coloring exists.

pub mod cli;
pub mod cover;
pub mod gen;
pub mod io;
pub mod multigraph;
pub mod obstruction;
pub mod par;
pub mod signed;
pub mod solver;

pub use cover::{Color, Cover, DPInstance, ListAssignment, MatchingAssignment, Transversal, Violation};
pub use multigraph::{BlockDecomposition, BlockKind, GraphError, Multigraph};
pub use obstruction::{Decision, ObstructionCertificate};
pub use solver::SolveResult;
