//! Arc-disjoint in- and out-branchings ("good pairs") in small digraphs.
//!
//! A good pair is an in-branching and an out-branching of the same digraph
//! that share no arc — a broadcast tree and a gather tree that can run on
//! disjoint links. This crate provides:
//!
//! - [`digraph`]: a compact loopless digraph value type with text and DOT
//!   serialization;
//! - [`analysis`]: strong components, arc-connectivity, independence number,
//!   semicomplete/co-bipartite recognition, Hamiltonian search;
//! - [`branching`]: branching and good-pair types with full validation;
//! - [`oracle`]: an exhaustive, certificate-producing decision procedure for
//!   good pairs with optional root constraints;
//! - [`solvers`]: polynomial constructive solvers for semicomplete,
//!   co-bipartite and independence-number-2 digraphs, each self-checking;
//! - [`families`]: generators for the named extremal digraphs (W, H4, E4,
//!   ...) and parameterized no-good-pair families;
//! - [`search`]: exhaustive / canonical / sampled sweep engine and seeded
//!   random instance generators for cross-validation and conjecture hunts.
//!
//! The `parallel` feature (on by default) runs the sweep engines on rayon;
//! without it everything falls back to the identical sequential code path.

pub mod analysis;
pub mod branching;
pub mod digraph;
pub mod error;
pub mod families;
pub mod io;
pub mod oracle;
pub mod search;
pub mod solvers;

pub use digraph::{Arc, DiGraph, Vertex};
pub use error::{Error, Result};
