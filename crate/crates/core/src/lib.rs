//! cycleforge: construction and exact verification of cubic graphs with
//! a unique longest cycle.
//!
//! The toolkit builds the two base graphs (the 56-vertex Chia-Thomassen
//! graph and the generalized Petersen graph GP(9,2)), performs the
//! marriage (generalized truncation) operation that replaces every
//! vertex of a cubic host by a copy of the guest minus a marked vertex,
//! iterates it into an infinite family of cubic 2-connected girth-5
//! graphs with a unique longest cycle, and verifies every claimed
//! property by exact combinatorial search at desk scale.

pub mod analysis;
pub mod certify;
pub mod construct;
pub mod graph;
pub mod io;
pub mod limits;
pub mod search;

pub use graph::Graph;
