//! Exact parameterized solvers for Feedback Arc Set, Cutwidth and Optimal
//! Linear Arrangement on semi-complete digraphs.
//!
//! Every solver follows the same pipeline: enumerate the k-cuts of the
//! instance (aborting once their number exceeds a cap that no yes-instance can
//! reach), then search the digraph whose vertices are those cuts and whose
//! arcs move one vertex from the right side to the left side. A source-to-sink
//! path in that digraph is a vertex ordering.

pub mod bitset;
pub mod cli;
pub mod cuts;
pub mod digraph;
pub mod layout_dp;
pub mod oracle;
pub mod partitions;
pub mod solvers;

pub use bitset::VertexSet;
pub use cuts::{Cut, CutEnumeration, EnumerationOutcome};
pub use digraph::{FeedbackArcSet, Ordering, SemiCompleteDigraph};
pub use solvers::{Problem, SolveOutcome};
