//! Ramsey goodness of graph pairs: exact small-case invariants and Ramsey
//! numbers, Burr witnesses, and a constructive embedding pipeline for
//! red/blue colorings of complete graphs.

pub mod budget;
pub mod canon;
pub mod error;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod pipeline;
pub mod ramsey;
pub mod subgraph;
pub mod two_coloring;

pub use budget::{Budget, Exhausted, SharedBudget, Verdict};
pub use error::{Error, Result};
pub use graph::{Graph, ProperColoring, Vertex};
pub use two_coloring::{Color, MonoEmbedding, TwoColoring};
