//! Exact graph invariants. Every search takes a [`Budget`](crate::budget::Budget)
//! and reports [`Verdict::Undecided`](crate::budget::Verdict) when it runs out.

pub mod bandwidth;
pub mod coloring;
pub mod cycles;
pub mod independence;

pub use bandwidth::bandwidth;
pub use coloring::{chromatic_number, optimal_coloring_min_class, sigma};
pub use cycles::{circumference, has_path, longest_cycle};
pub use independence::{independence_number, maximum_independent_set};
