//! Exact computations around skewincidence: binary strings in which two
//! members share a one in adjacent positions, the graph families that
//! generalize it, and the Fibonacci-string antichains bounding it.

pub mod bitset;
pub mod bitstring;
pub mod clique;
pub mod constructions;
pub mod counting;
pub mod dyadic;
pub mod error;
pub mod family;
pub mod graph;
pub mod matching;
pub mod montecarlo;
pub mod report;
pub mod solver;
pub mod sperner;
pub mod table;

pub use bitstring::BitString;
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use family::Family;
pub use graph::{Graph, Partition};
