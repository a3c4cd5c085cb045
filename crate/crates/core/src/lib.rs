//! List-5-coloring of graphs without `r` pairwise anticomplete induced P3s.
//!
//! The solver refines an instance through a frugality profile and a good-P3
//! elimination profile, reduces every leaf to lists of size two, and finishes
//! with 2-SAT. Colorings found on a leaf are lifted back to the input and
//! verified.

pub mod error;
pub mod format;
pub mod frugality;
pub mod goodp3;
pub mod graph;
pub mod hardness;
pub mod instance;
pub mod oracle;
pub mod pipeline;
pub mod random;
pub mod reducer;
pub mod trace;
pub mod twosat;

pub use error::{GraphError, InstanceError, ParseError, ReduceError};
pub use graph::{Graph, InducedP3, VertexSet};
pub use instance::{Color, ColorSet, Coloring, GoodTriple, Instance};
