//! Step graphons, W-random graphs, recognizers for string-graph related
//! classes, and exact geometry of polygonal string representations.

pub mod error;
pub mod experiments;
pub mod geometry;
pub mod graph;
pub mod graphon;
pub mod recognizers;
pub mod rng;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{quotient, Graph, VertexPartition};
pub use rng::SeedSpec;

/// Exact rational numbers used for measures, values and coordinates.
pub type Rational = num_rational::BigRational;
