//! Triangular ratio metric and related intrinsic metrics of planar and
//! higher dimensional domains.

pub mod balls;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod moebius;
pub mod qc;
pub mod rng;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{Domain, Line2, Location, Point, Polygon, SimilarityTransform};
pub use solver::{ExtremalResult, Method, SolverConfig};
