//! Inequality suites, output emitters and the `trimetric` command line.

pub mod cli;
pub mod emit;
pub mod parse;
pub mod report;
pub mod sampling;
pub mod suites;

pub use report::{ComparisonReport, Witness};
pub use suites::{run_suite, SuiteError, SuiteSpec};
