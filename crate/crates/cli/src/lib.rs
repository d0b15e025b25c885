//! Batch front end: scenario files in, JSON reports and Graphviz trees out.

pub mod acceptance;
pub mod dot;
pub mod error;
pub mod run;
pub mod scenario;

pub use dot::export_dot;
pub use error::CliError;
pub use run::{run_scenario, Outcome, Overrides, RunReport};
pub use scenario::{Driver, Scenario};
