//! Command-line front end for `eve_core`: file ingestion, report rendering
//! and the regression report over the published tables.

pub mod config;
pub mod error;
pub mod input;
pub mod report;
pub mod run;
pub mod tables;

pub use config::{Conversion, InputFormat, OutputFormat, RunConfig};
pub use error::CliError;
pub use run::{run_bounds, run_evaluate, Outcome};
pub use tables::run_paper_tables;
