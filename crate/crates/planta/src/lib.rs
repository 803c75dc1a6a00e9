//! File formats, reports and the command-line front end for `planta-core`.

pub mod cli;
pub mod config;
pub mod csvio;
pub mod data;
pub mod error;
pub mod fileio;
pub mod numfmt;
pub mod report;
pub mod run;
pub mod stems;

pub use error::{CliError, Result};
pub use report::Report;
