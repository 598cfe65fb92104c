//! The `recip` command line: argument parsing, configuration and report
//! rendering on top of `recip-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod report;

pub use cli::{main_with_args, run, Cli, Outcome};
pub use error::CliError;
pub use report::ReportDocument;
