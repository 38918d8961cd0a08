//! Command-line front end for `susyqm`: JSON configs, subcommand
//! dispatch, CSV/JSON output and figure data.

pub mod commands;
pub mod config;
pub mod error;
pub mod expr;
pub mod figures;
pub mod output;
pub mod source;
pub mod suite;

pub use commands::run;
pub use config::RunConfig;
pub use error::CliError;
