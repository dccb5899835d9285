//! File formats and subcommands of the `ruled` command-line tool.

pub mod commands;
pub mod error;
pub mod keyvalue;
pub mod mesh;
pub mod profile_file;
pub mod report;
pub mod surface_file;
pub mod table;
pub mod tolerances;

pub use error::{exit, CliError, CliResult};
pub use tolerances::Tolerances;
