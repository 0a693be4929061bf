//! Command-line front end for exact quantum search schedules: report
//! formats, OpenQASM 2.0 export and the subcommand implementations.

pub mod commands;
mod error;
pub mod qasm;
pub mod report;

pub use error::{CliError, Result};
pub use report::{Format, Report};
