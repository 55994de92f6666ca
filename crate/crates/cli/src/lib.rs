//! Command-line front end: argument parsing, dispatch to the library,
//! versioned JSON reports, and the verification battery.

pub mod args;
pub mod battery;
pub mod commands;
pub mod corpus;
pub mod envelope;
pub mod error;

pub use args::{Cli, Command, OutputFormat};
pub use envelope::{run, Execution, SCHEMA_VERSION};
pub use error::CliError;
