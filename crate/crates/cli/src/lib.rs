//! Scenario files, report rendering and the command implementations behind
//! the `lancut` binary. Exposed as a library so integration tests can drive
//! the commands without spawning processes.

pub mod commands;
pub mod error;
pub mod matrixio;
pub mod report;
pub mod scenario;

pub use error::CliError;
