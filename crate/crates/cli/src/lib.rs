//! Library surface of the CLI, split out so integration tests can drive the
//! command layer directly.

pub mod args;
pub mod commands;
pub mod report;

pub use args::Cli;
pub use commands::{run, EXIT_MISMATCH, EXIT_NETWORK, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
