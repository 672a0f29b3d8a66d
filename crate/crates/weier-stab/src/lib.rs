//! Command-line front end over the exact stability kernel.
//!
//! The binary reads classes and rationals from the command line, resolves
//! surface parameters from configuration, and prints one JSON document (or
//! an indented table) per invocation. The [`verify`] module holds the
//! deterministic self-check suites behind the `verify` subcommand; they are
//! exposed as a library so test harnesses can run them at larger sizes.

pub mod cli;
pub mod commands;
pub mod config;
pub mod render;
pub mod verify;

use thiserror::Error;

/// Top-level command failure, split by exit status.
#[derive(Debug, Error)]
pub enum AppError {
    /// Malformed invocation: arguments or configuration (exit status 2).
    #[error("{0}")]
    Usage(String),
    /// Well-formed request whose answer is undefined, or a failed check
    /// (exit status 1).
    #[error("{0}")]
    Domain(String),
}

pub use commands::run;
