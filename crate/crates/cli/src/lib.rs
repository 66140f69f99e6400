//! Command-line front end: JSON input parsing, report rendering, and the
//! built-in simple-singularity catalog.
//!
//! Exit codes: 0 success (including "infinitely many" status reports),
//! 1 verification failure, 2 input error, 3 infinite-dimensional algebra.

pub mod catalog;
pub mod commands;
pub mod io;

pub use commands::{execute, run, Cli, Command, Outcome, VariantArg};
