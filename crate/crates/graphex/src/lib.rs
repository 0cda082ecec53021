//! Verification harness, file formats and command-line front end for
//! [`graphex_core`].
//!
//! - [`verify`]: ensembles of graph statistics, two-sample and goodness-of-fit
//!   tests, and the named verification suites.
//! - [`io`]: edge lists, labeled CSV, pixel matrices, PGM images, sequence
//!   blocks and reports.
//! - [`config`]: TOML model files.
//! - [`cli`]: the `graphex` command.

pub mod cli;
pub mod config;
pub mod io;
pub mod verify;

pub use graphex_core as core;
