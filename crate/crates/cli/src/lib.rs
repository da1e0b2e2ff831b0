//! File formats, certificate JSON, oracle CSV export and the `u2comm`
//! command line on top of `u2comm-core`.

pub mod cert;
pub mod cli;
pub mod error;
pub mod export;
pub mod format;
pub mod selftest;

pub use error::{CliError, CliResult};
