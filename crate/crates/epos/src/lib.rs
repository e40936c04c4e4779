//! Command-line front end for `epos-core`: a rayon-backed executor, the
//! JSON / CSV / pretty output formats, the graph file reader and the `epos`
//! subcommands.

pub mod cli;
mod error;
pub mod format;
pub mod graph_file;
pub mod report;
mod workers;

pub use cli::{run, run_to, run_with_maps};
pub use error::CliError;
pub use workers::Workers;
