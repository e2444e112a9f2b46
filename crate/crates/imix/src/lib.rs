//! File formats, acceptance checks and the `imix` command-line tool on top
//! of `imix-core`.

pub mod cli;
pub mod criteria;
pub mod fixtures;
pub mod format;

pub use cli::{run, run_with};
