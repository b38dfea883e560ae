//! File formats and command-line front end for `grinv-core`.

pub mod cli;
pub mod format;
