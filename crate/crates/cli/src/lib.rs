//! Std companion of `addrep`: set and series files, JSON reports, run
//! manifests and the `addrep` command line.
//!
//! Exit codes: 0 success (or audit proxy holds), 1 audit proxy violated
//! (or replay mismatch), 2 bad input, 3 sampling failure.

pub mod commands;
pub mod format;
pub mod manifest;
pub mod report;

pub use commands::run;
