//! Identity checks and the command-line harness for `nccumulant`.

pub mod cli;
pub mod data;
pub mod random;
pub mod report;
pub mod suites;
