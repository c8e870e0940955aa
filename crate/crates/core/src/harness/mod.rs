//! Command-line harness: file formats, generators, verification suites,
//! benchmarks.

pub mod bench;
pub mod cli;
pub mod format;
pub mod generate;
pub mod verify;
