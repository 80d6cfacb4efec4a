//! Std companion to `klab-core`: a rayon executor, an FFT-based oracle for
//! whole tables, output formats and the `klab` command line.

pub mod cli;
pub mod executor;
pub mod format;
pub mod oracle;
pub mod output;

pub use executor::RayonExecutor;
