//! File formats and the command-line driver for `symtrace-core`.

pub mod cli;
pub mod error;
pub mod json;
pub mod pretty;

use std::time::Instant;

pub use error::{CliError, CliResult};
use symtrace_core::paperlab::{verify, PropId, SweepParams, VerifyReport};

/// Runs a sweep and records its wall-clock time.
pub fn verify_timed(prop: PropId, params: &SweepParams, seed: u64) -> symtrace_core::Result<VerifyReport> {
    let start = Instant::now();
    let mut report = verify(prop, params, seed)?;
    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}
