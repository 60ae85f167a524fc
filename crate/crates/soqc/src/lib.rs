//! Exact verification of representation-theoretic identities for small
//! quasi-split orthogonal and general linear groups over finite fields.
//!
//! The library builds the groups and character data once per
//! configuration, computes normalized Bessel tables and twisted gamma
//! factors in exact cyclotomic arithmetic, and runs a fixed catalog of
//! named checks whose results assemble into a deterministic report.

pub mod checks;
pub mod config;
pub mod context;
pub mod report;

use soqc_core::Result;

pub use config::{OutputFormat, VerifyConfig};
pub use report::Report;

/// Build the shared context for a configuration, run the selected
/// checks, and assemble the report.
pub fn run_suite(cfg: &VerifyConfig) -> Result<Report> {
    let ctx = context::SuiteContext::build(cfg)?;
    let results = checks::run_selected(&ctx, &cfg.checks, cfg.jobs);
    Ok(report::Report::assemble(&ctx, results))
}
