//! Configuration and check selection for a verification run.

use std::sync::Arc;

use soqc_core::error::{Error, Result};
use soqc_core::fq::{FieldTable, Fq};

use crate::checks;

/// Output format of the rendered report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Markdown,
}

/// A validated verification configuration. The check list is resolved to
/// catalog order at construction time, so identical selections entered in
/// different orders produce identical reports.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub p: u64,
    pub r: u32,
    pub l: usize,
    pub rho: Option<Fq>,
    pub checks: Vec<&'static str>,
    pub checks_label: String,
    pub jobs: usize,
}

impl VerifyConfig {
    /// Validate parameters and resolve the check selection.
    pub fn new(
        p: u64,
        r: u32,
        l: usize,
        rho: Option<Fq>,
        checks_spec: &str,
        jobs: usize,
    ) -> Result<VerifyConfig> {
        if !(2..=6).contains(&l) {
            return Err(Error::invalid("the rank l must lie between 2 and 6"));
        }
        let (checks, checks_label) = resolve_checks(checks_spec)?;
        Ok(VerifyConfig { p, r, l, rho, checks, checks_label, jobs: effective_jobs(jobs) })
    }

    /// Build the field, applying any quadratic non-residue override. An
    /// invalid override (for example a square) is rejected here, before
    /// any group is enumerated.
    pub fn field(&self) -> Result<Arc<FieldTable>> {
        let ft = FieldTable::new(self.p, self.r)?;
        let ft = match self.rho {
            Some(x) => ft.with_rho(x)?,
            None => ft,
        };
        Ok(Arc::new(ft))
    }
}

/// Resolve a `--checks` argument to a catalog-ordered list plus a stable
/// label. Accepts `all`, explicit comma-separated names, and the alias
/// `weyl-only` for the purely combinatorial checks.
pub fn resolve_checks(spec: &str) -> Result<(Vec<&'static str>, String)> {
    let all = checks::names();
    let spec = spec.trim();
    if spec.is_empty() || spec == "all" {
        return Ok((all, "all".to_string()));
    }
    let mut wanted: Vec<&'static str> = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        if token.is_empty() {
            continue;
        }
        if token == "weyl-only" {
            wanted.extend_from_slice(checks::WEYL_ONLY);
            continue;
        }
        match all.iter().find(|n| **n == token) {
            Some(name) => wanted.push(name),
            None => {
                return Err(Error::invalid(format!(
                    "unknown check name `{token}`; valid names: {}, or the alias weyl-only",
                    all.join(", ")
                )))
            }
        }
    }
    let ordered: Vec<&'static str> =
        all.into_iter().filter(|n| wanted.contains(n)).collect();
    if ordered.is_empty() {
        return Err(Error::invalid("the check selection is empty"));
    }
    let label = ordered.join(",");
    Ok((ordered, label))
}

/// Clamp a requested worker count to at least one thread and to the
/// `SOQC_MAX_JOBS` environment cap when set.
pub fn effective_jobs(requested: usize) -> usize {
    let req = requested.max(1);
    match std::env::var("SOQC_MAX_JOBS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&c| c >= 1)
    {
        Some(cap) => req.min(cap),
        None => req,
    }
}
