//! Deterministic report assembly and rendering.
//!
//! The report body is a pure function of the verified configuration: keys
//! are sorted, every exact value is rendered through its canonical string,
//! and no timing or host information enters the body. Running the same
//! configuration twice therefore produces byte-identical output.

use std::collections::BTreeMap;

use serde::Serialize;

use soqc_core::group::max_group_order;

use crate::context::{slot_even, slot_gl, slot_odd, SuiteContext};

/// Outcome status of a single check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// Result of running one check: a status plus a human-readable detail
/// line carrying the witness (on pass), the counterexample (on fail), or
/// the reason (on skip).
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub status: CheckStatus,
    pub detail: String,
}

/// One per-check record in the report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

/// Echo of the verified configuration.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub p: u64,
    pub r: u32,
    pub q: u64,
    pub l: usize,
    pub rho: u64,
    pub checks: String,
    pub max_group_order: u64,
}

/// One irreducible representation of the even group.
#[derive(Clone, Debug, Serialize)]
pub struct RepRecord {
    pub row: usize,
    pub degree: u64,
    pub whittaker_multiplicity: u64,
    pub generic: bool,
    pub cuspidal: bool,
    pub conjugate_row: usize,
    pub central_character: Vec<String>,
}

/// One gamma factor: an even-group row against a general linear twist.
#[derive(Clone, Debug, Serialize)]
pub struct GammaRecord {
    pub pi_row: usize,
    pub twist_rank: usize,
    pub tau_row: usize,
    pub tau_degree: u64,
    pub value: String,
    pub pairs_checked: usize,
    pub nonzero_pairs: usize,
}

/// The full verification report.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: ConfigEcho,
    pub group_orders: BTreeMap<String, u64>,
    pub resource_skips: BTreeMap<String, String>,
    pub inventory: Vec<RepRecord>,
    pub gamma: Vec<GammaRecord>,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    /// Assemble the report from a built context and check results.
    pub fn assemble(ctx: &SuiteContext, results: Vec<(String, CheckOutcome)>) -> Report {
        let f = ctx.f.as_ref();
        let config = ConfigEcho {
            p: f.p,
            r: f.r,
            q: f.q,
            l: ctx.cfg.l,
            rho: f.rho as u64,
            checks: ctx.cfg.checks_label.clone(),
            max_group_order: max_group_order(),
        };

        let mut group_orders = BTreeMap::new();
        if let Some(ev) = &ctx.even {
            group_orders.insert(slot_even(ctx.cfg.l), ev.g.order());
        }
        for (n, d) in &ctx.gl {
            group_orders.insert(slot_gl(*n), d.g.order());
        }
        for (n, d) in &ctx.odd {
            group_orders.insert(slot_odd(*n), d.g.order());
        }

        let mut inventory = Vec::new();
        if let Some(ev) = &ctx.even {
            for row in 0..ev.t.num_irreps() {
                inventory.push(RepRecord {
                    row,
                    degree: ev.t.degrees[row],
                    whittaker_multiplicity: ev.reps.whittaker_mult[row],
                    generic: ev.reps.is_generic(row),
                    cuspidal: ev.reps.cuspidal[row],
                    conjugate_row: ev.conj_row[row],
                    central_character: ev.central[row]
                        .iter()
                        .map(|c| c.canonical_string())
                        .collect(),
                });
            }
        }

        let mut gamma = Vec::new();
        if let Some(gt) = &ctx.gamma {
            for e in &gt.entries {
                let tau_degree = ctx
                    .gl
                    .get(&e.n)
                    .map(|d| d.t.degrees[e.tau_row])
                    .unwrap_or(0);
                let (value, pairs_checked, nonzero_pairs) = match &e.outcome {
                    Ok(o) => (o.gamma.canonical_string(), o.pairs_checked, o.nonzero_pairs),
                    Err(m) => (format!("undefined: {m}"), 0, 0),
                };
                gamma.push(GammaRecord {
                    pi_row: e.pi_row,
                    twist_rank: e.n,
                    tau_row: e.tau_row,
                    tau_degree,
                    value,
                    pairs_checked,
                    nonzero_pairs,
                });
            }
        }

        let checks = results
            .into_iter()
            .map(|(name, o)| CheckRecord { name, status: o.status, detail: o.detail })
            .collect();

        Report {
            config,
            group_orders,
            resource_skips: ctx.skips.clone(),
            inventory,
            gamma,
            checks,
        }
    }

    /// Whether any check failed.
    pub fn any_fail(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    /// Counts of (pass, fail, skipped).
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut p = 0;
        let mut fl = 0;
        let mut s = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => p += 1,
                CheckStatus::Fail => fl += 1,
                CheckStatus::Skipped => s += 1,
            }
        }
        (p, fl, s)
    }

    /// Byte-stable JSON rendering: sorted keys, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("report renders");
        s.push('\n');
        s
    }

    /// Deterministic markdown rendering of the same body.
    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        s.push_str("# soqc verification report\n\n");

        s.push_str("## Configuration\n\n");
        s.push_str("| key | value |\n|---|---|\n");
        s.push_str(&format!("| p | {} |\n", self.config.p));
        s.push_str(&format!("| r | {} |\n", self.config.r));
        s.push_str(&format!("| q | {} |\n", self.config.q));
        s.push_str(&format!("| l | {} |\n", self.config.l));
        s.push_str(&format!("| rho | {} |\n", self.config.rho));
        s.push_str(&format!("| checks | {} |\n", md_cell(&self.config.checks)));
        s.push_str(&format!("| max group order | {} |\n", self.config.max_group_order));
        s.push('\n');

        if !self.group_orders.is_empty() {
            s.push_str("## Group orders\n\n| group | order |\n|---|---|\n");
            for (k, v) in &self.group_orders {
                s.push_str(&format!("| {k} | {v} |\n"));
            }
            s.push('\n');
        }

        if !self.resource_skips.is_empty() {
            s.push_str("## Resource skips\n\n| slot | reason |\n|---|---|\n");
            for (k, v) in &self.resource_skips {
                s.push_str(&format!("| {k} | {} |\n", md_cell(v)));
            }
            s.push('\n');
        }

        if !self.inventory.is_empty() {
            s.push_str("## Irreducible representations of the even group\n\n");
            s.push_str("| row | degree | Whittaker mult | generic | cuspidal | conjugate row | central character |\n");
            s.push_str("|---|---|---|---|---|---|---|\n");
            for r in &self.inventory {
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} |\n",
                    r.row,
                    r.degree,
                    r.whittaker_multiplicity,
                    r.generic,
                    r.cuspidal,
                    r.conjugate_row,
                    md_cell(&r.central_character.join(", ")),
                ));
            }
            s.push('\n');
        }

        if !self.gamma.is_empty() {
            s.push_str("## Gamma factors\n\n");
            s.push_str("| pi row | twist rank | tau row | tau degree | gamma | certificate pairs | nonzero pairs |\n");
            s.push_str("|---|---|---|---|---|---|---|\n");
            for g in &self.gamma {
                s.push_str(&format!(
                    "| {} | {} | {} | {} | {} | {} | {} |\n",
                    g.pi_row,
                    g.twist_rank,
                    g.tau_row,
                    g.tau_degree,
                    md_cell(&g.value),
                    g.pairs_checked,
                    g.nonzero_pairs,
                ));
            }
            s.push('\n');
        }

        if !self.checks.is_empty() {
            s.push_str("## Checks\n\n| check | status | detail |\n|---|---|---|\n");
            for c in &self.checks {
                let status = match c.status {
                    CheckStatus::Pass => "pass",
                    CheckStatus::Fail => "fail",
                    CheckStatus::Skipped => "skipped",
                };
                s.push_str(&format!("| {} | {} | {} |\n", c.name, status, md_cell(&c.detail)));
            }
            s.push('\n');
        }

        s
    }
}

/// Escape a string for use inside a markdown table cell.
fn md_cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}
