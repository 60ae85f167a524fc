//! Shared state for a verification run.
//!
//! The context is built once, single-threaded, before any check runs, so
//! every expensive object (group enumerations, character tables, Bessel
//! tables, the gamma matrix) is computed exactly once and in a fixed
//! order. Checks only read from it. A slot whose construction hits the
//! group-order resource bound is recorded as a named skip instead of
//! aborting the run; any other construction error is a hard failure.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use soqc_core::chartab::{char_table, CharTable};
use soqc_core::cyclo::CycNum;
use soqc_core::error::{Error, Result};
use soqc_core::fq::FieldTable;
use soqc_core::group::{Group, GroupKind};
use soqc_core::reps::{
    analyze, bessel_closed_form, central_character, conjugate_rep_index, RepSet,
};
use soqc_core::subgroups::{standard_subgroups, SubgroupAtlas};
use soqc_core::weyl::{bruhat_cells, weyl_atlas, WeylAtlas};
use soqc_core::zeta::{gamma_factor, GammaOptions, GammaOutcome, GlModel, ZetaContext};

use crate::config::VerifyConfig;

/// Report key for the even group slot.
pub fn slot_even(l: usize) -> String {
    format!("so-even-{}", 2 * l)
}

/// Report key for an odd group slot.
pub fn slot_odd(n: usize) -> String {
    format!("so-odd-{}", 2 * n + 1)
}

/// Report key for a general linear slot.
pub fn slot_gl(n: usize) -> String {
    format!("gl-{n}")
}

/// Everything derived from the quasi-split even group.
pub struct EvenData {
    pub g: Group,
    pub t: CharTable,
    pub reps: RepSet,
    pub sub: SubgroupAtlas,
    pub atlas: WeylAtlas,
    /// Atlas index of the Bruhat cell of each group element.
    pub cells: Vec<usize>,
    pub generic: Vec<usize>,
    pub generic_cuspidal: Vec<usize>,
    pub cuspidal: Vec<usize>,
    /// Normalized Bessel table of each generic row, indexed by element.
    pub bessel: BTreeMap<usize, Vec<CycNum>>,
    /// Outer-conjugate row of every row.
    pub conj_row: Vec<usize>,
    /// Central character of every row, in center-element order.
    pub central: Vec<Vec<CycNum>>,
}

/// A general linear twist group with its table and generic rows.
pub struct GlData {
    pub g: Group,
    pub t: CharTable,
    pub reps: RepSet,
    pub generic: Vec<usize>,
}

/// An odd orthogonal group slot.
pub struct OddData {
    pub g: Group,
}

/// One gamma factor computation, keyed by twist rank, twist row, and
/// even-group row. A domain error (a vanishing canonical witness) is
/// preserved as text so the reporting checks can surface it.
pub struct GammaEntry {
    pub n: usize,
    pub tau_row: usize,
    pub pi_row: usize,
    pub outcome: std::result::Result<GammaOutcome, String>,
}

/// The full gamma matrix, plus the twist ranks that could not be built.
pub struct GammaTable {
    pub entries: Vec<GammaEntry>,
    pub rank_skips: BTreeMap<usize, String>,
}

impl GammaTable {
    /// Find the entry for one (even row, twist rank, twist row) triple.
    pub fn get(&self, pi_row: usize, n: usize, tau_row: usize) -> Option<&GammaEntry> {
        self.entries
            .iter()
            .find(|e| e.pi_row == pi_row && e.n == n && e.tau_row == tau_row)
    }

    /// Summarize missing ranks within a range, if any.
    pub fn missing_ranks(&self, ranks: impl Iterator<Item = usize>) -> Option<String> {
        let missing: Vec<String> = ranks
            .filter_map(|n| self.rank_skips.get(&n).map(|m| format!("rank {n}: {m}")))
            .collect();
        if missing.is_empty() {
            None
        } else {
            Some(missing.join("; "))
        }
    }
}

/// The shared, read-only state for one verification run.
pub struct SuiteContext {
    pub cfg: VerifyConfig,
    pub f: Arc<FieldTable>,
    pub even: Option<EvenData>,
    pub gl: BTreeMap<usize, GlData>,
    pub odd: BTreeMap<usize, OddData>,
    /// Resource skips keyed by slot name.
    pub skips: BTreeMap<String, String>,
    pub gamma: Option<GammaTable>,
}

#[derive(Default)]
struct Needs {
    even: bool,
    gl: BTreeSet<usize>,
    odd: BTreeSet<usize>,
    gamma: bool,
}

fn needs_for(checks: &[&str], l: usize) -> Needs {
    let mut n = Needs::default();
    let has = |x: &str| checks.iter().any(|c| *c == x);
    let gamma = has("conj-gamma-6.3")
        || has("conj-gamma-7.4")
        || has("bessel-sum-8.1")
        || has("converse-8.2")
        || has("gamma-welldef-3.4");
    if gamma {
        n.gamma = true;
        n.even = true;
        n.gl.extend(1..=l);
        n.odd.extend(1..l);
    }
    if has("besselprop-4.1")
        || has("support-vanish-4.2")
        || has("center-4.3")
        || has("conj-bessel-4.4")
        || has("support-bn-4.9")
        || has("bessel-sum-8.1")
        || has("converse-8.2")
    {
        n.even = true;
    }
    if has("uppertriangular-4.8") {
        n.even = true;
        n.gl.insert(l - 1);
    }
    if has("niennon-5.1") {
        n.gl.extend(1..=l);
    }
    if has("intertwine-5.3") {
        n.gl.extend(1..=l);
        n.odd.extend(1..=l);
    }
    if has("nonvanish-5.2") && l >= 3 {
        n.even = true;
        n.gl.extend(1..=l - 2);
        n.odd.extend(1..=l - 2);
    }
    if has("nonvanish-6.1") {
        n.even = true;
        n.gl.insert(l - 1);
        n.odd.insert(l - 1);
    }
    if has("nonvanish-7.1") {
        n.even = true;
        n.gl.insert(l);
    }
    if has("multone-3.1") {
        n.even = true;
        n.odd.insert(l);
    }
    if has("multone-3.3") {
        n.even = true;
        n.odd.extend(1..l);
    }
    n
}

impl SuiteContext {
    /// Build the shared state required by the configured check list.
    pub fn build(cfg: &VerifyConfig) -> Result<SuiteContext> {
        let f = cfg.field()?;
        let needs = needs_for(&cfg.checks, cfg.l);
        let mut skips = BTreeMap::new();

        let even = if needs.even {
            match build_even(&f, cfg.l) {
                Ok(d) => Some(d),
                Err(Error::ResourceLimit(m)) => {
                    skips.insert(slot_even(cfg.l), m);
                    None
                }
                Err(e) => return Err(e),
            }
        } else {
            None
        };

        let mut gl = BTreeMap::new();
        for &n in &needs.gl {
            match build_gl(&f, n) {
                Ok(d) => {
                    gl.insert(n, d);
                }
                Err(Error::ResourceLimit(m)) => {
                    skips.insert(slot_gl(n), m);
                }
                Err(e) => return Err(e),
            }
        }

        let mut odd = BTreeMap::new();
        for &n in &needs.odd {
            match Group::enumerate(f.clone(), GroupKind::SoOdd { l: n }) {
                Ok(g) => {
                    g.classes();
                    odd.insert(n, OddData { g });
                }
                Err(Error::ResourceLimit(m)) => {
                    skips.insert(slot_odd(n), m);
                }
                Err(e) => return Err(e),
            }
        }

        let gamma = if needs.gamma {
            match &even {
                Some(ev) => Some(build_gamma(&f, cfg.l, ev, &gl, &odd, &skips)?),
                None => None,
            }
        } else {
            None
        };

        Ok(SuiteContext { cfg: cfg.clone(), f, even, gl, odd, skips, gamma })
    }

    /// The recorded reason a slot is unavailable.
    pub fn skip_reason(&self, slot: &str) -> String {
        self.skips
            .get(slot)
            .cloned()
            .unwrap_or_else(|| format!("{slot} unavailable"))
    }
}

fn build_even(f: &Arc<FieldTable>, l: usize) -> Result<EvenData> {
    let g = Group::enumerate(f.clone(), GroupKind::SoEvenQs { l })?;
    g.classes();
    let t = char_table(&g)?;
    let reps = analyze(&g, &t)?;
    let sub = standard_subgroups(&g);
    let atlas = weyl_atlas(f, l);
    let cells = bruhat_cells(&g, &atlas);
    let generic: Vec<usize> = (0..t.num_irreps()).filter(|&r| reps.is_generic(r)).collect();
    let generic_cuspidal = reps.generic_cuspidal();
    let cuspidal: Vec<usize> = (0..t.num_irreps()).filter(|&r| reps.cuspidal[r]).collect();
    let mut bessel = BTreeMap::new();
    for &r in &generic {
        bessel.insert(r, bessel_closed_form(&g, &t, r));
    }
    let conj_row: Vec<usize> =
        (0..t.num_irreps()).map(|r| conjugate_rep_index(&g, &t, r)).collect();
    let central: Vec<Vec<CycNum>> =
        (0..t.num_irreps()).map(|r| central_character(&g, &t, r)).collect();
    Ok(EvenData {
        g,
        t,
        reps,
        sub,
        atlas,
        cells,
        generic,
        generic_cuspidal,
        cuspidal,
        bessel,
        conj_row,
        central,
    })
}

fn build_gl(f: &Arc<FieldTable>, n: usize) -> Result<GlData> {
    let g = Group::enumerate(f.clone(), GroupKind::Gl { n })?;
    g.classes();
    let t = char_table(&g)?;
    let reps = analyze(&g, &t)?;
    let generic: Vec<usize> = (0..t.num_irreps()).filter(|&r| reps.is_generic(r)).collect();
    Ok(GlData { g, t, reps, generic })
}

fn build_gamma(
    f: &Arc<FieldTable>,
    l: usize,
    ev: &EvenData,
    gl: &BTreeMap<usize, GlData>,
    odd: &BTreeMap<usize, OddData>,
    skips: &BTreeMap<String, String>,
) -> Result<GammaTable> {
    let _ = f;
    let mut entries = Vec::new();
    let mut rank_skips = BTreeMap::new();
    for n in 1..=l {
        let Some(gd) = gl.get(&n) else {
            let reason = skips
                .get(&slot_gl(n))
                .cloned()
                .unwrap_or_else(|| format!("{} unavailable", slot_gl(n)));
            rank_skips.insert(n, reason);
            continue;
        };
        let go = if n < l {
            match odd.get(&n) {
                Some(o) => Some(&o.g),
                None => {
                    let reason = skips
                        .get(&slot_odd(n))
                        .cloned()
                        .unwrap_or_else(|| format!("{} unavailable", slot_odd(n)));
                    rank_skips.insert(n, reason);
                    continue;
                }
            }
        } else {
            None
        };
        let zc = ZetaContext::new(&ev.g, go, l, n)?;
        for &tau_row in &gd.generic {
            let model = GlModel::new(&gd.g, &gd.t, tau_row)?;
            for &pi_row in &ev.generic_cuspidal {
                let outcome =
                    gamma_factor(&zc, &ev.bessel[&pi_row], &model, &GammaOptions::default())
                        .map_err(|e| e.to_string());
                entries.push(GammaEntry { n, tau_row, pi_row, outcome });
            }
        }
    }
    Ok(GammaTable { entries, rank_skips })
}
