//! Full verification runs and their serialisable report.

use std::time::Instant;

use ffamily::FParams;
use pattern::{Pattern, PATTERN_COUNT};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cases::{case_table, class_index, eligibility_classes, verify_case};
use crate::engine::{FTable, WStore};
use crate::grid::{check_unimodal, domain_values};
use crate::universal::verify_universal_over;
use crate::VerifyError;

/// Floors and gating policy for a run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Targets {
    /// Floor for the anchor value at perturbation zero.
    pub zero: f64,
    /// Floor just below the admissible range.
    pub negpert: f64,
    /// Floors for the same-index, one-step and two-step follower brackets.
    pub pos_t0: f64,
    pub pos_t1: f64,
    pub pos_t2: f64,
    /// Slack subtracted from each case target before gating; covers the
    /// final rounding of published per-case values.
    pub case_slack: f64,
    /// Hard floor every case margin must clear regardless of its target.
    pub case_floor: f64,
    /// Minimal clearance demanded above every gated floor.
    pub clearance: f64,
    /// Gate the verdict on the case table.
    pub gate_cases: bool,
    /// Gate on shape: no failures and no plateau flags.
    pub gate_unimodality: bool,
    /// Gate the four floors beyond `zero` (smoke runs check `zero` only).
    pub gate_extended: bool,
}

impl Default for Targets {
    fn default() -> Self {
        Targets {
            zero: 1.14671,
            negpert: 0.35,
            pos_t0: 1.14671,
            pos_t1: 1.53232,
            pos_t2: 1.2866,
            case_slack: 5e-3,
            case_floor: 1.0001,
            clearance: 1e-6,
            gate_cases: true,
            gate_unimodality: true,
            gate_extended: true,
        }
    }
}

impl Targets {
    /// The floors a full certification run must clear.
    pub fn certified() -> Self {
        Self::default()
    }

    /// Smoke policy: only the zero floor gates, at the weak level `1.0`.
    pub fn smoke() -> Self {
        Targets {
            zero: 1.0,
            gate_cases: false,
            gate_unimodality: false,
            gate_extended: false,
            ..Self::default()
        }
    }
}

/// A minimal value and the window attaining it, in report form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginEntry {
    pub value: f64,
    pub witness: String,
}

/// The five universal minima over the swept windows. A `None` can only
/// occur on a subset sweep that misses every window eligible for the
/// quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WorstMargins {
    pub zero: Option<MarginEntry>,
    pub negpert: Option<MarginEntry>,
    pub pos_t0: Option<MarginEntry>,
    pub pos_t1: Option<MarginEntry>,
    pub pos_t2: Option<MarginEntry>,
}

/// Result of one case over the swept windows. `min_margin` is `None` when
/// no swept window was eligible (or every bracket was impossible), which
/// fails a gated run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    pub target: f64,
    pub min_margin: Option<f64>,
    pub witness_pattern: Option<String>,
    /// Minimum under the case's alternative chain reading, if it has one;
    /// reported, never gated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_margin: Option<f64>,
}

/// Estimator parameters in report form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportParams {
    pub n0: u32,
    pub t: u32,
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GlobalStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

/// Everything a verification run certifies, ready for serialisation.
///
/// All content except `wall_time_seconds` is a pure function of the
/// parameters, the targets and the swept subset; comparing two runs for
/// reproducibility should go through [`normalized`](Self::normalized).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub params: ReportParams,
    pub global_status: GlobalStatus,
    pub worst_margins: WorstMargins,
    pub cases: Vec<CaseReport>,
    /// Windows whose grid values fail the single-positive-maximum shape.
    pub unimodality_failures: Vec<String>,
    /// Windows whose maximum is attained at two adjacent grid points;
    /// accepted by the shape check but gated by a certification run.
    pub plateau_flags: Vec<String>,
    /// `(restarts, words)` buckets over the 81 backward words.
    pub restart_histogram: Vec<(u32, u32)>,
    pub wall_time_seconds: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.global_status == GlobalStatus::Pass
    }

    /// Copy with the timing zeroed, for reproducibility comparisons.
    pub fn normalized(mut self) -> Self {
        self.wall_time_seconds = 0.0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(s: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(s).map_err(|e| VerifyError::Invalid(format!("bad report: {e}")))
    }
}

/// The deterministic 200-window subset used by smoke runs: every 98th-ish
/// window by index, evenly spread over the full range.
pub fn smoke_sample() -> Vec<usize> {
    (0..200).map(|i| i * PATTERN_COUNT / 200).collect()
}

fn clears(value: f64, floor: f64, clearance: f64) -> bool {
    value - floor >= clearance
}

/// Runs the sweep at `params` over `subset` (all windows when `None`),
/// gated by `targets`.
pub fn run_with(
    params: FParams,
    store: &dyn WStore,
    targets: &Targets,
    subset: Option<&[usize]>,
) -> Result<VerificationReport, VerifyError> {
    let start = Instant::now();

    let mut indices: Vec<usize> = match subset {
        Some(s) => s.to_vec(),
        None => (0..PATTERN_COUNT).collect(),
    };
    indices.sort_unstable();
    indices.dedup();
    if indices.is_empty() {
        return Err(VerifyError::Invalid("empty window subset".into()));
    }
    if *indices.last().unwrap() >= PATTERN_COUNT {
        return Err(VerifyError::Invalid(format!(
            "window index {} out of range",
            indices.last().unwrap()
        )));
    }

    let ft = FTable::build(params, store)?;

    // Shape pass, streaming per window to keep memory flat.
    let shape = indices
        .par_iter()
        .map(|&i| {
            let ff = ft.ff_at(i);
            let (first, vals) = domain_values(ff);
            check_unimodal(&vals, first).map(|c| (i, c))
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let mut unimodality_failures = Vec::new();
    let mut plateau_flags = Vec::new();
    for (i, c) in &shape {
        let name = Pattern::from_index(*i).to_string();
        if !c.ok {
            unimodality_failures.push(name);
        } else if c.plateau == 2 {
            plateau_flags.push(name);
        }
    }

    let uni = verify_universal_over(&ft, indices.iter().copied())?;
    let entry = |e: Option<crate::universal::Extremum>| {
        e.map(|e| MarginEntry { value: e.value, witness: e.witness.to_string() })
    };
    let worst_margins = WorstMargins {
        zero: entry(uni.zero),
        negpert: entry(uni.negpert),
        pos_t0: entry(uni.pos_t0),
        pos_t1: entry(uni.pos_t1),
        pos_t2: entry(uni.pos_t2),
    };
    // Forwarded and composed factors use the floor this run computed, so a
    // regression in the universal sweep propagates into the case table.
    let t0_floor = uni.pos_t0.map(|e| e.value).ok_or_else(|| {
        VerifyError::Invalid("subset has no window for the same-index floor".into())
    })?;

    let table = case_table();
    let cases = table
        .par_iter()
        .map(|spec| {
            let classes = eligibility_classes(spec);
            let mut min: Option<(f64, Pattern)> = None;
            let mut alt_min: Option<f64> = None;
            for &i in &indices {
                let p = Pattern::from_index(i);
                if !classes[class_index(&p)] {
                    continue;
                }
                if let Some(out) = verify_case(spec, &p, &ft, t0_floor)? {
                    if min.map_or(true, |(v, _)| out.value < v) {
                        min = Some((out.value, p));
                    }
                    if let Some(a) = out.alt_value {
                        alt_min = Some(alt_min.map_or(a, |m: f64| m.min(a)));
                    }
                }
            }
            Ok(CaseReport {
                id: spec.id.to_string(),
                target: spec.target,
                min_margin: min.map(|(v, _)| v),
                witness_pattern: min.map(|(_, p)| p.to_string()),
                alt_margin: alt_min,
            })
        })
        .collect::<Result<Vec<_>, VerifyError>>()?;

    let mut pass = match &worst_margins.zero {
        Some(e) => clears(e.value, targets.zero, targets.clearance),
        None => false,
    };
    if targets.gate_extended {
        let floors = [
            (&worst_margins.negpert, targets.negpert),
            (&worst_margins.pos_t0, targets.pos_t0),
            (&worst_margins.pos_t1, targets.pos_t1),
            (&worst_margins.pos_t2, targets.pos_t2),
        ];
        for (m, floor) in floors {
            pass &= m.as_ref().is_some_and(|e| clears(e.value, floor, targets.clearance));
        }
    }
    if targets.gate_unimodality {
        pass &= unimodality_failures.is_empty() && plateau_flags.is_empty();
    }
    if targets.gate_cases {
        for c in &cases {
            let ok = c.min_margin.is_some_and(|v| {
                clears(v, c.target - targets.case_slack, targets.clearance)
                    && v > targets.case_floor
            });
            pass &= ok;
        }
    }

    Ok(VerificationReport {
        params: ReportParams { n0: params.n0(), t: params.t(), m: params.m() },
        global_status: if pass { GlobalStatus::Pass } else { GlobalStatus::Fail },
        worst_margins,
        cases,
        unimodality_failures,
        plateau_flags,
        restart_histogram: ft.restart_histogram().into_iter().collect(),
        wall_time_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Full certification run: every window, certified floors.
pub fn run_full(params: FParams, store: &dyn WStore) -> Result<VerificationReport, VerifyError> {
    run_with(params, store, &Targets::certified(), None)
}

/// Smoke run: reduced parameters, the 200-window sample, zero floor only.
pub fn run_smoke(store: &dyn WStore) -> Result<VerificationReport, VerifyError> {
    run_with(FParams::smoke(), store, &Targets::smoke(), Some(&smoke_sample()))
}
