//! Exact partition of the gamma axis into optimal-design intervals.
//!
//! The three loss lines are affine in gamma, so the optimal set can only
//! change where two lines cross. Candidate breakpoints are the pairwise
//! crossings (at most three), computed in closed form as ratios of affine
//! coefficients; cells between consecutive breakpoints are labeled by
//! evaluating the decision at the cell midpoint, and adjacent cells with the
//! same label are merged so that surviving breakpoints are exactly the
//! points where the optimum changes.

use serde::Serialize;

use crate::error::CoreError;
use crate::loss::{decide, DecisionScenario, DesignOption, TIE_EPS};

/// One interval of the partition with its optimizing options.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaCell {
    pub lo: f64,
    pub hi: f64,
    /// Constant on the open cell; a singleton unless two loss lines coincide
    /// identically over the cell.
    pub minimizers: Vec<DesignOption>,
    /// The minimizer preferred by the tie rule (cheapest wins).
    pub chosen: DesignOption,
}

/// The gamma axis [0, gamma_max] tiled by optimal-design cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaPartition {
    pub gamma_max: f64,
    /// Interior cell boundaries, ascending; the optimum changes at each.
    pub breakpoints: Vec<f64>,
    pub cells: Vec<GammaCell>,
}

impl GammaPartition {
    /// The cell containing `gamma` (boundaries resolve to the earlier cell).
    pub fn cell_at(&self, gamma: f64) -> Option<&GammaCell> {
        self.cells.iter().find(|c| c.lo <= gamma && gamma <= c.hi)
    }
}

/// Breakpoints closer than this are treated as one.
const BREAKPOINT_DEDUPE: f64 = 1e-12;

/// Partition [0, gamma_max] by the minimizing design option.
pub fn gamma_partition(
    scenario: &DecisionScenario,
    gamma_max: f64,
) -> Result<GammaPartition, CoreError> {
    if !gamma_max.is_finite() || gamma_max <= 0.0 {
        return Err(CoreError::NonPositiveGammaMax(gamma_max));
    }
    let lines = scenario.losses();

    let mut cuts: Vec<f64> = Vec::with_capacity(3);
    for i in 0..3 {
        for j in (i + 1)..3 {
            let df = lines[i].cost_fraction - lines[j].cost_fraction;
            if df.abs() <= TIE_EPS {
                // parallel (or identical) lines never swap order
                continue;
            }
            let crossing = (lines[j].width - lines[i].width) / df;
            if crossing > BREAKPOINT_DEDUPE && crossing < gamma_max - BREAKPOINT_DEDUPE {
                cuts.push(crossing);
            }
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("crossings are finite"));
    cuts.dedup_by(|a, b| (*a - *b).abs() <= BREAKPOINT_DEDUPE);

    let mut bounds = Vec::with_capacity(cuts.len() + 2);
    bounds.push(0.0);
    bounds.extend_from_slice(&cuts);
    bounds.push(gamma_max);

    let mut cells: Vec<GammaCell> = Vec::new();
    for pair in bounds.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let mid = 0.5 * (lo + hi);
        let d = decide(mid, scenario)?;
        match cells.last_mut() {
            Some(prev) if prev.minimizers == d.minimizers && prev.chosen == d.chosen => {
                prev.hi = hi;
            }
            _ => cells.push(GammaCell { lo, hi, minimizers: d.minimizers, chosen: d.chosen }),
        }
    }

    let breakpoints = cells.iter().skip(1).map(|c| c.lo).collect();
    Ok(GammaPartition { gamma_max, breakpoints, cells })
}
