//! Sharpness oracles: recompute identification regions by brute force,
//! independently of the closed-form formulas.
//!
//! Nonresponse regions are extremized directly over the unobservables: the
//! hidden conditional means range over {0, 1} and the partially identified
//! opener mass over its two extremes. Response-error regions are extremized
//! over every joint distribution of (truth, report) on the feasible lattice
//! that matches the observed reported rates and satisfies the declared
//! bound — a small polytope, solved by vertex enumeration.
//!
//! Agreement of these oracles with the closed-form regions certifies both
//! validity and sharpness of the formulas: every endpoint is attained by
//! some feasible process.

use skipseq_core::{
    AssumptionKind, MisclassAllScenario, MisclassSkipScenario,
    NonresponseAllScenario, NonresponseSkipScenario, UnitInterval,
};

use crate::error::SimError;
use crate::observe::Observables;
use crate::polytope::{extremize, VertexProblem};

fn to_interval(lo: f64, hi: f64) -> UnitInterval {
    UnitInterval::new(lo.clamp(0.0, 1.0), hi.clamp(0.0, 1.0))
        .expect("extremized endpoints form a valid region")
}

/// Extremize the mean over the hidden nonrespondent mean in {0, 1}.
pub fn oracle_nr_all(scenario: &NonresponseAllScenario) -> UnitInterval {
    let observed = scenario.mean_resp() * (1.0 - scenario.p_nonresp());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for hidden_mean in [0.0, 1.0] {
        let value = observed + hidden_mean * scenario.p_nonresp();
        lo = lo.min(value);
        hi = hi.max(value);
    }
    to_interval(lo, hi)
}

/// Extremize over both hidden conditional means in {0, 1} and the
/// positive-branch share of the opening nonrespondents at its extremes
/// {0, p_x_nonresp}.
pub fn oracle_nr_skip(scenario: &NonresponseSkipScenario) -> UnitInterval {
    let observed = scenario.mean_resp() * scenario.p_y_resp();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for asked_hidden_mean in [0.0, 1.0] {
        for unasked_hidden_mean in [0.0, 1.0] {
            for hidden_positive_mass in [0.0, scenario.p_x_nonresp()] {
                let value = observed
                    + asked_hidden_mean * scenario.p_x_resp_y_nonresp()
                    + unasked_hidden_mean * hidden_positive_mass;
                lo = lo.min(value);
                hi = hi.max(value);
            }
        }
    }
    to_interval(lo, hi)
}

/// Extremize P(truth = 1) over joint distributions of (truth, report) on
/// {0,1}^2 matching the reported rate under the declared bound.
///
/// Variables are the four cell masses indexed (truth, report):
/// 0:(0,0) 1:(0,1) 2:(1,0) 3:(1,1).
pub fn oracle_mc_all(scenario: &MisclassAllScenario) -> Result<UnitInterval, SimError> {
    let p = scenario.p_report();
    let lambda = scenario.assumption().lambda();

    let mut inequalities: Vec<(Vec<f64>, f64)> = (0..4)
        .map(|i| {
            let mut row = vec![0.0; 4];
            row[i] = -1.0;
            (row, 0.0)
        })
        .collect();
    match scenario.assumption().kind() {
        AssumptionKind::JointBound => {
            // coincidence mass at least 1 - lambda
            inequalities.push((vec![-1.0, 0.0, 0.0, -1.0], -(1.0 - lambda)));
        }
        AssumptionKind::PerValueBound => {
            // correct-report mass at least (1 - lambda) of each truth class
            inequalities.push((vec![-lambda, 1.0 - lambda, 0.0, 0.0], 0.0));
            inequalities.push((vec![0.0, 0.0, 1.0 - lambda, -lambda], 0.0));
        }
    }
    let problem = VertexProblem {
        objective: vec![0.0, 0.0, 1.0, 1.0],
        equalities: vec![
            (vec![1.0, 1.0, 1.0, 1.0], 1.0),
            (vec![0.0, 1.0, 0.0, 1.0], p),
        ],
        inequalities,
    };
    let (lo, hi) = extremize(&problem)?;
    Ok(to_interval(lo, hi))
}

/// Extremize P(truth-outcome = 1) over joint distributions of
/// (true cell, reported cell) on the skip lattice, matching both reported
/// rates under the declared bound.
///
/// Skip logic collapses the four (x, y) states to three cells — 0: negative
/// opener, 1: positive opener with negative outcome, 2: positive outcome —
/// on both the truth side and the report side; variable index is
/// `3 * true_cell + reported_cell`.
pub fn oracle_mc_skip(scenario: &MisclassSkipScenario) -> Result<UnitInterval, SimError> {
    let p = scenario.p_report();
    let px = scenario.p_x_report();
    if p > px {
        return Err(SimError::InfeasibleObservables(format!(
            "reported follow-up rate {p} exceeds reported opener rate {px}"
        )));
    }
    let lambda = scenario.assumption().lambda();
    let n = 9;
    let idx = |truth: usize, report: usize| 3 * truth + report;

    let mut inequalities: Vec<(Vec<f64>, f64)> = (0..n)
        .map(|i| {
            let mut row = vec![0.0; n];
            row[i] = -1.0;
            (row, 0.0)
        })
        .collect();
    match scenario.assumption().kind() {
        AssumptionKind::JointBound => {
            let mut row = vec![0.0; n];
            for cell in 0..3 {
                row[idx(cell, cell)] = -1.0;
            }
            inequalities.push((row, -(1.0 - lambda)));
        }
        AssumptionKind::PerValueBound => {
            for cell in 0..3 {
                // (1 - lambda) * cell mass - diagonal entry <= 0
                let mut row = vec![0.0; n];
                for report in 0..3 {
                    row[idx(cell, report)] = 1.0 - lambda;
                }
                row[idx(cell, cell)] -= 1.0;
                inequalities.push((row, 0.0));
            }
        }
    }

    let mut sum_row = vec![1.0; n];
    sum_row[0] = 1.0; // explicit: every mass point participates
    let mut report_positive = vec![0.0; n];
    let mut report_opener = vec![0.0; n];
    for truth in 0..3 {
        report_positive[idx(truth, 2)] = 1.0;
        report_opener[idx(truth, 1)] = 1.0;
        report_opener[idx(truth, 2)] = 1.0;
    }
    let mut objective = vec![0.0; n];
    for report in 0..3 {
        objective[idx(2, report)] = 1.0;
    }

    let problem = VertexProblem {
        objective,
        equalities: vec![
            (sum_row, 1.0),
            (report_positive, p),
            (report_opener, px),
        ],
        inequalities,
    };
    let (lo, hi) = extremize(&problem)?;
    Ok(to_interval(lo, hi))
}

/// Oracle dispatch over any observable scenario.
pub fn sharpness_oracle(observables: &Observables) -> Result<UnitInterval, SimError> {
    match observables {
        Observables::NrAll(s) => Ok(oracle_nr_all(s)),
        Observables::NrSkip(s) => Ok(oracle_nr_skip(s)),
        Observables::McAll(s) => oracle_mc_all(s),
        Observables::McSkip(s) => oracle_mc_skip(s),
    }
}
