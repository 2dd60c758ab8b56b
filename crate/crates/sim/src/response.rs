//! Response processes: who answers, and what gets reported.
//!
//! Nonresponse models decide which questions go unanswered (reports are
//! truthful). Response-error models decide which reports are wrong under a
//! declared error bound; generated error plans are truncated so the realized
//! error rates always respect the bound, whatever the requested rates say.
//! The mixture model draws a latent error indicator and replaces the report
//! with an independent error value wherever it fires.
//!
//! What a realistic error process looks like is anyone's guess; the flavors
//! here are constructions chosen to exercise the bounds, including the
//! adversarial corners the regions must still cover.

use rand::SeedableRng;
use rand::{seq::index::sample, Rng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use skipseq_core::{AssumptionKind, DesignOption, ErrorAssumption, MixtureAssumption};
use skipseq_ingest::{IngestSchema, MicroRecord};

use crate::error::SimError;
use crate::observe::{ObservationKind, ObservedDataset, TruthSummary};
use crate::population::Population;

/// How nonrespondents are selected from an eligible set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MissingnessRule {
    /// Independent coin flips — missing at random.
    Random,
    /// The members with the highest outcomes refuse (worst case for the
    /// upper endpoint).
    ConcentrateHigh,
    /// The members with the lowest outcomes refuse.
    ConcentrateLow,
}

/// Item nonresponse process; answers given are truthful.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonresponseModel {
    /// Probability of not answering the opening question (Skip design).
    pub p_skip_open: f64,
    /// Probability of not answering the outcome item wherever it is asked.
    pub p_skip_follow: f64,
    pub rule: MissingnessRule,
}

/// Which wrong reports a response-error process produces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ErrorFlavor {
    NoErrors,
    /// True positives report the outcome as negative.
    FalseNegatives { rate: f64 },
    /// True negatives (on the positive branch under Skip) report positive.
    FalsePositives { rate: f64 },
    /// Random victims report a random wrong cell.
    RandomFlips { rate: f64 },
    /// Skip only: positive-branch members deny the opening question,
    /// so the follow-up is never asked of them.
    OpeningFalseNegatives { rate: f64 },
    /// Skip only: negative-branch members affirm the opening question and
    /// then answer the follow-up.
    OpeningFalsePositives { rate: f64, report_positive_followup: bool },
}

/// Response-error process under a declared bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MisclassModel {
    pub assumption: ErrorAssumption,
    pub flavor: ErrorFlavor,
}

/// Latent-mixture reporting process (All design, binary outcome).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureModel {
    pub assumption: MixtureAssumption,
    /// Target share of error draws; must not exceed the assumption's lambda.
    pub p_w0: f64,
    /// P(e = 1) for the error value.
    pub error_positive_rate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResponseModel {
    Nonresponse(NonresponseModel),
    Misclassification(MisclassModel),
    Mixture(MixtureModel),
}

impl ResponseModel {
    fn name(&self) -> &'static str {
        match self {
            ResponseModel::Nonresponse(_) => "nonresponse",
            ResponseModel::Misclassification(_) => "misclassification",
            ResponseModel::Mixture(_) => "mixture",
        }
    }
}

fn check_prob(name: &str, v: f64) -> Result<(), SimError> {
    if !(0.0..=1.0).contains(&v) {
        return Err(SimError::InvalidConfig(format!("{name} = {v} not in [0, 1]")));
    }
    Ok(())
}

/// Run the survey `option` with response process `rm` over `pop`.
///
/// Deterministic given `seed`. The emitted records follow the schema
/// embedded in the returned dataset; truth stays alongside for oracle use
/// only.
pub fn apply_design(
    pop: &Population,
    option: DesignOption,
    rm: &ResponseModel,
    seed: u64,
) -> Result<ObservedDataset, SimError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let truth = TruthSummary { mean_g: pop.true_mean_g(), p_positive: pop.true_p_positive() };

    let (records, kind, declared) = match rm {
        ResponseModel::Nonresponse(model) => {
            check_prob("p_skip_open", model.p_skip_open)?;
            check_prob("p_skip_follow", model.p_skip_follow)?;
            let records = apply_nonresponse(pop, option, model, &mut rng);
            (records, ObservationKind::Nonresponse, None)
        }
        ResponseModel::Misclassification(model) => {
            if !pop.is_binary() || pop.support_max() != 1.0 {
                return Err(SimError::NonBinaryPopulation);
            }
            let records = apply_misclassification(pop, option, model, &mut rng)?;
            (records, ObservationKind::ResponseError, Some(model.assumption))
        }
        ResponseModel::Mixture(model) => {
            if option != DesignOption::All && option != DesignOption::None {
                return Err(SimError::IncompatibleModel { design: option, model: rm.name() });
            }
            if !pop.is_binary() || pop.support_max() != 1.0 {
                return Err(SimError::NonBinaryPopulation);
            }
            check_prob("p_w0", model.p_w0)?;
            check_prob("error_positive_rate", model.error_positive_rate)?;
            if model.p_w0 > model.assumption.lambda() {
                return Err(SimError::InvalidConfig(format!(
                    "p_w0 = {} exceeds the declared lambda = {}",
                    model.p_w0,
                    model.assumption.lambda()
                )));
            }
            let records = apply_mixture(pop, option, model, &mut rng);
            (records, ObservationKind::ResponseError, Some(model.assumption.to_misclass()))
        }
    };

    let schema = IngestSchema {
        support_max: pop.support_max(),
        g: pop.g().clone(),
        design: option,
        ..IngestSchema::default()
    };
    Ok(ObservedDataset { records, design: option, kind, declared_assumption: declared, truth, schema })
}

fn record_id(index: usize) -> String {
    format!("m{index:07}")
}

// ---------------------------------------------------------------------------
// nonresponse
// ---------------------------------------------------------------------------

/// Pick nonrespondents from `eligible` (indices into the population).
/// `Random` flips a coin per member; the concentrate rules deterministically
/// take the floor(p * len) members with the most extreme outcomes.
fn pick_nonrespondents(
    pop: &Population,
    eligible: &[usize],
    p: f64,
    rule: MissingnessRule,
    rng: &mut ChaCha8Rng,
) -> Vec<bool> {
    let mut skip = vec![false; pop.len()];
    match rule {
        MissingnessRule::Random => {
            for &i in eligible {
                skip[i] = rng.random_bool(p);
            }
        }
        MissingnessRule::ConcentrateHigh | MissingnessRule::ConcentrateLow => {
            let count = (p * eligible.len() as f64).floor() as usize;
            let mut order: Vec<usize> = eligible.to_vec();
            order.sort_by(|&a, &b| {
                let (ga, gb) = (pop.g_of(&pop.members()[a]), pop.g_of(&pop.members()[b]));
                match rule {
                    MissingnessRule::ConcentrateHigh => gb.total_cmp(&ga).then(a.cmp(&b)),
                    _ => ga.total_cmp(&gb).then(a.cmp(&b)),
                }
            });
            for &i in order.iter().take(count) {
                skip[i] = true;
            }
        }
    }
    skip
}

fn apply_nonresponse(
    pop: &Population,
    option: DesignOption,
    model: &NonresponseModel,
    rng: &mut ChaCha8Rng,
) -> Vec<MicroRecord> {
    let n = pop.len();
    match option {
        DesignOption::None => (0..n).map(record_id).map(MicroRecord::unasked).collect(),
        DesignOption::All => {
            let everyone: Vec<usize> = (0..n).collect();
            let skip_y = pick_nonrespondents(pop, &everyone, model.p_skip_follow, model.rule, rng);
            pop.members()
                .iter()
                .enumerate()
                .map(|(i, m)| MicroRecord {
                    respondent_id: record_id(i),
                    opening_asked: false,
                    opening_value: None,
                    followup_asked: true,
                    followup_value: (!skip_y[i]).then_some(m.y_raw),
                    proxy_flag: None,
                })
                .collect()
        }
        DesignOption::Skip => {
            let everyone: Vec<usize> = (0..n).collect();
            let skip_open =
                pick_nonrespondents(pop, &everyone, model.p_skip_open, model.rule, rng);
            let asked: Vec<usize> = (0..n)
                .filter(|&i| !skip_open[i] && pop.members()[i].x)
                .collect();
            let skip_follow =
                pick_nonrespondents(pop, &asked, model.p_skip_follow, model.rule, rng);
            pop.members()
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    if skip_open[i] {
                        return MicroRecord {
                            respondent_id: record_id(i),
                            opening_asked: true,
                            opening_value: None,
                            followup_asked: false,
                            followup_value: None,
                            proxy_flag: None,
                        };
                    }
                    let followup_asked = m.x;
                    MicroRecord {
                        respondent_id: record_id(i),
                        opening_asked: true,
                        opening_value: Some(if m.x { 1.0 } else { 0.0 }),
                        followup_asked,
                        followup_value: (followup_asked && !skip_follow[i]).then_some(m.y_raw),
                        proxy_flag: None,
                    }
                })
                .collect()
        }
    }
}

// ---------------------------------------------------------------------------
// misclassification
// ---------------------------------------------------------------------------

/// True/reported state of one member as a cell: 0 = negative opening,
/// 1 = positive opening with negative outcome, 2 = positive outcome.
/// Under the All design only the outcome matters, so cells are 1 and 2
/// (negative-opening members share cell 1's outcome).
fn skip_cell(x: bool, y_positive: bool) -> usize {
    match (x, y_positive) {
        (false, _) => 0,
        (true, false) => 1,
        (true, true) => 2,
    }
}

/// Plan wrong reports per true cell, then truncate so the realized rates
/// respect the declared bound exactly: per-cell caps under the per-value
/// bound, a global cap under the joint bound.
struct ErrorPlan {
    /// new report cell per member; usize::MAX = truthful
    wrong_report: Vec<usize>,
}

impl ErrorPlan {
    fn truthful(n: usize) -> Self {
        Self { wrong_report: vec![usize::MAX; n] }
    }
}

/// Members of each true cell, in index order.
fn cell_members(true_cells: &[usize], n_cells: usize) -> Vec<Vec<usize>> {
    let mut cells = vec![Vec::new(); n_cells];
    for (i, &c) in true_cells.iter().enumerate() {
        cells[c].push(i);
    }
    cells
}

/// Desired wrong reports per cell for a flavor: (true cell, target rate,
/// wrong cell chooser).
type CellTarget = (usize, f64, fn(&mut ChaCha8Rng, usize) -> usize);

fn build_error_plan(
    true_cells: &[usize],
    n_cells: usize,
    targets: &[CellTarget],
    assumption: &ErrorAssumption,
    rng: &mut ChaCha8Rng,
) -> ErrorPlan {
    let n = true_cells.len();
    let cells = cell_members(true_cells, n_cells);
    let mut plan = ErrorPlan::truthful(n);
    let mut joint_budget = (assumption.lambda() * n as f64).floor() as usize;

    for &(cell, rate, choose_wrong) in targets {
        let members = &cells[cell];
        let mut count = (rate * members.len() as f64).floor() as usize;
        count = match assumption.kind() {
            AssumptionKind::PerValueBound => {
                count.min((assumption.lambda() * members.len() as f64).floor() as usize)
            }
            AssumptionKind::JointBound => count.min(joint_budget),
        };
        if count == 0 {
            continue;
        }
        let victims = sample(rng, members.len(), count);
        for v in victims.iter() {
            let member = members[v];
            if plan.wrong_report[member] == usize::MAX {
                plan.wrong_report[member] = choose_wrong(rng, true_cells[member]);
            }
        }
        if assumption.kind() == AssumptionKind::JointBound {
            joint_budget = joint_budget.saturating_sub(count);
        }
    }
    plan
}

fn apply_misclassification(
    pop: &Population,
    option: DesignOption,
    model: &MisclassModel,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<MicroRecord>, SimError> {
    let n = pop.len();
    if option == DesignOption::None {
        return Ok((0..n).map(record_id).map(MicroRecord::unasked).collect());
    }

    match option {
        DesignOption::All => {
            // cells: 1 = negative outcome, 2 = positive outcome
            let true_cells: Vec<usize> =
                pop.members().iter().map(|m| if m.y_raw == 1.0 { 2 } else { 1 }).collect();
            let targets: Vec<CellTarget> = match model.flavor {
                ErrorFlavor::NoErrors => vec![],
                ErrorFlavor::FalseNegatives { rate } => vec![(2, rate, |_: &mut ChaCha8Rng, _| 1)],
                ErrorFlavor::FalsePositives { rate } => vec![(1, rate, |_: &mut ChaCha8Rng, _| 2)],
                ErrorFlavor::RandomFlips { rate } => vec![
                    (1, rate, |_: &mut ChaCha8Rng, _| 2),
                    (2, rate, |_: &mut ChaCha8Rng, _| 1),
                ],
                ErrorFlavor::OpeningFalseNegatives { .. }
                | ErrorFlavor::OpeningFalsePositives { .. } => {
                    return Err(SimError::IncompatibleModel {
                        design: option,
                        model: "opening-error flavor",
                    })
                }
            };
            for (_, rate, _) in &targets {
                check_prob("error rate", *rate)?;
            }
            let plan = build_error_plan(&true_cells, 3, &targets, &model.assumption, rng);
            Ok(pop
                .members()
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    let report_cell = if plan.wrong_report[i] == usize::MAX {
                        true_cells[i]
                    } else {
                        plan.wrong_report[i]
                    };
                    MicroRecord {
                        respondent_id: record_id(i),
                        opening_asked: false,
                        opening_value: None,
                        followup_asked: true,
                        followup_value: Some(if report_cell == 2 { 1.0 } else { 0.0 }),
                        proxy_flag: None,
                    }
                })
                .collect())
        }
        DesignOption::Skip => {
            let true_cells: Vec<usize> =
                pop.members().iter().map(|m| skip_cell(m.x, m.y_raw == 1.0)).collect();
            let targets: Vec<CellTarget> = match model.flavor {
                ErrorFlavor::NoErrors => vec![],
                ErrorFlavor::FalseNegatives { rate } => vec![(2, rate, |_: &mut ChaCha8Rng, _| 1)],
                ErrorFlavor::FalsePositives { rate } => vec![(1, rate, |_: &mut ChaCha8Rng, _| 2)],
                ErrorFlavor::OpeningFalseNegatives { rate } => vec![
                    (1, rate, |_: &mut ChaCha8Rng, _| 0),
                    (2, rate, |_: &mut ChaCha8Rng, _| 0),
                ],
                ErrorFlavor::OpeningFalsePositives { rate, report_positive_followup } => {
                    if report_positive_followup {
                        vec![(0, rate, |_: &mut ChaCha8Rng, _| 2)]
                    } else {
                        vec![(0, rate, |_: &mut ChaCha8Rng, _| 1)]
                    }
                }
                ErrorFlavor::RandomFlips { rate } => vec![
                    (0, rate, |rng: &mut ChaCha8Rng, _| if rng.random_bool(0.5) { 1 } else { 2 }),
                    (1, rate, |rng: &mut ChaCha8Rng, _| if rng.random_bool(0.5) { 0 } else { 2 }),
                    (2, rate, |rng: &mut ChaCha8Rng, _| if rng.random_bool(0.5) { 0 } else { 1 }),
                ],
            };
            for (_, rate, _) in &targets {
                check_prob("error rate", *rate)?;
            }
            let plan = build_error_plan(&true_cells, 3, &targets, &model.assumption, rng);
            Ok(pop
                .members()
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    let report_cell = if plan.wrong_report[i] == usize::MAX {
                        true_cells[i]
                    } else {
                        plan.wrong_report[i]
                    };
                    let (x_report, y_report) = match report_cell {
                        0 => (false, false),
                        1 => (true, false),
                        _ => (true, true),
                    };
                    MicroRecord {
                        respondent_id: record_id(i),
                        opening_asked: true,
                        opening_value: Some(if x_report { 1.0 } else { 0.0 }),
                        followup_asked: x_report,
                        followup_value: x_report
                            .then_some(if y_report { 1.0 } else { 0.0 }),
                        proxy_flag: None,
                    }
                })
                .collect())
        }
        DesignOption::None => unreachable!("handled above"),
    }
}

// ---------------------------------------------------------------------------
// mixture
// ---------------------------------------------------------------------------

fn apply_mixture(
    pop: &Population,
    option: DesignOption,
    model: &MixtureModel,
    rng: &mut ChaCha8Rng,
) -> Vec<MicroRecord> {
    let n = pop.len();
    if option == DesignOption::None {
        return (0..n).map(record_id).map(MicroRecord::unasked).collect();
    }

    let mut error_draw = vec![false; n];
    if model.assumption.independent_errors() {
        // stratified by true value: the realized error-draw rate in each
        // class stays at or below p_w0, which is what independence buys
        let classes = [
            (0..n).filter(|&i| pop.members()[i].y_raw != 1.0).collect::<Vec<_>>(),
            (0..n).filter(|&i| pop.members()[i].y_raw == 1.0).collect::<Vec<_>>(),
        ];
        for class in &classes {
            let count = (model.p_w0 * class.len() as f64).floor() as usize;
            for v in sample(rng, class.len(), count).iter() {
                error_draw[class[v]] = true;
            }
        }
    } else {
        // adversarial concentration on the positive class first
        let total = (model.p_w0 * n as f64).floor() as usize;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| if pop.members()[i].y_raw == 1.0 { 0usize } else { 1 });
        for &i in order.iter().take(total) {
            error_draw[i] = true;
        }
    }

    pop.members()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let report = if error_draw[i] {
                // latent error value, independent of everything else
                rng.random_bool(model.error_positive_rate)
            } else {
                m.y_raw == 1.0
            };
            MicroRecord {
                respondent_id: record_id(i),
                opening_asked: false,
                opening_value: None,
                followup_asked: true,
                followup_value: Some(if report { 1.0 } else { 0.0 }),
                proxy_flag: None,
            }
        })
        .collect()
}
