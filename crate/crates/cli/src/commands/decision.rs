//! `loss`, `decide` and `sweep`: the decision layer over a full scenario.

use clap::Args;
use serde::Serialize;
use skipseq_core::{decide, gamma_partition, DecisionScenario, DesignOption, LossBreakdown};

use crate::error::CliError;
use crate::output::{disp, render, OutputFormat};
use crate::params::{ConfigMap, DesignArg, ScenarioArgs};

#[derive(Debug, Args)]
pub struct LossArgs {
    /// Design option to evaluate.
    #[arg(long, value_enum)]
    pub option: DesignArg,
    /// Cost weight gamma.
    #[arg(long)]
    pub gamma: f64,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    /// Cost weight gamma.
    #[arg(long)]
    pub gamma: f64,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Upper end of the swept gamma range.
    #[arg(long, default_value_t = 10.0)]
    pub gamma_max: f64,
    #[command(flatten)]
    pub scenario: ScenarioArgs,
}

#[derive(Serialize)]
struct LossLine {
    option: DesignOption,
    cost_fraction: f64,
    width: f64,
    loss: f64,
}

impl LossLine {
    fn new(breakdown: &LossBreakdown, gamma: f64) -> Self {
        Self {
            option: breakdown.option,
            cost_fraction: breakdown.cost_fraction,
            width: breakdown.width,
            loss: breakdown.loss_at(gamma),
        }
    }
}

fn warn_lambda_ordering(scenario: &DecisionScenario) {
    if let Some(warning) = scenario.lambda_ordering_warning() {
        eprintln!("warning: {warning}");
    }
}

pub fn run_loss(args: &LossArgs, cfg: &ConfigMap, format: OutputFormat) -> Result<String, CliError> {
    let scenario = args.scenario.build(cfg)?;
    warn_lambda_ordering(&scenario);
    if args.gamma < 0.0 {
        return Err(CliError::validation(format!("gamma = {} must be nonnegative", args.gamma)));
    }
    let breakdown = scenario.loss(args.option.into());
    let line = LossLine::new(&breakdown, args.gamma);
    render(format, &line, || {
        format!(
            "option {}: loss = {} * gamma + {} = {} at gamma = {}",
            line.option,
            disp(line.cost_fraction),
            disp(line.width),
            disp(line.loss),
            disp(args.gamma),
        )
    })
}

#[derive(Serialize)]
struct DecideReport {
    gamma: f64,
    losses: Vec<LossLine>,
    minimizers: Vec<DesignOption>,
    chosen: DesignOption,
}

pub fn run_decide(
    args: &DecideArgs,
    cfg: &ConfigMap,
    format: OutputFormat,
) -> Result<String, CliError> {
    let scenario = args.scenario.build(cfg)?;
    warn_lambda_ordering(&scenario);
    let decision = decide(args.gamma, &scenario)?;
    let report = DecideReport {
        gamma: decision.gamma,
        losses: decision.losses.iter().map(|l| LossLine::new(l, decision.gamma)).collect(),
        minimizers: decision.minimizers.clone(),
        chosen: decision.chosen,
    };
    render(format, &report, || {
        let mut lines = vec![format!("gamma = {}", disp(report.gamma))];
        for l in &report.losses {
            lines.push(format!(
                "  {:<5} f = {}  d = {}  loss = {}",
                l.option.to_string(),
                disp(l.cost_fraction),
                disp(l.width),
                disp(l.loss)
            ));
        }
        lines.push(format!("chosen: {}", report.chosen));
        lines.join("\n")
    })
}

#[derive(Serialize)]
struct SweepCell {
    lo: f64,
    hi: f64,
    minimizers: Vec<DesignOption>,
    chosen: DesignOption,
}

#[derive(Serialize)]
struct SweepReport {
    gamma_max: f64,
    breakpoints: Vec<f64>,
    cells: Vec<SweepCell>,
}

pub fn run_sweep(args: &SweepArgs, cfg: &ConfigMap, format: OutputFormat) -> Result<String, CliError> {
    let scenario = args.scenario.build(cfg)?;
    warn_lambda_ordering(&scenario);
    let partition = gamma_partition(&scenario, args.gamma_max)?;
    let report = SweepReport {
        gamma_max: partition.gamma_max,
        breakpoints: partition.breakpoints.clone(),
        cells: partition
            .cells
            .iter()
            .map(|c| SweepCell {
                lo: c.lo,
                hi: c.hi,
                minimizers: c.minimizers.clone(),
                chosen: c.chosen,
            })
            .collect(),
    };
    render(format, &report, || {
        let mut lines =
            vec![format!("breakpoints: {:?}", report.breakpoints.iter().map(|b| disp(*b)).collect::<Vec<_>>())];
        for c in &report.cells {
            lines.push(format!(
                "  [{}, {}] -> {}",
                disp(c.lo),
                disp(c.hi),
                c.chosen
            ));
        }
        lines.join("\n")
    })
}
