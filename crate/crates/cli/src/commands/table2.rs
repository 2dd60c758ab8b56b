//! `table2`: reproduce the reference gamma-threshold grid and check cells.

use clap::Args;
use serde::Serialize;
use skipseq_core::{
    check_reference_grid, reproduce_table2, AssumptionKind, CellCheck, Table2Row,
    ThresholdGridInputs, REFERENCE_GRID,
};

use crate::error::CliError;
use crate::output::{disp_opt, render, OutputFormat};
use crate::params::ConfigMap;

#[derive(Debug, Args)]
pub struct Table2Args {
    /// Reported follow-up rate under Skip.
    #[arg(long)]
    pub p_report: Option<f64>,
    /// Reported positive-opener rate under Skip.
    #[arg(long)]
    pub p_x_report: Option<f64>,
    /// Conjectured reported rate under All.
    #[arg(long)]
    pub p_report_all: Option<f64>,
    /// Upper end of the gamma range used for the partitions.
    #[arg(long, default_value_t = 12.0)]
    pub gamma_max: f64,
}

#[derive(Serialize)]
struct Table2Report {
    inputs: ThresholdGridInputs,
    rows: Vec<Table2Row>,
    checks: Vec<CellCheck>,
    cells_checked: usize,
    cells_passed: usize,
    all_match: bool,
}

pub fn run(args: &Table2Args, cfg: &ConfigMap, format: OutputFormat) -> Result<String, CliError> {
    let defaults = ThresholdGridInputs::default();
    let inputs = ThresholdGridInputs {
        p_report_skip: args.p_report.or_else(|| cfg.f64("p-report")).unwrap_or(defaults.p_report_skip),
        p_x_report: args.p_x_report.or_else(|| cfg.f64("p-x-report")).unwrap_or(defaults.p_x_report),
        p_report_all: args
            .p_report_all
            .or_else(|| cfg.f64("p-report-all"))
            .unwrap_or(defaults.p_report_all),
    };
    let pairs: Vec<(f64, f64)> =
        REFERENCE_GRID.iter().map(|r| (r.lambda_all, r.lambda_skip)).collect();
    let rows = reproduce_table2(&inputs, &pairs, args.gamma_max)?;
    // the reference values describe the default inputs only
    let checks = if inputs == defaults {
        check_reference_grid(&inputs, args.gamma_max)?
    } else {
        Vec::new()
    };
    let cells_checked = checks.len();
    let cells_passed = checks.iter().filter(|c| c.passed).count();
    let report = Table2Report {
        inputs,
        rows,
        all_match: cells_checked > 0 && cells_passed == cells_checked,
        cells_checked,
        cells_passed,
        checks,
    };

    render(format, &report, || {
        let mut lines = vec![format!(
            "{:>9} {:>9} | {:>10} {:>10} | {:>10} {:>10}",
            "lambda_a", "lambda_s", "joint all", "joint skip", "pv all", "pv skip"
        )];
        for row in &report.rows {
            lines.push(format!(
                "{:>9.3} {:>9.3} | {:>10} {:>10} | {:>10} {:>10}",
                row.lambda_all,
                row.lambda_skip,
                disp_opt(row.joint.all.map(|(_, hi)| hi)),
                disp_opt(row.joint.skip.map(|(_, hi)| hi)),
                disp_opt(row.per_value.all.map(|(_, hi)| hi)),
                disp_opt(row.per_value.skip.map(|(_, hi)| hi)),
            ));
        }
        if report.cells_checked > 0 {
            lines.push(format!(
                "reference check: {}/{} cells match{}",
                report.cells_passed,
                report.cells_checked,
                if report.all_match { "" } else { "  (MISMATCH)" }
            ));
            for check in report.checks.iter().filter(|c| !c.passed) {
                lines.push(format!(
                    "  FAIL ({}, {}, {}, {}): computed {} vs reference {}",
                    check.lambda_all,
                    check.lambda_skip,
                    match check.family {
                        AssumptionKind::JointBound => "joint",
                        AssumptionKind::PerValueBound => "per-value",
                    },
                    check.column,
                    disp_opt(check.computed),
                    disp_opt(check.reference),
                ));
            }
        }
        lines.join("\n")
    })
}
