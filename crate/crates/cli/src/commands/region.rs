//! `region` subcommands: one identification region per design option.

use clap::Subcommand;
use serde::Serialize;
use skipseq_core::{
    region_none, ErrorAssumption, MisclassAllScenario, MisclassSkipScenario,
    NonresponseAllScenario, NonresponseSkipScenario, UnitInterval,
};

use crate::error::CliError;
use crate::output::{disp, render, OutputFormat};
use crate::params::{fallback, need, need_assumption, AssumptionArg, ConfigMap};

#[derive(Debug, Subcommand)]
pub enum RegionCommand {
    /// Nonresponse, everyone asked.
    NrAll {
        #[arg(long)]
        p_nonresp: Option<f64>,
        #[arg(long)]
        mean_resp: Option<f64>,
    },
    /// Nonresponse under skip sequencing.
    NrSkip {
        #[arg(long)]
        p_y_resp: Option<f64>,
        #[arg(long)]
        mean_resp: Option<f64>,
        #[arg(long)]
        p_x_open_y_miss: Option<f64>,
        #[arg(long)]
        p_x_miss: Option<f64>,
        #[arg(long)]
        p_asked: Option<f64>,
    },
    /// Response error, everyone asked.
    McAll {
        #[arg(long)]
        p_report: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, value_enum)]
        assumption: Option<AssumptionArg>,
    },
    /// Response error under skip sequencing.
    McSkip {
        #[arg(long)]
        p_report: Option<f64>,
        #[arg(long)]
        p_x_report: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, value_enum)]
        assumption: Option<AssumptionArg>,
    },
    /// The item is not asked: the full unit interval.
    None,
}

#[derive(Serialize)]
struct RegionReport {
    lo: f64,
    hi: f64,
    width: f64,
}

impl From<UnitInterval> for RegionReport {
    fn from(r: UnitInterval) -> Self {
        Self { lo: r.lo(), hi: r.hi(), width: r.width() }
    }
}

pub fn run(
    command: &RegionCommand,
    cfg: &ConfigMap,
    format: OutputFormat,
) -> Result<String, CliError> {
    let region = match command {
        RegionCommand::NrAll { p_nonresp, mean_resp } => NonresponseAllScenario::new(
            need("p-nonresp", *p_nonresp, cfg)?,
            need("mean-resp", *mean_resp, cfg)?,
        )?
        .region(),
        RegionCommand::NrSkip { p_y_resp, mean_resp, p_x_open_y_miss, p_x_miss, p_asked } => {
            let q = need("p-y-resp", *p_y_resp, cfg)?;
            let m = need("mean-resp", *mean_resp, cfg)?;
            let a = need("p-x-open-y-miss", *p_x_open_y_miss, cfg)?;
            let b = need("p-x-miss", *p_x_miss, cfg)?;
            match fallback("p-asked", *p_asked, cfg) {
                Some(asked) => NonresponseSkipScenario::with_p_asked(q, m, a, b, asked)?,
                None => NonresponseSkipScenario::new(q, m, a, b)?,
            }
            .region()
        }
        RegionCommand::McAll { p_report, lambda, assumption } => MisclassAllScenario::new(
            need("p-report", *p_report, cfg)?,
            ErrorAssumption::new(
                need_assumption(*assumption, cfg)?,
                need("lambda", *lambda, cfg)?,
            )?,
        )?
        .region(),
        RegionCommand::McSkip { p_report, p_x_report, lambda, assumption } => {
            MisclassSkipScenario::new(
                need("p-report", *p_report, cfg)?,
                need("p-x-report", *p_x_report, cfg)?,
                ErrorAssumption::new(
                    need_assumption(*assumption, cfg)?,
                    need("lambda", *lambda, cfg)?,
                )?,
            )?
            .region()
        }
        RegionCommand::None => region_none(),
    };

    let report = RegionReport::from(region);
    render(format, &report, || {
        format!(
            "region  [{}, {}]\nwidth   {}",
            disp(report.lo),
            disp(report.hi),
            disp(report.width)
        )
    })
}
