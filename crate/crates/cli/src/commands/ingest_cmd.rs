//! `ingest`: parse a microdata file and compute its observable quantities.

use std::fs::File;
use std::io::Read;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use serde_json::Value;
use skipseq_core::ErrorAssumption;
use skipseq_ingest::{
    compute_mc_all_scenario, compute_mc_skip_scenario, compute_nr_all_scenario,
    compute_nr_skip_scenario, parse_microdata, IngestSchema, PositiveBranch, RejectedRow,
};
use skipseq_sim::Observables;

use crate::error::CliError;
use crate::output::{disp, render, OutputFormat};
use crate::params::{need, need_assumption, AssumptionArg, ConfigMap, DesignArg, VariantArg};

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Input path, or '-' for stdin.
    #[arg(long, default_value = "-")]
    pub input: String,
    /// Design the file was collected under.
    #[arg(long, value_enum, default_value = "skip")]
    pub design: DesignArg,
    /// Inferential problem the file's quantities feed.
    #[arg(long, value_enum, default_value = "nonresponse")]
    pub variant: VariantArg,
    /// Outcome support upper end.
    #[arg(long)]
    pub support_max: Option<f64>,
    /// Field delimiter.
    #[arg(long)]
    pub delimiter: Option<char>,
    /// Missing-value sentinel.
    #[arg(long)]
    pub missing_sentinel: Option<String>,
    /// Opening answers above this route to the follow-up.
    #[arg(long)]
    pub positive_threshold: Option<f64>,
    /// Follow-up value coding "positive" under the misclass variant.
    #[arg(long, default_value_t = 1.0)]
    pub positive_code: f64,
    /// Error bound lambda (misclass variant).
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Error-bound family (misclass variant).
    #[arg(long, value_enum)]
    pub assumption: Option<AssumptionArg>,
    /// Full schema as a JSON file, overriding the individual flags.
    #[arg(long)]
    pub schema: Option<PathBuf>,
}

#[derive(Serialize)]
struct RejectOut {
    line: u64,
    respondent_id: Option<String>,
    reason: String,
}

impl From<&RejectedRow> for RejectOut {
    fn from(r: &RejectedRow) -> Self {
        Self {
            line: r.line,
            respondent_id: r.respondent_id.clone(),
            reason: r.reason.to_string(),
        }
    }
}

#[derive(Serialize)]
struct IngestReport {
    n_records: usize,
    n_rejects: usize,
    rejects: Vec<RejectOut>,
    scenario: Observables,
    region: RegionOut,
}

#[derive(Serialize)]
struct RegionOut {
    lo: f64,
    hi: f64,
    width: f64,
}

fn build_schema(args: &IngestArgs) -> Result<IngestSchema, CliError> {
    if let Some(path) = &args.schema {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read schema {path:?}: {e}")))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("schema {path:?} is not valid JSON: {e}")))?;
        return serde_json::from_value(value)
            .map_err(|e| CliError::validation(format!("schema {path:?}: {e}")));
    }
    let mut schema = IngestSchema { design: args.design.into(), ..IngestSchema::default() };
    if let Some(s) = args.support_max {
        schema.support_max = s;
    }
    if let Some(d) = args.delimiter {
        schema.delimiter = u8::try_from(d)
            .map_err(|_| CliError::validation("delimiter must be a single ASCII character"))?;
    }
    if let Some(sentinel) = &args.missing_sentinel {
        schema.missing_sentinel = sentinel.clone();
    }
    if let Some(threshold) = args.positive_threshold {
        schema.positive_branch = PositiveBranch { threshold };
    }
    Ok(schema)
}

pub fn run(args: &IngestArgs, cfg: &ConfigMap, format: OutputFormat) -> Result<String, CliError> {
    let schema = build_schema(args)?;
    let mut raw = Vec::new();
    if args.input == "-" {
        std::io::stdin().read_to_end(&mut raw)?;
    } else {
        File::open(&args.input)
            .map_err(|e| CliError::validation(format!("cannot open {}: {e}", args.input)))?
            .read_to_end(&mut raw)?;
    }
    let parsed = parse_microdata(raw.as_slice(), &schema)?;

    let scenario = match (args.variant, args.design) {
        (VariantArg::Nonresponse, DesignArg::Skip) => {
            Observables::NrSkip(compute_nr_skip_scenario(&parsed.records, &schema)?)
        }
        (VariantArg::Nonresponse, DesignArg::All) => {
            Observables::NrAll(compute_nr_all_scenario(&parsed.records, &schema)?)
        }
        (VariantArg::Misclass, design) => {
            let assumption = ErrorAssumption::new(
                need_assumption(args.assumption, cfg)?,
                need("lambda", args.lambda, cfg)?,
            )?;
            match design {
                DesignArg::Skip => Observables::McSkip(compute_mc_skip_scenario(
                    &parsed.records,
                    &schema,
                    args.positive_code,
                    assumption,
                )?),
                DesignArg::All => Observables::McAll(compute_mc_all_scenario(
                    &parsed.records,
                    args.positive_code,
                    assumption,
                )?),
                DesignArg::None => {
                    return Err(CliError::validation(
                        "design option none collects no data to ingest",
                    ))
                }
            }
        }
        (_, DesignArg::None) => {
            return Err(CliError::validation("design option none collects no data to ingest"))
        }
    };

    let region = scenario.region();
    let report = IngestReport {
        n_records: parsed.records.len(),
        n_rejects: parsed.rejects.len(),
        rejects: parsed.rejects.iter().map(RejectOut::from).collect(),
        scenario,
        region: RegionOut { lo: region.lo(), hi: region.hi(), width: region.width() },
    };
    render(format, &report, || {
        let mut lines = vec![
            format!("records  {}", report.n_records),
            format!("rejects  {}", report.n_rejects),
            format!(
                "region   [{}, {}]  width {}",
                disp(report.region.lo),
                disp(report.region.hi),
                disp(report.region.width)
            ),
        ];
        for r in &report.rejects {
            lines.push(format!("  line {}: {}", r.line, r.reason));
        }
        lines.join("\n")
    })
}
