//! `simulate`: generate a synthetic dataset, optionally write it as
//! microdata, and report the region/coverage bookkeeping.

use std::fs::File;
use std::io::Write;

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use skipseq_core::{DesignOption, UnitInterval};
use skipseq_ingest::{write_microdata, GFunction};
use skipseq_sim::{
    apply_design, coverage_check, empirical_quantities, gen_population, sample_records,
    MissingnessRule, NonresponseModel, Observables, PopulationConfig, ResponseModel,
    YDistribution,
};

use crate::error::CliError;
use crate::output::{disp, render, OutputFormat};
use crate::params::{ConfigMap, DesignArg};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Seed for the population and response draws.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Where to write the microdata ('-' for stdout; omitted = nowhere).
    #[arg(long)]
    pub out: Option<String>,
    /// Design option override.
    #[arg(long, value_enum)]
    pub design: Option<DesignArg>,
    /// Draw this many respondents instead of using the full population.
    #[arg(long)]
    pub sample_size: Option<usize>,
}

/// Structured simulation spec, normally supplied via `--config`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct SimulateSpec {
    pub population: PopulationConfig,
    pub design: DesignOption,
    pub model: ResponseModel,
    pub seed: u64,
    pub sample_size: Option<usize>,
    pub out: Option<String>,
}

impl Default for SimulateSpec {
    /// A skip-design nonresponse run over a 0-100 scale item with rates in
    /// the neighborhood surveys actually report.
    fn default() -> Self {
        Self {
            population: PopulationConfig {
                n: 10_000,
                p_x: 0.9,
                y_given_x: YDistribution::Uniform,
                support_max: 100.0,
                g: GFunction::LinearScaled,
            },
            design: DesignOption::Skip,
            model: ResponseModel::Nonresponse(NonresponseModel {
                p_skip_open: 0.0723,
                p_skip_follow: 0.0227,
                rule: MissingnessRule::Random,
            }),
            seed: 0,
            sample_size: None,
            out: None,
        }
    }
}

#[derive(Serialize)]
struct RegionOut {
    lo: f64,
    hi: f64,
    width: f64,
}

#[derive(Serialize)]
struct SimulateReport {
    design: DesignOption,
    n_records: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    quantities: Option<Observables>,
    region: RegionOut,
    true_mean: f64,
    true_p_positive: Option<f64>,
    covered: bool,
    out: Option<String>,
}

pub fn run(args: &SimulateArgs, cfg: &ConfigMap, format: OutputFormat) -> Result<String, CliError> {
    let mut spec: SimulateSpec = if cfg.raw().is_empty() {
        SimulateSpec::default()
    } else {
        serde_json::from_value(Value::Object(cfg.raw().clone()))
            .map_err(|e| CliError::validation(format!("invalid simulate config: {e}")))?
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if let Some(design) = args.design {
        spec.design = design.into();
    }
    if let Some(out) = &args.out {
        spec.out = Some(out.clone());
    }
    if let Some(m) = args.sample_size {
        spec.sample_size = Some(m);
    }

    let population = gen_population(&spec.population, spec.seed)?;
    let mut observed = apply_design(&population, spec.design, &spec.model, spec.seed ^ 0x9e37_79b9)?;
    if let Some(m) = spec.sample_size {
        observed = sample_records(&observed, m, spec.seed ^ 0x7f4a_7c15)?;
    }

    let dataset_to_stdout = spec.out.as_deref() == Some("-");
    if let Some(path) = &spec.out {
        if dataset_to_stdout {
            let stdout = std::io::stdout();
            write_microdata(&observed.records, &observed.schema, stdout.lock())?;
        } else {
            write_microdata(&observed.records, &observed.schema, File::create(path)?)?;
        }
    }

    // design None yields no observables; its region is the full interval
    let quantities = match spec.design {
        DesignOption::None => None,
        _ => Some(empirical_quantities(&observed)?),
    };
    let region = quantities.as_ref().map(|q| q.region()).unwrap_or_else(UnitInterval::full);
    let truth = observed.truth;
    let covered = match quantities {
        Some(Observables::McAll(_)) | Some(Observables::McSkip(_)) => {
            coverage_check(truth.p_positive.unwrap_or(truth.mean_g), &region)
        }
        _ => coverage_check(truth.mean_g, &region),
    };
    let report = SimulateReport {
        design: spec.design,
        n_records: observed.records.len(),
        quantities,
        region: RegionOut { lo: region.lo(), hi: region.hi(), width: region.width() },
        true_mean: truth.mean_g,
        true_p_positive: truth.p_positive,
        covered,
        out: spec.out.clone(),
    };

    let rendered = render(format, &report, || {
        format!(
            "design {}  n = {}\nregion [{}, {}]  width {}\ntruth  mean {}  covered: {}",
            report.design,
            report.n_records,
            disp(report.region.lo),
            disp(report.region.hi),
            disp(report.region.width),
            disp(report.true_mean),
            report.covered,
        )
    })?;

    // when the dataset itself occupies stdout, the report moves to stderr
    if dataset_to_stdout {
        let mut stderr = std::io::stderr();
        writeln!(stderr, "{rendered}").ok();
        Ok(String::new())
    } else {
        Ok(rendered)
    }
}
