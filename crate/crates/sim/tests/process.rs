//! Structural invariants of the simulated response processes.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use skipseq_core::{AssumptionKind, DesignOption, ErrorAssumption};
use skipseq_ingest::{GFunction, MicroRecord};
use skipseq_sim::*;

fn binary_pop(n: usize, p_x: f64, p_positive: f64, seed: u64) -> Population {
    gen_population(
        &PopulationConfig {
            n,
            p_x,
            y_given_x: YDistribution::Bernoulli { p_positive },
            support_max: 1.0,
            g: GFunction::LinearScaled,
        },
        seed,
    )
    .unwrap()
}

fn scale_pop(n: usize, seed: u64) -> Population {
    gen_population(
        &PopulationConfig {
            n,
            p_x: 0.87,
            y_given_x: YDistribution::Uniform,
            support_max: 100.0,
            g: GFunction::LinearScaled,
        },
        seed,
    )
    .unwrap()
}

fn nr_model(rule: MissingnessRule) -> ResponseModel {
    ResponseModel::Nonresponse(NonresponseModel {
        p_skip_open: 0.0723,
        p_skip_follow: 0.0227,
        rule,
    })
}

fn assert_skip_structure(records: &[MicroRecord]) {
    for r in records {
        let positive = r.opening_value.is_some_and(|v| v > 0.0);
        assert_eq!(r.followup_asked, r.opening_asked && positive, "record {r:?}");
        if r.followup_value.is_some() {
            assert!(r.followup_asked, "record {r:?}");
        }
    }
}

#[test]
fn identical_seeds_give_bit_identical_datasets() {
    let pop = scale_pop(4000, 3);
    for rule in [
        MissingnessRule::Random,
        MissingnessRule::ConcentrateHigh,
        MissingnessRule::ConcentrateLow,
    ] {
        let a = apply_design(&pop, DesignOption::Skip, &nr_model(rule), 17).unwrap();
        let b = apply_design(&pop, DesignOption::Skip, &nr_model(rule), 17).unwrap();
        assert_eq!(a, b);
    }
    let a = apply_design(&pop, DesignOption::Skip, &nr_model(MissingnessRule::Random), 17).unwrap();
    let c = apply_design(&pop, DesignOption::Skip, &nr_model(MissingnessRule::Random), 18).unwrap();
    assert_ne!(a, c);
}

#[test]
fn none_design_asks_nothing() {
    let pop = scale_pop(200, 5);
    let obs = apply_design(&pop, DesignOption::None, &nr_model(MissingnessRule::Random), 1).unwrap();
    assert!(obs.records.iter().all(|r| !r.opening_asked && !r.followup_asked));
    assert!(matches!(empirical_quantities(&obs), Err(SimError::NoObservables(_))));
}

#[test]
fn skip_logic_holds_on_every_generated_record() {
    let pop = scale_pop(3000, 11);
    for rule in [
        MissingnessRule::Random,
        MissingnessRule::ConcentrateHigh,
        MissingnessRule::ConcentrateLow,
    ] {
        let obs = apply_design(&pop, DesignOption::Skip, &nr_model(rule), 23).unwrap();
        assert_skip_structure(&obs.records);
    }

    let bpop = binary_pop(3000, 0.3, 0.5, 4);
    for flavor in [
        ErrorFlavor::RandomFlips { rate: 0.4 },
        ErrorFlavor::OpeningFalseNegatives { rate: 0.3 },
        ErrorFlavor::OpeningFalsePositives { rate: 0.3, report_positive_followup: true },
    ] {
        let model = ResponseModel::Misclassification(MisclassModel {
            assumption: ErrorAssumption::new(AssumptionKind::JointBound, 0.2).unwrap(),
            flavor,
        });
        let obs = apply_design(&bpop, DesignOption::Skip, &model, 9).unwrap();
        assert_skip_structure(&obs.records);
    }
}

#[test]
fn opening_nonresponse_rate_lands_in_binomial_band() {
    let pop = scale_pop(100_000, 2);
    let obs = apply_design(&pop, DesignOption::Skip, &nr_model(MissingnessRule::Random), 6).unwrap();
    let missing = obs.records.iter().filter(|r| r.opening_value.is_none()).count() as f64;
    let rate = missing / obs.records.len() as f64;
    let sigma = (0.0723_f64 * (1.0 - 0.0723) / 100_000.0).sqrt();
    assert!((rate - 0.0723).abs() <= 3.0 * sigma, "rate {rate}");
}

#[test]
fn zero_error_budget_reports_the_truth() {
    let pop = binary_pop(2000, 0.4, 0.6, 8);
    let model = ResponseModel::Misclassification(MisclassModel {
        assumption: ErrorAssumption::new(AssumptionKind::JointBound, 0.0).unwrap(),
        flavor: ErrorFlavor::RandomFlips { rate: 0.8 },
    });
    let obs = apply_design(&pop, DesignOption::All, &model, 12).unwrap();
    for (member, record) in pop.members().iter().zip(&obs.records) {
        assert_eq!(record.followup_value, Some(member.y_raw));
    }
}

/// Misreport counts per true cell for a skip-design error dataset.
fn skip_misreports(pop: &Population, records: &[MicroRecord]) -> ([usize; 3], [usize; 3]) {
    let mut wrong = [0usize; 3];
    let mut totals = [0usize; 3];
    for (member, record) in pop.members().iter().zip(records) {
        let true_cell = match (member.x, member.y_raw == 1.0) {
            (false, _) => 0,
            (true, false) => 1,
            (true, true) => 2,
        };
        let reported_cell = match (record.opening_value, record.followup_value) {
            (Some(x), _) if x == 0.0 => 0,
            (Some(_), Some(y)) if y == 0.0 => 1,
            (Some(_), Some(_)) => 2,
            _ => panic!("full response expected: {record:?}"),
        };
        totals[true_cell] += 1;
        if reported_cell != true_cell {
            wrong[true_cell] += 1;
        }
    }
    (wrong, totals)
}

#[test]
fn realized_error_rates_respect_the_declared_budget() {
    let mut rng = StdRng::seed_from_u64(100);
    for trial in 0..50 {
        let pop = binary_pop(
            rng.random_range(200..1000),
            rng.random_range(0.1..0.9),
            rng.random_range(0.1..0.9),
            trial,
        );
        let lambda = rng.random_range(0.0..0.5);
        let kind = if rng.random_bool(0.5) {
            AssumptionKind::JointBound
        } else {
            AssumptionKind::PerValueBound
        };
        let flavor = match rng.random_range(0..5) {
            0 => ErrorFlavor::FalseNegatives { rate: rng.random_range(0.0..1.0) },
            1 => ErrorFlavor::FalsePositives { rate: rng.random_range(0.0..1.0) },
            2 => ErrorFlavor::RandomFlips { rate: rng.random_range(0.0..1.0) },
            3 => ErrorFlavor::OpeningFalseNegatives { rate: rng.random_range(0.0..1.0) },
            _ => ErrorFlavor::OpeningFalsePositives {
                rate: rng.random_range(0.0..1.0),
                report_positive_followup: rng.random_bool(0.5),
            },
        };
        let model = ResponseModel::Misclassification(MisclassModel {
            assumption: ErrorAssumption::new(kind, lambda).unwrap(),
            flavor,
        });
        let obs = apply_design(&pop, DesignOption::Skip, &model, trial + 1000).unwrap();
        let (wrong, totals) = skip_misreports(&pop, &obs.records);

        match kind {
            AssumptionKind::JointBound => {
                let total_wrong: usize = wrong.iter().sum();
                assert!(
                    total_wrong as f64 <= lambda * pop.len() as f64 + 1e-9,
                    "joint budget violated: {total_wrong} wrong, lambda {lambda}, n {}",
                    pop.len()
                );
            }
            AssumptionKind::PerValueBound => {
                for cell in 0..3 {
                    assert!(
                        wrong[cell] as f64 <= lambda * totals[cell] as f64 + 1e-9,
                        "per-value budget violated in cell {cell}"
                    );
                }
            }
        }
    }
}

#[test]
fn incompatible_pairings_are_rejected() {
    let pop = scale_pop(100, 1);
    let model = ResponseModel::Misclassification(MisclassModel {
        assumption: ErrorAssumption::new(AssumptionKind::JointBound, 0.1).unwrap(),
        flavor: ErrorFlavor::NoErrors,
    });
    // non-binary population under a response-error model
    assert!(matches!(
        apply_design(&pop, DesignOption::All, &model, 1),
        Err(SimError::NonBinaryPopulation)
    ));

    // mixture under skip sequencing
    let bpop = binary_pop(100, 0.5, 0.5, 2);
    let mixture = ResponseModel::Mixture(MixtureModel {
        assumption: skipseq_core::MixtureAssumption::new(0.2, true).unwrap(),
        p_w0: 0.1,
        error_positive_rate: 0.5,
    });
    assert!(matches!(
        apply_design(&bpop, DesignOption::Skip, &mixture, 1),
        Err(SimError::IncompatibleModel { .. })
    ));

    // opening-error flavor under the all design
    let opening = ResponseModel::Misclassification(MisclassModel {
        assumption: ErrorAssumption::new(AssumptionKind::JointBound, 0.1).unwrap(),
        flavor: ErrorFlavor::OpeningFalseNegatives { rate: 0.1 },
    });
    assert!(matches!(
        apply_design(&bpop, DesignOption::All, &opening, 1),
        Err(SimError::IncompatibleModel { .. })
    ));
}

#[test]
fn sample_mode_draws_a_subset() {
    let pop = scale_pop(1000, 21);
    let obs = apply_design(&pop, DesignOption::Skip, &nr_model(MissingnessRule::Random), 2).unwrap();
    let sampled = sample_records(&obs, 250, 77).unwrap();
    assert_eq!(sampled.records.len(), 250);
    let again = sample_records(&obs, 250, 77).unwrap();
    assert_eq!(sampled, again);
    for r in &sampled.records {
        assert!(obs.records.contains(r));
    }
    assert!(sample_records(&obs, 0, 1).is_err());
    assert!(sample_records(&obs, 1001, 1).is_err());
}
