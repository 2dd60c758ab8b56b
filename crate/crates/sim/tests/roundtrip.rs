//! Simulator-emitted microdata re-ingested reproduces the records and the
//! observable quantities exactly.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use skipseq_core::{AssumptionKind, DesignOption, ErrorAssumption};
use skipseq_ingest::{parse_microdata, write_microdata, GFunction};
use skipseq_sim::*;

fn assert_roundtrip(obs: &ObservedDataset) {
    let mut buf = Vec::new();
    write_microdata(&obs.records, &obs.schema, &mut buf).unwrap();
    let parsed = parse_microdata(buf.as_slice(), &obs.schema).unwrap();
    assert!(parsed.rejects.is_empty(), "rejects: {:?}", parsed.rejects);
    assert_eq!(parsed.records, obs.records);

    if obs.design != DesignOption::None {
        let before = empirical_quantities(obs).unwrap();
        let reparsed = ObservedDataset { records: parsed.records, ..obs.clone() };
        let after = empirical_quantities(&reparsed).unwrap();
        assert_eq!(before, after);
    }
}

#[test]
fn every_design_and_model_roundtrips() {
    let mut rng = StdRng::seed_from_u64(321);
    for trial in 0..20u64 {
        let scale_pop = gen_population(
            &PopulationConfig {
                n: rng.random_range(100..400),
                p_x: rng.random_range(0.2..0.9),
                y_given_x: YDistribution::Uniform,
                support_max: 100.0,
                g: GFunction::LinearScaled,
            },
            trial,
        )
        .unwrap();
        let nr = ResponseModel::Nonresponse(NonresponseModel {
            p_skip_open: rng.random_range(0.0..0.3),
            p_skip_follow: rng.random_range(0.0..0.3),
            rule: MissingnessRule::Random,
        });
        for design in [DesignOption::All, DesignOption::Skip, DesignOption::None] {
            assert_roundtrip(&apply_design(&scale_pop, design, &nr, trial + 5).unwrap());
        }

        let binary_pop = gen_population(
            &PopulationConfig {
                n: rng.random_range(100..400),
                p_x: rng.random_range(0.2..0.9),
                y_given_x: YDistribution::Bernoulli { p_positive: rng.random_range(0.0..=1.0) },
                support_max: 1.0,
                g: GFunction::LinearScaled,
            },
            trial + 50,
        )
        .unwrap();
        let mc = ResponseModel::Misclassification(MisclassModel {
            assumption: ErrorAssumption::new(AssumptionKind::JointBound, 0.2).unwrap(),
            flavor: ErrorFlavor::RandomFlips { rate: 0.15 },
        });
        for design in [DesignOption::All, DesignOption::Skip] {
            assert_roundtrip(&apply_design(&binary_pop, design, &mc, trial + 9).unwrap());
        }
    }
}

#[test]
fn calibrated_counts_survive_the_roundtrip() {
    let counts = SkipNonresponseCounts {
        n_opening_missing: 77,
        n_negative_branch: 61,
        n_followup_missing: 21,
        followup_values: vec![(40.0, 500), (41.0, 341)],
        positive_opening_value: 50.0,
    };
    let records = build_skip_nonresponse_records(&counts);
    assert_eq!(records.len(), counts.total());

    let schema = skipseq_ingest::IngestSchema {
        design: DesignOption::Skip,
        ..skipseq_ingest::IngestSchema::percent_scale()
    };
    let mut buf = Vec::new();
    write_microdata(&records, &schema, &mut buf).unwrap();
    let parsed = parse_microdata(buf.as_slice(), &schema).unwrap();
    assert!(parsed.rejects.is_empty());
    assert_eq!(parsed.records, records);
}
