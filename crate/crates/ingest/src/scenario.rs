//! Observable scenario quantities as exact count ratios over parsed records.

use skipseq_core::{
    ErrorAssumption, MisclassAllScenario, MisclassSkipScenario, NonresponseAllScenario,
    NonresponseSkipScenario,
};

use crate::error::IngestError;
use crate::record::MicroRecord;
use crate::schema::IngestSchema;

/// Skip-design nonresponse observables. Every field is a count divided by
/// the number of records, so the accounting identity holds exactly.
pub fn compute_nr_skip_scenario(
    records: &[MicroRecord],
    schema: &IngestSchema,
) -> Result<NonresponseSkipScenario, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyRecords);
    }
    let n = records.len() as f64;
    let mut n_y_resp = 0usize;
    let mut n_asked_no_answer = 0usize;
    let mut n_opening_missing = 0usize;
    let mut n_asked = 0usize;
    let mut g_sum = 0.0;

    for record in records {
        if record.opening_value.is_none() {
            n_opening_missing += 1;
        }
        if record.followup_asked {
            n_asked += 1;
            match record.followup_value {
                Some(value) => {
                    n_y_resp += 1;
                    g_sum += schema.normalize(value);
                }
                None => n_asked_no_answer += 1,
            }
        }
    }
    if n_y_resp == 0 {
        return Err(IngestError::UndefinedMean);
    }
    let mean_resp = g_sum / n_y_resp as f64;
    Ok(NonresponseSkipScenario::with_p_asked(
        n_y_resp as f64 / n,
        mean_resp,
        n_asked_no_answer as f64 / n,
        n_opening_missing as f64 / n,
        n_asked as f64 / n,
    )?)
}

/// All-design nonresponse observables: the follow-up goes to everyone.
pub fn compute_nr_all_scenario(
    records: &[MicroRecord],
    schema: &IngestSchema,
) -> Result<NonresponseAllScenario, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyRecords);
    }
    let n = records.len() as f64;
    let mut n_resp = 0usize;
    let mut g_sum = 0.0;
    for record in records {
        if let Some(value) = record.followup_value {
            n_resp += 1;
            g_sum += schema.normalize(value);
        }
    }
    if n_resp == 0 {
        return Err(IngestError::UndefinedMean);
    }
    Ok(NonresponseAllScenario::new(
        (records.len() - n_resp) as f64 / n,
        g_sum / n_resp as f64,
    )?)
}

fn binary_followup_rate(
    records: &[MicroRecord],
    positive_code: f64,
) -> Result<usize, IngestError> {
    let mut count = 0usize;
    for record in records {
        match record.followup_value {
            Some(v) if v == positive_code => count += 1,
            Some(v) if v == 0.0 => {}
            Some(v) => {
                return Err(IngestError::NonBinaryFollowup {
                    id: record.respondent_id.clone(),
                    value: v,
                    positive_code,
                })
            }
            None if record.followup_asked => {
                return Err(IngestError::NotFullResponse {
                    id: record.respondent_id.clone(),
                    detail: "follow-up asked but unanswered".into(),
                })
            }
            None => {}
        }
    }
    Ok(count)
}

/// Skip-design response-error observables: reported follow-up rate and
/// reported positive-opener rate. The error bound is an assumption supplied
/// by the caller, not something the data reveal.
pub fn compute_mc_skip_scenario(
    records: &[MicroRecord],
    schema: &IngestSchema,
    positive_code: f64,
    assumption: ErrorAssumption,
) -> Result<MisclassSkipScenario, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyRecords);
    }
    let n = records.len() as f64;
    for record in records {
        if record.opening_value.is_none() {
            return Err(IngestError::NotFullResponse {
                id: record.respondent_id.clone(),
                detail: "opening question unanswered".into(),
            });
        }
    }
    let n_report = binary_followup_rate(records, positive_code)?;
    let n_x_report = records
        .iter()
        .filter(|r| r.opening_value.is_some_and(|v| schema.positive_branch.is_positive(v)))
        .count();
    Ok(MisclassSkipScenario::new(n_report as f64 / n, n_x_report as f64 / n, assumption)?)
}

/// All-design response-error observables: just the reported rate.
pub fn compute_mc_all_scenario(
    records: &[MicroRecord],
    positive_code: f64,
    assumption: ErrorAssumption,
) -> Result<MisclassAllScenario, IngestError> {
    if records.is_empty() {
        return Err(IngestError::EmptyRecords);
    }
    for record in records {
        if !record.followup_asked || record.followup_value.is_none() {
            return Err(IngestError::NotFullResponse {
                id: record.respondent_id.clone(),
                detail: "item unanswered".into(),
            });
        }
    }
    let n_report = binary_followup_rate(records, positive_code)?;
    Ok(MisclassAllScenario::new(n_report as f64 / records.len() as f64, assumption)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use skipseq_core::AssumptionKind;

    fn skip_record(
        id: &str,
        opening: Option<f64>,
        followup: Option<Option<f64>>,
    ) -> MicroRecord {
        // followup: None = not asked, Some(None) = asked unanswered
        MicroRecord {
            respondent_id: id.into(),
            opening_asked: true,
            opening_value: opening,
            followup_asked: followup.is_some(),
            followup_value: followup.flatten(),
            proxy_flag: None,
        }
    }

    #[test]
    fn nr_skip_fields_are_exact_count_ratios() {
        let schema = IngestSchema::percent_scale();
        let records = vec![
            skip_record("r1", Some(60.0), Some(Some(50.0))),
            skip_record("r2", Some(80.0), Some(Some(30.0))),
            skip_record("r3", Some(40.0), Some(None)),
            skip_record("r4", Some(0.0), None),
            skip_record("r5", None, None),
        ];
        let s = compute_nr_skip_scenario(&records, &schema).unwrap();
        assert_eq!(s.p_y_resp(), 2.0 / 5.0);
        assert_eq!(s.p_x_resp_y_nonresp(), 1.0 / 5.0);
        assert_eq!(s.p_x_nonresp(), 1.0 / 5.0);
        assert_eq!(s.p_asked(), 3.0 / 5.0);
        assert_eq!(s.mean_resp(), 0.4);
        // ratio exactness: every field times N is an integer
        for field in [s.p_y_resp(), s.p_x_resp_y_nonresp(), s.p_x_nonresp(), s.p_asked()] {
            let scaled = field * 5.0;
            assert!((scaled - scaled.round()).abs() < 1e-9);
        }
    }

    #[test]
    fn full_response_zeroes_the_hidden_masses() {
        let schema = IngestSchema::percent_scale();
        let records = vec![
            skip_record("r1", Some(60.0), Some(Some(50.0))),
            skip_record("r2", Some(0.0), None),
        ];
        let s = compute_nr_skip_scenario(&records, &schema).unwrap();
        assert_eq!(s.p_x_resp_y_nonresp(), 0.0);
        assert_eq!(s.p_x_nonresp(), 0.0);
    }

    #[test]
    fn everyone_at_the_top_of_the_scale_means_one() {
        let schema = IngestSchema::percent_scale();
        let records = vec![
            skip_record("r1", Some(60.0), Some(Some(100.0))),
            skip_record("r2", Some(10.0), Some(Some(100.0))),
        ];
        let s = compute_nr_skip_scenario(&records, &schema).unwrap();
        assert_eq!(s.mean_resp(), 1.0);
    }

    #[test]
    fn zero_answered_followups_is_an_undefined_mean() {
        let schema = IngestSchema::percent_scale();
        let records = vec![skip_record("r1", Some(60.0), Some(None))];
        assert!(matches!(
            compute_nr_skip_scenario(&records, &schema),
            Err(IngestError::UndefinedMean)
        ));
        assert!(matches!(
            compute_nr_skip_scenario(&[], &schema),
            Err(IngestError::EmptyRecords)
        ));
    }

    #[test]
    fn nr_all_counts_missing_followups() {
        let schema = IngestSchema::default();
        let records = vec![
            MicroRecord {
                respondent_id: "r1".into(),
                opening_asked: false,
                opening_value: None,
                followup_asked: true,
                followup_value: Some(0.8),
                proxy_flag: None,
            },
            MicroRecord {
                respondent_id: "r2".into(),
                opening_asked: false,
                opening_value: None,
                followup_asked: true,
                followup_value: None,
                proxy_flag: None,
            },
        ];
        let s = compute_nr_all_scenario(&records, &schema).unwrap();
        assert_eq!(s.p_nonresp(), 0.5);
        assert_eq!(s.mean_resp(), 0.8);
    }

    #[test]
    fn mc_skip_counts_reports() {
        let schema = IngestSchema::default();
        let assumption = ErrorAssumption::new(AssumptionKind::JointBound, 0.25).unwrap();
        let records = vec![
            skip_record("r1", Some(1.0), Some(Some(1.0))),
            skip_record("r2", Some(1.0), Some(Some(0.0))),
            skip_record("r3", Some(0.0), None),
            skip_record("r4", Some(0.0), None),
        ];
        let s = compute_mc_skip_scenario(&records, &schema, 1.0, assumption).unwrap();
        assert_eq!(s.p_report(), 0.25);
        assert_eq!(s.p_x_report(), 0.5);
    }

    #[test]
    fn mc_rejects_non_binary_values() {
        let schema = IngestSchema::default();
        let assumption = ErrorAssumption::new(AssumptionKind::JointBound, 0.25).unwrap();
        let records = vec![skip_record("r1", Some(1.0), Some(Some(0.7)))];
        assert!(matches!(
            compute_mc_skip_scenario(&records, &schema, 1.0, assumption),
            Err(IngestError::NonBinaryFollowup { .. })
        ));
    }

    #[test]
    fn mc_rejects_nonresponse() {
        let schema = IngestSchema::default();
        let assumption = ErrorAssumption::new(AssumptionKind::JointBound, 0.25).unwrap();
        let records = vec![skip_record("r1", None, None)];
        assert!(matches!(
            compute_mc_skip_scenario(&records, &schema, 1.0, assumption),
            Err(IngestError::NotFullResponse { .. })
        ));
    }

    #[test]
    fn mc_all_zero_reports() {
        let assumption = ErrorAssumption::new(AssumptionKind::PerValueBound, 0.1).unwrap();
        let records: Vec<MicroRecord> = (0..4)
            .map(|i| MicroRecord {
                respondent_id: format!("r{i}"),
                opening_asked: false,
                opening_value: None,
                followup_asked: true,
                followup_value: Some(0.0),
                proxy_flag: None,
            })
            .collect();
        let s = compute_mc_all_scenario(&records, 1.0, assumption).unwrap();
        assert_eq!(s.p_report(), 0.0);
    }
}
