//! Deterministic record builders calibrated to exact counts.
//!
//! Unlike the seeded generators, these construct a skip-design dataset with
//! prescribed counts in every response class, which is what a file
//! calibrated to published survey margins needs.

use skipseq_ingest::MicroRecord;

/// Exact class counts for a skip-design nonresponse dataset. Total rows =
/// opening nonrespondents + negative branch + follow-up nonrespondents +
/// all follow-up responders.
#[derive(Debug, Clone, PartialEq)]
pub struct SkipNonresponseCounts {
    /// Rows that never answer the opening question.
    pub n_opening_missing: usize,
    /// Rows answering the opening on the negative branch (never asked on).
    pub n_negative_branch: usize,
    /// Rows asked the follow-up that do not answer it.
    pub n_followup_missing: usize,
    /// Follow-up answers as (raw value, row count) groups.
    pub followup_values: Vec<(f64, usize)>,
    /// Opening answer written for positive-branch rows.
    pub positive_opening_value: f64,
}

impl SkipNonresponseCounts {
    pub fn total(&self) -> usize {
        self.n_opening_missing
            + self.n_negative_branch
            + self.n_followup_missing
            + self.followup_values.iter().map(|(_, k)| k).sum::<usize>()
    }
}

/// Build the records, ids sequential, classes in a fixed deterministic
/// order: responders, follow-up nonrespondents, negative branch, opening
/// nonrespondents.
pub fn build_skip_nonresponse_records(counts: &SkipNonresponseCounts) -> Vec<MicroRecord> {
    let mut records = Vec::with_capacity(counts.total());
    let mut next = 0usize;
    let id = move |n: &mut usize| {
        let s = format!("c{:07}", *n);
        *n += 1;
        s
    };

    for &(value, how_many) in &counts.followup_values {
        for _ in 0..how_many {
            records.push(MicroRecord {
                respondent_id: id(&mut next),
                opening_asked: true,
                opening_value: Some(counts.positive_opening_value),
                followup_asked: true,
                followup_value: Some(value),
                proxy_flag: None,
            });
        }
    }
    for _ in 0..counts.n_followup_missing {
        records.push(MicroRecord {
            respondent_id: id(&mut next),
            opening_asked: true,
            opening_value: Some(counts.positive_opening_value),
            followup_asked: true,
            followup_value: None,
            proxy_flag: None,
        });
    }
    for _ in 0..counts.n_negative_branch {
        records.push(MicroRecord {
            respondent_id: id(&mut next),
            opening_asked: true,
            opening_value: Some(0.0),
            followup_asked: false,
            followup_value: None,
            proxy_flag: None,
        });
    }
    for _ in 0..counts.n_opening_missing {
        records.push(MicroRecord {
            respondent_id: id(&mut next),
            opening_asked: true,
            opening_value: None,
            followup_asked: false,
            followup_value: None,
            proxy_flag: None,
        });
    }
    records
}
