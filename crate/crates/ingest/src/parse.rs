//! Total, reject-listing microdata parser.
//!
//! A malformed header or a duplicate respondent id aborts the parse; any
//! row-level problem sends the row to the reject list with its line number
//! and the violated rule, and parsing continues. Accepted plus rejected rows
//! always account for every data row in the input.

use std::collections::HashSet;
use std::io::Read;

use csv::ReaderBuilder;
use skipseq_core::DesignOption;
use thiserror::Error;

use crate::error::IngestError;
use crate::record::MicroRecord;
use crate::schema::IngestSchema;

/// Why a row was rejected.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RejectReason {
    #[error("column {column:?} is missing from this row")]
    MissingField { column: String },
    #[error("column {column:?} holds {value:?}, expected a boolean (1/0/true/false)")]
    BadBool { column: String, value: String },
    #[error("column {column:?} holds {value:?}, expected a number or the missing sentinel")]
    BadNumber { column: String, value: String },
    #[error("follow-up value {value} lies outside [0, {support_max}]")]
    FollowupOutOfSupport { value: f64, support_max: f64 },
    #[error("follow-up value present although the follow-up was not asked")]
    FollowupValueWithoutAsk,
    #[error("follow-up asked without a positive-branch opening answer (skip logic)")]
    FollowupWithoutPositiveOpening,
    #[error("positive-branch opening answer but the follow-up was not asked (skip logic)")]
    PositiveOpeningWithoutFollowup,
    #[error("follow-up not asked although the design asks everyone")]
    NotAskedUnderAllDesign,
    #[error("a question was asked although the design asks nobody")]
    AskedUnderNoneDesign,
    #[error("respondent id is empty")]
    EmptyId,
}

/// A rejected row: its 1-based line number, id when readable, and the rule
/// it violated.
#[derive(Debug, Clone, PartialEq)]
pub struct RejectedRow {
    pub line: u64,
    pub respondent_id: Option<String>,
    pub reason: RejectReason,
}

/// Everything a parse produces: the accepted records and the reject list.
#[derive(Debug, Clone, Default)]
pub struct ParseOutcome {
    pub records: Vec<MicroRecord>,
    pub rejects: Vec<RejectedRow>,
}

struct ColumnIndexes {
    id: usize,
    opening_asked: usize,
    opening_value: usize,
    followup_asked: usize,
    followup_value: usize,
    proxy: Option<usize>,
}

fn find_column(headers: &csv::StringRecord, name: &str) -> Result<usize, IngestError> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| IngestError::MissingColumn { column: name.to_string() })
}

fn parse_bool(raw: &str) -> Option<bool> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "1" | "true" => Some(true),
        "0" | "false" => Some(false),
        _ => None,
    }
}

/// Parse delimited microdata from `source` according to `schema`.
pub fn parse_microdata<R: Read>(
    source: R,
    schema: &IngestSchema,
) -> Result<ParseOutcome, IngestError> {
    schema.validate()?;
    let mut reader = ReaderBuilder::new()
        .delimiter(schema.delimiter)
        .has_headers(true)
        .flexible(true)
        .from_reader(source);

    let headers = reader.headers()?.clone();
    let cols = ColumnIndexes {
        id: find_column(&headers, &schema.id_column)?,
        opening_asked: find_column(&headers, &schema.opening_asked_column)?,
        opening_value: find_column(&headers, &schema.opening_value_column)?,
        followup_asked: find_column(&headers, &schema.followup_asked_column)?,
        followup_value: find_column(&headers, &schema.followup_value_column)?,
        proxy: match &schema.proxy_column {
            Some(name) => Some(find_column(&headers, name)?),
            None => None,
        },
    };

    let mut outcome = ParseOutcome::default();
    let mut seen_ids: HashSet<String> = HashSet::new();

    for (row_index, row) in reader.records().enumerate() {
        let line = row_index as u64 + 2; // 1-based, after the header line
        let row = row?;
        match parse_row(&row, &cols, schema, line, &mut seen_ids)? {
            Ok(record) => outcome.records.push(record),
            Err(reject) => outcome.rejects.push(reject),
        }
    }
    Ok(outcome)
}

/// Outer error aborts the parse, inner result is accept-or-reject.
type RowResult = Result<Result<MicroRecord, RejectedRow>, IngestError>;

fn parse_row(
    row: &csv::StringRecord,
    cols: &ColumnIndexes,
    schema: &IngestSchema,
    line: u64,
    seen_ids: &mut HashSet<String>,
) -> RowResult {
    let field = |idx: usize| row.get(idx);
    let reject = |id: Option<String>, reason: RejectReason| {
        Ok(Err(RejectedRow { line, respondent_id: id, reason }))
    };

    let id = match field(cols.id) {
        Some(raw) if !raw.is_empty() => raw.to_string(),
        Some(_) => return reject(None, RejectReason::EmptyId),
        None => {
            return reject(None, RejectReason::MissingField { column: schema.id_column.clone() })
        }
    };
    if !seen_ids.insert(id.clone()) {
        return Err(IngestError::DuplicateRespondentId { id, line });
    }

    macro_rules! get_bool {
        ($idx:expr, $col:expr) => {
            match field($idx) {
                None => return reject(Some(id), RejectReason::MissingField { column: $col.clone() }),
                Some(raw) => match parse_bool(raw) {
                    Some(b) => b,
                    None => {
                        return reject(
                            Some(id),
                            RejectReason::BadBool { column: $col.clone(), value: raw.to_string() },
                        )
                    }
                },
            }
        };
    }
    macro_rules! get_value {
        ($idx:expr, $col:expr) => {
            match field($idx) {
                None => return reject(Some(id), RejectReason::MissingField { column: $col.clone() }),
                Some(raw) if raw == schema.missing_sentinel => None,
                Some(raw) => match raw.trim().parse::<f64>() {
                    Ok(v) if v.is_finite() => Some(v),
                    _ => {
                        return reject(
                            Some(id),
                            RejectReason::BadNumber { column: $col.clone(), value: raw.to_string() },
                        )
                    }
                },
            }
        };
    }

    let opening_asked = get_bool!(cols.opening_asked, schema.opening_asked_column);
    let opening_value = get_value!(cols.opening_value, schema.opening_value_column);
    let followup_asked = get_bool!(cols.followup_asked, schema.followup_asked_column);
    let followup_value = get_value!(cols.followup_value, schema.followup_value_column);
    let proxy_flag = cols
        .proxy
        .and_then(|idx| field(idx))
        .filter(|raw| *raw != schema.missing_sentinel)
        .map(|raw| raw.to_string());

    if let Some(v) = followup_value {
        if !followup_asked {
            return reject(Some(id), RejectReason::FollowupValueWithoutAsk);
        }
        if v < 0.0 || v > schema.support_max {
            return reject(
                Some(id),
                RejectReason::FollowupOutOfSupport { value: v, support_max: schema.support_max },
            );
        }
    }

    match schema.design {
        DesignOption::Skip => {
            let positive_opener = opening_asked
                && opening_value.is_some_and(|v| schema.positive_branch.is_positive(v));
            if followup_asked && !positive_opener {
                return reject(Some(id), RejectReason::FollowupWithoutPositiveOpening);
            }
            if positive_opener && !followup_asked {
                return reject(Some(id), RejectReason::PositiveOpeningWithoutFollowup);
            }
        }
        DesignOption::All => {
            if !followup_asked {
                return reject(Some(id), RejectReason::NotAskedUnderAllDesign);
            }
        }
        DesignOption::None => {
            if followup_asked || opening_asked {
                return reject(Some(id), RejectReason::AskedUnderNoneDesign);
            }
        }
    }

    Ok(Ok(MicroRecord {
        respondent_id: id,
        opening_asked,
        opening_value,
        followup_asked,
        followup_value,
        proxy_flag,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(input: &str, schema: &IngestSchema) -> ParseOutcome {
        parse_microdata(input.as_bytes(), schema).unwrap()
    }

    const HEADER: &str = "respondent_id,opening_asked,opening_value,followup_asked,followup_value";

    #[test]
    fn three_valid_rows_parse_cleanly() {
        let input = format!(
            "{HEADER}\nr1,1,60,1,55\nr2,1,0,0,\nr3,1,,0,\n"
        );
        let out = parse(&input, &IngestSchema::percent_scale());
        assert_eq!(out.records.len(), 3);
        assert!(out.rejects.is_empty());
        assert_eq!(out.records[0].followup_value, Some(55.0));
        assert_eq!(out.records[2].opening_value, None);
    }

    #[test]
    fn followup_value_without_ask_is_rejected() {
        let input = format!("{HEADER}\nr1,1,60,0,55\n");
        let out = parse(&input, &IngestSchema::percent_scale());
        assert!(out.records.is_empty());
        assert_eq!(out.rejects.len(), 1);
        assert_eq!(out.rejects[0].reason, RejectReason::FollowupValueWithoutAsk);
        assert_eq!(out.rejects[0].line, 2);
    }

    #[test]
    fn skip_logic_violations_are_rejected_both_ways() {
        // asked without positive opener; positive opener not asked
        let input = format!("{HEADER}\nr1,1,0,1,20\nr2,1,60,0,\n");
        let out = parse(&input, &IngestSchema::percent_scale());
        assert_eq!(out.records.len(), 0);
        assert_eq!(out.rejects[0].reason, RejectReason::FollowupWithoutPositiveOpening);
        assert_eq!(out.rejects[1].reason, RejectReason::PositiveOpeningWithoutFollowup);
    }

    #[test]
    fn bad_cells_reject_the_row_but_parsing_continues() {
        let input = format!("{HEADER}\nr1,yes?,60,1,55\nr2,1,abc,0,\nr3,1,60,1,55\n");
        let out = parse(&input, &IngestSchema::percent_scale());
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.records[0].respondent_id, "r3");
        assert_eq!(out.rejects.len(), 2);
        assert!(matches!(out.rejects[0].reason, RejectReason::BadBool { .. }));
        assert!(matches!(out.rejects[1].reason, RejectReason::BadNumber { .. }));
    }

    #[test]
    fn duplicate_id_is_a_hard_error() {
        let input = format!("{HEADER}\nr1,1,60,1,55\nr1,1,50,1,45\n");
        let err = parse_microdata(input.as_bytes(), &IngestSchema::percent_scale()).unwrap_err();
        assert!(matches!(err, IngestError::DuplicateRespondentId { line: 3, .. }));
    }

    #[test]
    fn missing_header_column_is_a_hard_error() {
        let input = "respondent_id,opening_asked\nr1,1\n";
        let err = parse_microdata(input.as_bytes(), &IngestSchema::default()).unwrap_err();
        assert!(matches!(err, IngestError::MissingColumn { .. }));
    }

    #[test]
    fn followup_outside_support_is_rejected() {
        let input = format!("{HEADER}\nr1,1,60,1,250\n");
        let out = parse(&input, &IngestSchema::percent_scale());
        assert_eq!(out.rejects[0].reason,
            RejectReason::FollowupOutOfSupport { value: 250.0, support_max: 100.0 });
    }

    #[test]
    fn all_design_requires_everyone_asked() {
        let schema = IngestSchema {
            design: DesignOption::All,
            support_max: 1.0,
            ..Default::default()
        };
        let input = format!("{HEADER}\nr1,0,,1,1\nr2,0,,0,\n");
        let out = parse(&input, &schema);
        assert_eq!(out.records.len(), 1);
        assert_eq!(out.rejects[0].reason, RejectReason::NotAskedUnderAllDesign);
    }

    #[test]
    fn accepted_plus_rejected_covers_every_row() {
        let input = format!("{HEADER}\nr1,1,60,1,55\nr2,bad,60,1,55\nr3,1,0,0,\nr4,1,60,0,\n");
        let out = parse(&input, &IngestSchema::percent_scale());
        assert_eq!(out.records.len() + out.rejects.len(), 4);
    }

    #[test]
    fn proxy_column_is_carried_through_untouched() {
        let schema = IngestSchema {
            proxy_column: Some("proxy".into()),
            support_max: 100.0,
            ..Default::default()
        };
        let input = format!("{HEADER},proxy\nr1,1,60,1,55,self\nr2,1,0,0,,\n");
        let out = parse(&input, &schema);
        assert_eq!(out.records[0].proxy_flag.as_deref(), Some("self"));
        assert_eq!(out.records[1].proxy_flag, None);
    }
}
