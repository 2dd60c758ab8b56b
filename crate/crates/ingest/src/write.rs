//! Microdata writer emitting the same delimited layout the parser consumes.

use std::io::Write;

use crate::error::IngestError;
use crate::record::MicroRecord;
use crate::schema::IngestSchema;

/// Write records in the layout described by `schema`. Numeric fields are
/// printed in shortest round-trip form, so re-parsing reproduces them
/// bit-exactly; missing values are written as the schema's sentinel.
pub fn write_microdata<W: Write>(
    records: &[MicroRecord],
    schema: &IngestSchema,
    writer: W,
) -> Result<(), IngestError> {
    let mut out = csv::WriterBuilder::new().delimiter(schema.delimiter).from_writer(writer);

    let mut header = vec![
        schema.id_column.as_str(),
        schema.opening_asked_column.as_str(),
        schema.opening_value_column.as_str(),
        schema.followup_asked_column.as_str(),
        schema.followup_value_column.as_str(),
    ];
    if let Some(proxy) = &schema.proxy_column {
        header.push(proxy.as_str());
    }
    out.write_record(&header)?;

    let fmt_bool = |b: bool| if b { "1" } else { "0" };
    let fmt_value = |v: Option<f64>| match v {
        Some(v) => v.to_string(),
        None => schema.missing_sentinel.clone(),
    };

    for record in records {
        let mut row = vec![
            record.respondent_id.clone(),
            fmt_bool(record.opening_asked).to_string(),
            fmt_value(record.opening_value),
            fmt_bool(record.followup_asked).to_string(),
            fmt_value(record.followup_value),
        ];
        if schema.proxy_column.is_some() {
            row.push(record.proxy_flag.clone().unwrap_or_else(|| schema.missing_sentinel.clone()));
        }
        out.write_record(&row)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}
