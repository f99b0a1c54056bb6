//! File ingest: CSV and JSONL readers, codebook application, per-row
//! validation, duplicate handling, and the canonical CSV writer.
//!
//! Nothing here aborts on a bad row. Every row read either becomes a
//! [`Response`] or is recorded in [`Provenance::drops`] with a reason, so
//! `responses + drops` always accounts for the whole file.

mod codebook;

pub use codebook::{Codebook, CodebookError};

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use crate::model::{self, ItemScales, Lang, RawRecord, Response, ValidationReport, Violation, COLUMNS};

/// Wire format of an input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceFormat {
    Csv,
    Jsonl,
}

impl SourceFormat {
    /// Guesses from the file extension; CSV when in doubt.
    pub fn from_path(path: &Path) -> SourceFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") => SourceFormat::Jsonl,
            _ => SourceFormat::Csv,
        }
    }
}

/// Why a row was excluded.
#[derive(Debug, Clone, PartialEq)]
pub enum DropReason {
    /// Structurally unreadable: wrong column count, non-scalar JSON field,
    /// unknown JSONL key, or a line that is not a JSON object.
    Malformed(String),
    /// Readable but failed validation.
    Invalid(ValidationReport),
    /// Identical answers (language included, identifier ignored) to an
    /// earlier row.
    DuplicateRecord { first_row: usize },
    /// Same respondent identifier as an earlier row with different answers.
    DuplicateId { id: String, first_row: usize },
}

impl fmt::Display for DropReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DropReason::Malformed(m) => write!(f, "malformed: {m}"),
            DropReason::Invalid(r) => write!(f, "invalid: {r}"),
            DropReason::DuplicateRecord { first_row } => {
                write!(f, "duplicate of row {first_row} (identical answers)")
            }
            DropReason::DuplicateId { id, first_row } => {
                write!(f, "respondent id {id:?} already used at row {first_row}")
            }
        }
    }
}

/// One excluded row. Rows count from 1: data rows for CSV (header excluded),
/// physical lines for JSONL.
#[derive(Debug, Clone, PartialEq)]
pub struct RowDrop {
    pub row: usize,
    pub reason: DropReason,
}

/// Repairs applied to a kept row.
#[derive(Debug, Clone, PartialEq)]
pub struct RowWarning {
    pub row: usize,
    pub violations: Vec<Violation>,
}

/// Where a dataset came from and what happened to every row on the way in.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Provenance {
    pub source: String,
    pub rows_read: usize,
    pub drops: Vec<RowDrop>,
    pub warnings: Vec<RowWarning>,
}

/// Validated responses plus their ingest provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub responses: Vec<Response>,
    pub provenance: Provenance,
}

/// Fatal ingest failures. Row-level trouble never lands here; it is recorded
/// per row in [`Provenance::drops`] instead.
#[derive(Debug, thiserror::Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    /// Header-level defect: a column that maps nowhere, a canonical column
    /// mapped twice, or a mandatory column missing entirely.
    #[error("{source_name}: {message}")]
    Format { source_name: String, message: String },
}

/// Reads and validates a whole file.
pub fn load(path: &Path, format: SourceFormat, codebook: &Codebook) -> Result<Dataset, IngestError> {
    let content = std::fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_from_str(&content, format, codebook, &path.display().to_string())
}

/// Reads and validates from memory; `source_name` labels provenance and
/// error messages.
pub fn load_from_str(
    content: &str,
    format: SourceFormat,
    codebook: &Codebook,
    source_name: &str,
) -> Result<Dataset, IngestError> {
    // Read first, judge after: one flat list of (row, parse outcome).
    let mut parsed: Vec<(usize, Result<RawRecord, String>)> = Vec::new();
    match format {
        SourceFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new().from_reader(content.as_bytes());
            let headers = reader
                .headers()
                .map_err(|e| format_err(source_name, format!("unreadable header: {e}")))?
                .clone();
            let mapped = map_header(&headers, codebook, source_name)?;
            for (i, record) in reader.records().enumerate() {
                let row = i + 1;
                match record {
                    Ok(rec) => {
                        let mut raw = RawRecord::new();
                        for (col, val) in mapped.iter().zip(rec.iter()) {
                            raw.set(col.as_str(), codebook.decode(col, val));
                        }
                        parsed.push((row, Ok(raw)));
                    }
                    Err(e) => parsed.push((row, Err(e.to_string()))),
                }
            }
        }
        SourceFormat::Jsonl => {
            for (i, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                parsed.push((i + 1, jsonl_record(line, codebook)));
            }
        }
    }

    let rows_read = parsed.len();
    let mut drops = Vec::new();
    let mut warnings = Vec::new();
    let mut kept: Vec<(usize, Response)> = Vec::new();
    for (row, outcome) in parsed {
        match outcome {
            Err(message) => drops.push(RowDrop {
                row,
                reason: DropReason::Malformed(message),
            }),
            Ok(raw) => match model::validate(&raw) {
                Ok(v) => {
                    if !v.warnings.is_empty() {
                        warnings.push(RowWarning {
                            row,
                            violations: v.warnings,
                        });
                    }
                    kept.push((row, v.response));
                }
                Err(report) => drops.push(RowDrop {
                    row,
                    reason: DropReason::Invalid(report),
                }),
            },
        }
    }

    let (kept, dup_drops) = dedup_indexed(kept);
    drops.extend(dup_drops);
    drops.sort_by_key(|d| d.row);

    Ok(Dataset {
        responses: kept.into_iter().map(|(_, r)| r).collect(),
        provenance: Provenance {
            source: source_name.to_string(),
            rows_read,
            drops,
            warnings,
        },
    })
}

fn format_err(source_name: &str, message: String) -> IngestError {
    IngestError::Format {
        source_name: source_name.to_string(),
        message,
    }
}

/// Maps a CSV header onto canonical columns, insisting every mandatory
/// column shows up exactly once.
fn map_header(
    headers: &csv::StringRecord,
    codebook: &Codebook,
    source_name: &str,
) -> Result<Vec<String>, IngestError> {
    let mut mapped = Vec::with_capacity(headers.len());
    for h in headers {
        let canonical = codebook
            .column(h.trim_start_matches('\u{feff}'))
            .ok_or_else(|| format_err(source_name, format!("unknown column {h:?}")))?;
        if mapped.iter().any(|m| m == canonical) {
            return Err(format_err(
                source_name,
                format!("column {canonical:?} appears more than once"),
            ));
        }
        mapped.push(canonical.to_string());
    }
    for col in COLUMNS {
        if !mapped.iter().any(|m| m == col) {
            return Err(format_err(source_name, format!("missing column {col:?}")));
        }
    }
    Ok(mapped)
}

/// One JSONL line to a canonical record, or a reason it cannot be one.
fn jsonl_record(line: &str, codebook: &Codebook) -> Result<RawRecord, String> {
    let value: serde_json::Value =
        serde_json::from_str(line).map_err(|e| format!("not valid JSON: {e}"))?;
    let obj = value.as_object().ok_or("line is not a JSON object")?;
    let mut raw = RawRecord::new();
    for (key, v) in obj {
        let col = codebook
            .column(key)
            .ok_or_else(|| format!("unknown field {key:?}"))?;
        let text = match v {
            serde_json::Value::Null => continue,
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Bool(b) => b.to_string(),
            _ => return Err(format!("field {key:?} must be a scalar")),
        };
        raw.set(col, codebook.decode(col, &text));
    }
    Ok(raw)
}

/// Exact-duplicate and identifier dedup, order preserving:
/// first the record with identical answers to an earlier one goes (the
/// identifier plays no part in that comparison), then any survivor reusing
/// an earlier survivor's identifier.
pub fn dedup(responses: Vec<Response>) -> (Vec<Response>, Vec<RowDrop>) {
    let indexed = responses.into_iter().enumerate().map(|(i, r)| (i + 1, r)).collect();
    let (kept, drops) = dedup_indexed(indexed);
    (kept.into_iter().map(|(_, r)| r).collect(), drops)
}

fn dedup_indexed(rows: Vec<(usize, Response)>) -> (Vec<(usize, Response)>, Vec<RowDrop>) {
    let mut drops = Vec::new();

    let mut seen: HashMap<(Lang, ItemScales), usize> = HashMap::new();
    let mut unique: Vec<(usize, Response)> = Vec::with_capacity(rows.len());
    for (row, resp) in rows {
        let key = (resp.lang(), resp.scales().clone());
        match seen.get(&key) {
            Some(&first_row) => drops.push(RowDrop {
                row,
                reason: DropReason::DuplicateRecord { first_row },
            }),
            None => {
                seen.insert(key, row);
                unique.push((row, resp));
            }
        }
    }

    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut kept: Vec<(usize, Response)> = Vec::with_capacity(unique.len());
    for (row, resp) in unique {
        match ids.get(resp.id().as_str()) {
            Some(&first_row) => drops.push(RowDrop {
                row,
                reason: DropReason::DuplicateId {
                    id: resp.id().as_str().to_string(),
                    first_row,
                },
            }),
            None => {
                ids.insert(resp.id().as_str().to_string(), row);
                kept.push((row, resp));
            }
        }
    }

    (kept, drops)
}

/// Canonical CSV rendering: fixed column order, `\n` terminators, quoting
/// only where needed. Byte-identical for equal response lists.
pub fn to_csv_string(responses: &[Response]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).expect("writing to memory");
    for r in responses {
        let raw = r.to_raw();
        // to_raw fills every canonical column, absent answers as "".
        let record: Vec<&str> = COLUMNS
            .iter()
            .map(|&c| raw.get(c).unwrap_or(""))
            .collect();
        w.write_record(&record).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writer flushed")).expect("csv output is UTF-8")
}

/// Writes the canonical CSV rendering to a file.
pub fn write_csv(responses: &[Response], path: &Path) -> Result<(), IngestError> {
    std::fs::write(path, to_csv_string(responses)).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "respondent_id,lang,item1a,item1b,item1c,item2,item3,item4,item5,item6,item7,item8,item9,item10";

    fn row(id: &str, rest: &str) -> String {
        format!("{id},{rest}")
    }

    const BODY: &str = "en,7,Frequently,70,Yes,FullyAllow,Yes,No,Yes,InKind,Yes,Immaterial,text";

    fn csv_of(rows: &[String]) -> String {
        let mut s = String::from(HEADER);
        for r in rows {
            s.push('\n');
            s.push_str(r);
        }
        s.push('\n');
        s
    }

    fn load_csv(content: &str) -> Dataset {
        load_from_str(content, SourceFormat::Csv, Codebook::embedded(), "test").unwrap()
    }

    #[test]
    fn clean_file_loads_every_row() {
        let ds = load_csv(&csv_of(&[row("a", BODY), row("b", BODY)]));
        // Identical answers: the second row is dropped as a duplicate record.
        assert_eq!(ds.provenance.rows_read, 2);
        assert_eq!(ds.responses.len(), 1);
        assert_eq!(ds.provenance.drops.len(), 1);
    }

    #[test]
    fn rows_and_drops_account_for_the_file() {
        let rows = [
            row("a", BODY),
            row("b", "en,99,Frequently,70,Yes,FullyAllow,Yes,No,Yes,InKind,Yes,Immaterial,"),
            row("c", "en,3,Frequently,31,Yes,Limit,Yes,No,Yes,InKind,Yes,Material,"),
        ];
        let ds = load_csv(&csv_of(&rows));
        assert_eq!(ds.provenance.rows_read, 3);
        assert_eq!(ds.responses.len() + ds.provenance.drops.len(), 3);
        assert!(matches!(
            ds.provenance.drops[0].reason,
            DropReason::Invalid(_)
        ));
    }

    #[test]
    fn wrong_column_count_is_malformed_not_fatal() {
        let ds = load_csv(&csv_of(&[row("a", BODY), "only,three,fields".to_string()]));
        assert_eq!(ds.responses.len(), 1);
        assert!(matches!(
            ds.provenance.drops[0].reason,
            DropReason::Malformed(_)
        ));
        assert_eq!(ds.provenance.drops[0].row, 2);
    }

    #[test]
    fn unknown_header_column_is_fatal() {
        let content = format!("{HEADER},extra\n");
        let err = load_from_str(&content, SourceFormat::Csv, Codebook::embedded(), "t");
        assert!(matches!(err, Err(IngestError::Format { .. })));
    }

    #[test]
    fn missing_mandatory_column_is_fatal() {
        let content = "respondent_id,lang\n";
        let err = load_from_str(content, SourceFormat::Csv, Codebook::embedded(), "t");
        assert!(err.is_err());
    }

    #[test]
    fn duplicate_id_with_different_answers_is_dropped() {
        let other = "en,3,Sometimes,10,No,Limit,No,No,No,OnlyDegree,No,Material,";
        let ds = load_csv(&csv_of(&[row("a", BODY), row("a", other)]));
        assert_eq!(ds.responses.len(), 1);
        assert!(matches!(
            ds.provenance.drops[0].reason,
            DropReason::DuplicateId { .. }
        ));
    }

    #[test]
    fn same_answers_in_different_languages_are_distinct() {
        let ja = "ja,7,Frequently,70,Yes,FullyAllow,Yes,No,Yes,InKind,Yes,Immaterial,text";
        let ds = load_csv(&csv_of(&[row("a", BODY), row("b", ja)]));
        assert_eq!(ds.responses.len(), 2);
    }

    #[test]
    fn localized_labels_decode_through_the_codebook() {
        let ja = "ja,7,頻繁に,70,はい,全面的に許可,はい,いいえ,はい,質的に異なる,はい,非物質的,メモ";
        let ds = load_csv(&csv_of(&[row("a", ja)]));
        assert_eq!(ds.responses.len(), 1);
        let s = ds.responses[0].scales();
        assert_eq!(s.item2(), crate::model::YesNoUnsure::Yes);
        assert_eq!(s.item9(), crate::model::IntellectView::Immaterial);
    }

    #[test]
    fn jsonl_round_trips_numbers_and_nulls() {
        let line = r#"{"respondent_id":"a","lang":"en","item1a":7,"item1b":"Frequently","item1c":70,"item2":"Yes","item3":"FullyAllow","item4":"Yes","item5":"No","item6":"Yes","item7":"InKind","item8":"Yes","item9":"Immaterial","item10":null}"#;
        let ds = load_from_str(line, SourceFormat::Jsonl, Codebook::embedded(), "t").unwrap();
        assert_eq!(ds.responses.len(), 1);
        assert_eq!(ds.responses[0].scales().item1a(), 7);
        assert_eq!(ds.responses[0].scales().item10(), None);
    }

    #[test]
    fn jsonl_bad_lines_are_malformed_rows() {
        let content = concat!(
            r#"{"respondent_id":"a","lang":"en","item1a":7,"item1b":"Frequently","item1c":70,"item2":"Yes","item3":"FullyAllow","item4":"Yes","item5":"No","item6":"Yes","item7":"InKind","item8":"Yes","item9":"Immaterial","item10":"x"}"#,
            "\n",
            "not json\n",
            "[1,2,3]\n",
            r#"{"mystery":"y"}"#,
            "\n"
        );
        let ds = load_from_str(content, SourceFormat::Jsonl, Codebook::embedded(), "t").unwrap();
        assert_eq!(ds.provenance.rows_read, 4);
        assert_eq!(ds.responses.len(), 1);
        assert_eq!(ds.provenance.drops.len(), 3);
    }

    #[test]
    fn csv_round_trip_is_lossless() {
        let text_with_commas = "en,7,Frequently,70,Yes,FullyAllow,Yes,No,Yes,InKind,Yes,Immaterial,\"notes, with commas and \"\"quotes\"\"\"";
        let ds = load_csv(&csv_of(&[row("a", text_with_commas), row("b", BODY)]));
        let out = to_csv_string(&ds.responses);
        let again = load_csv(&out);
        assert_eq!(again.responses, ds.responses);
    }

    #[test]
    fn format_guess_follows_the_extension() {
        assert_eq!(
            SourceFormat::from_path(Path::new("x.jsonl")),
            SourceFormat::Jsonl
        );
        assert_eq!(
            SourceFormat::from_path(Path::new("x.ndjson")),
            SourceFormat::Jsonl
        );
        assert_eq!(
            SourceFormat::from_path(Path::new("x.csv")),
            SourceFormat::Csv
        );
        assert_eq!(SourceFormat::from_path(Path::new("x")), SourceFormat::Csv);
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let err = load(
            Path::new("/nonexistent/definitely.csv"),
            SourceFormat::Csv,
            Codebook::embedded(),
        );
        assert!(matches!(err, Err(IngestError::Io { .. })));
    }
}
