//! Surface-form dictionary: maps the column headers and answer labels found
//! in exported files onto canonical column names and answer codes.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::OnceLock;

use serde::Deserialize;

use crate::model::{canonical_codes, RawRecord, COLUMNS};

/// Parsed and checked codebook.
///
/// Canonical column names and canonical answer codes are always accepted
/// as-is; the codebook adds surface spellings on top (localized headers,
/// localized answer labels). Values with no mapping pass through unchanged
/// and stand or fall at validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    version: String,
    columns: BTreeMap<String, String>,
    labels: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Deserialize)]
struct CodebookFile {
    version: String,
    #[serde(default)]
    columns: BTreeMap<String, String>,
    #[serde(default)]
    labels: BTreeMap<String, BTreeMap<String, String>>,
}

impl Codebook {
    /// The codebook bundled with the crate, covering English and Japanese
    /// surface forms for every coded item.
    pub fn embedded() -> &'static Codebook {
        static EMBEDDED: OnceLock<Codebook> = OnceLock::new();
        EMBEDDED.get_or_init(|| {
            Codebook::from_toml_str(include_str!("../../data/codebook.toml"))
                .expect("bundled codebook must be valid")
        })
    }

    pub fn load(path: &Path) -> Result<Codebook, CodebookError> {
        let text = std::fs::read_to_string(path).map_err(|source| CodebookError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Codebook::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Codebook, CodebookError> {
        let file: CodebookFile =
            toml::from_str(text).map_err(|e| CodebookError::Parse(e.to_string()))?;
        let book = Codebook {
            version: file.version,
            columns: file.columns,
            labels: file.labels,
        };
        book.check()?;
        Ok(book)
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    fn check(&self) -> Result<(), CodebookError> {
        for (surface, target) in &self.columns {
            if !COLUMNS.contains(&target.as_str()) {
                return Err(CodebookError::Invalid(format!(
                    "column alias {surface:?} points at unknown column {target:?}"
                )));
            }
        }
        for (column, map) in &self.labels {
            let codes = canonical_codes(column).ok_or_else(|| {
                CodebookError::Invalid(format!("column {column:?} does not take coded labels"))
            })?;
            for (surface, code) in map {
                if !codes.contains(&code.as_str()) {
                    return Err(CodebookError::Invalid(format!(
                        "label {surface:?} for {column:?} maps to {code:?}, not a canonical code"
                    )));
                }
            }
        }
        // Translation completeness: every coded column must be covered, and
        // every canonical code must be reachable from at least one label.
        for &column in &COLUMNS {
            let Some(codes) = canonical_codes(column) else {
                continue;
            };
            let map = self.labels.get(column).ok_or_else(|| {
                CodebookError::Invalid(format!("no label section for coded column {column:?}"))
            })?;
            for &code in codes {
                if !map.values().any(|c| c == code) {
                    return Err(CodebookError::Invalid(format!(
                        "no surface label for {column:?} code {code:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Canonical column for a surface header, if recognized.
    pub fn column(&self, surface: &str) -> Option<&str> {
        COLUMNS
            .iter()
            .find(|&&c| c == surface)
            .copied()
            .or_else(|| self.columns.get(surface).map(String::as_str))
    }

    /// Canonical code for one field value. Unmapped values pass through.
    pub fn decode(&self, column: &str, value: &str) -> String {
        self.labels
            .get(column)
            .and_then(|m| m.get(value))
            .cloned()
            .unwrap_or_else(|| value.to_string())
    }

    /// Maps every field of a record onto canonical columns and codes.
    pub fn canonicalize(&self, raw: &RawRecord) -> Result<RawRecord, CodebookError> {
        let mut out = RawRecord::new();
        for (col, val) in raw.fields() {
            let canonical = self
                .column(col)
                .ok_or_else(|| CodebookError::UnknownColumn(col.to_string()))?;
            out.set(canonical, self.decode(canonical, val));
        }
        Ok(out)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CodebookError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("codebook parse error: {0}")]
    Parse(String),
    #[error("codebook invalid: {0}")]
    Invalid(String),
    #[error("unknown column {0:?}")]
    UnknownColumn(String),
}
