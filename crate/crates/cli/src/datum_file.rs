//! Custom root data from JSON files:
//! `{"name": "G2-ish", "rank": 2, "simple_roots": [[...]], "simple_coroots": [[...]]}`.

use std::path::Path;

use parahoric_core::{Error, RootDatum};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumFile {
    name: Option<String>,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
}

/// 1-based line of the first occurrence of `"field"` in `text`.
fn field_line(text: &str, field: &str) -> Option<usize> {
    let needle = format!("\"{field}\"");
    text.lines().position(|l| l.contains(&needle)).map(|i| i + 1)
}

pub fn parse_datum(text: &str, origin: &str) -> Result<RootDatum, CliError> {
    let file: DatumFile =
        serde_json::from_str(text).map_err(|e| CliError::File(format!("{origin}:{}:{}: {e}", e.line(), e.column())))?;
    let name = file.name.unwrap_or_else(|| "custom".to_string());
    RootDatum::new(name, file.rank, file.simple_roots, file.simple_coroots).map_err(|e| match e {
        Error::InvalidDatum { field, reason } => {
            let line = field_line(text, &field).map(|l| format!("{l}:")).unwrap_or_default();
            CliError::File(format!("{origin}:{line} field `{field}`: {reason}"))
        }
        other => CliError::File(format!("{origin}: {other}")),
    })
}

pub fn load_datum(path: &Path) -> Result<RootDatum, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::File(format!("cannot read {}: {e}", path.display())))?;
    parse_datum(&text, &path.display().to_string())
}
