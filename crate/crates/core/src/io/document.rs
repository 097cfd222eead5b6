use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::embed::{EmbedError, SpaceFamily};
use crate::rational::Rational;
use crate::space::{SpaceError, UltrametricSpace};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {reason}")]
    Parse { path: String, reason: String },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Family(#[from] EmbedError),
}

impl IoError {
    fn parse(path: impl Into<String>, reason: impl ToString) -> Self {
        IoError::Parse {
            path: path.into(),
            reason: reason.to_string(),
        }
    }
}

/// `{"points": [...], "distances": [[...], ...]}`.
///
/// Entries are strings holding an integer, `p/q`, or a finite decimal.
/// Plain JSON numbers are accepted on input and converted from their
/// literal text, never through floating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub points: Vec<String>,
    pub distances: Vec<Vec<Value>>,
}

/// `{"source": <space>, "images": [<space>, ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub source: SpaceDocument,
    pub images: Vec<SpaceDocument>,
}

fn entry(value: &Value, path: &str) -> Result<Rational, IoError> {
    let text = match value {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => {
            return Err(IoError::parse(
                path,
                format!("expected a number or string, found {other}"),
            ))
        }
    };
    text.parse().map_err(|e| IoError::parse(path, e))
}

fn parse_space_at(doc: &SpaceDocument, prefix: &str) -> Result<UltrametricSpace, IoError> {
    let n = doc.points.len();
    if n == 0 {
        return Err(IoError::parse(format!("{prefix}points"), "no points"));
    }
    if doc.distances.len() != n {
        return Err(IoError::parse(
            format!("{prefix}distances"),
            format!("expected {n} rows, found {}", doc.distances.len()),
        ));
    }
    let mut table = Vec::with_capacity(n);
    for (i, row) in doc.distances.iter().enumerate() {
        if row.len() != n {
            return Err(IoError::parse(
                format!("{prefix}distances[{i}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, v)| entry(v, &format!("{prefix}distances[{i}][{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        table.push(parsed);
    }
    Ok(UltrametricSpace::new(doc.points.clone(), table)?)
}

pub fn parse_space(doc: &SpaceDocument) -> Result<UltrametricSpace, IoError> {
    parse_space_at(doc, "")
}

/// Entries rendered as reduced rationals.
pub fn write_space(space: &UltrametricSpace) -> SpaceDocument {
    SpaceDocument {
        points: space.labels().to_vec(),
        distances: space
            .table()
            .into_iter()
            .map(|row| row.into_iter().map(|v| Value::String(v.to_string())).collect())
            .collect(),
    }
}

pub fn space_from_json(text: &str) -> Result<UltrametricSpace, IoError> {
    let doc: SpaceDocument = serde_json::from_str(text).map_err(|e| IoError::parse("$", e))?;
    parse_space(&doc)
}

/// Pretty-printed, newline-terminated.
pub fn space_to_json(space: &UltrametricSpace) -> String {
    let mut s = serde_json::to_string_pretty(&write_space(space)).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_family(doc: &FamilyDocument) -> Result<SpaceFamily, IoError> {
    let source = parse_space_at(&doc.source, "source.")?;
    let images = doc
        .images
        .iter()
        .enumerate()
        .map(|(i, d)| parse_space_at(d, &format!("images[{i}].")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SpaceFamily::new(source, images)?)
}

pub fn write_family(family: &SpaceFamily) -> FamilyDocument {
    FamilyDocument {
        source: write_space(family.source()),
        images: family.images().iter().map(write_space).collect(),
    }
}

pub fn family_from_json(text: &str) -> Result<SpaceFamily, IoError> {
    let doc: FamilyDocument = serde_json::from_str(text).map_err(|e| IoError::parse("$", e))?;
    parse_family(&doc)
}

pub fn family_to_json(family: &SpaceFamily) -> String {
    let mut s = serde_json::to_string_pretty(&write_family(family)).expect("documents serialize");
    s.push('\n');
    s
}
