//! Linkage tables as produced by agglomerative clustering tools.
//!
//! Row `r` merges clusters `left` and `right` at `height` into a new
//! cluster of `size` leaves with id `n + r`; ids `0..n` are the leaves.

use serde_json::Value;
use thiserror::Error;

use crate::dendrogram::Dendrogram;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkageError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("row {row}: bad cluster id {id}")]
    BadIds { row: usize, id: usize },
    #[error("row {row}: height {height} is below the previous row")]
    NonMonotoneHeights { row: usize, height: Rational },
    #[error("row {row}: merge height must be positive")]
    ZeroHeight { row: usize },
    #[error("row {row}: size {declared} does not match merged cluster size {actual}")]
    SizeMismatch { row: usize, declared: usize, actual: usize },
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkageRow {
    pub left: usize,
    pub right: usize,
    pub height: Rational,
    pub size: usize,
}

fn integer_field(text: &str, line: usize) -> Result<usize, LinkageError> {
    let value: Rational = text.parse().map_err(|e| LinkageError::Syntax {
        line,
        reason: format!("{e}"),
    })?;
    value
        .to_u64()
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| LinkageError::Syntax {
            line,
            reason: format!("`{text}` is not a non-negative integer"),
        })
}

fn row_from_fields(fields: &[String], line: usize) -> Result<LinkageRow, LinkageError> {
    if fields.len() != 4 {
        return Err(LinkageError::Syntax {
            line,
            reason: format!("expected 4 fields, found {}", fields.len()),
        });
    }
    Ok(LinkageRow {
        left: integer_field(&fields[0], line)?,
        right: integer_field(&fields[1], line)?,
        height: fields[2].parse().map_err(|e| LinkageError::Syntax {
            line,
            reason: format!("{e}"),
        })?,
        size: integer_field(&fields[3], line)?,
    })
}

/// Comma- or whitespace-separated rows. Blank lines, `#` comments and a
/// leading header line are skipped.
pub fn parse_linkage_csv(text: &str) -> Result<Vec<LinkageRow>, LinkageError> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .map(str::to_string)
            .collect();
        let is_header = rows.is_empty() && fields.first().is_some_and(|f| f.parse::<Rational>().is_err());
        if is_header {
            continue;
        }
        rows.push(row_from_fields(&fields, i + 1)?);
    }
    Ok(rows)
}

/// A JSON array of 4-element arrays; elements may be numbers or strings.
pub fn parse_linkage_json(text: &str) -> Result<Vec<LinkageRow>, LinkageError> {
    let value: Value = serde_json::from_str(text).map_err(|e| LinkageError::Syntax {
        line: e.line(),
        reason: e.to_string(),
    })?;
    let Value::Array(items) = value else {
        return Err(LinkageError::Syntax {
            line: 1,
            reason: "expected an array of rows".into(),
        });
    };
    items
        .iter()
        .enumerate()
        .map(|(r, item)| {
            let Value::Array(cells) = item else {
                return Err(LinkageError::Syntax {
                    line: r + 1,
                    reason: "row is not an array".into(),
                });
            };
            let fields = cells
                .iter()
                .map(|c| match c {
                    Value::Number(n) => Ok(n.to_string()),
                    Value::String(s) => Ok(s.clone()),
                    other => Err(LinkageError::Syntax {
                        line: r + 1,
                        reason: format!("unexpected value {other}"),
                    }),
                })
                .collect::<Result<Vec<_>, _>>()?;
            row_from_fields(&fields, r + 1)
        })
        .collect()
}

/// Rebuilds the dendrogram of a linkage table. A merge whose child was
/// itself merged at the same height absorbs that child's children, so
/// chains of equal-height binary merges become one k-ary node.
pub fn parse_linkage<S: AsRef<str>>(rows: &[LinkageRow], labels: &[S]) -> Result<Dendrogram, LinkageError> {
    let n = rows.len() + 1;
    if labels.len() != n {
        return Err(LinkageError::LabelCount {
            expected: n,
            got: labels.len(),
        });
    }
    let mut clusters: Vec<Option<Dendrogram>> = labels.iter().map(|l| Some(Dendrogram::leaf(l.as_ref()))).collect();
    let mut previous = Rational::zero();
    for (r, row) in rows.iter().enumerate() {
        if row.height.is_zero() {
            return Err(LinkageError::ZeroHeight { row: r });
        }
        if row.height < previous {
            return Err(LinkageError::NonMonotoneHeights {
                row: r,
                height: row.height.clone(),
            });
        }
        previous = row.height.clone();
        if row.left == row.right {
            return Err(LinkageError::BadIds { row: r, id: row.right });
        }
        let mut take = |id: usize| {
            clusters
                .get_mut(id)
                .and_then(Option::take)
                .ok_or(LinkageError::BadIds { row: r, id })
        };
        let left = take(row.left)?;
        let right = take(row.right)?;
        let mut children = Vec::new();
        for child in [left, right] {
            match child {
                Dendrogram::Merge {
                    height,
                    children: inner,
                } if height == row.height => children.extend(inner),
                other => children.push(other),
            }
        }
        let node = Dendrogram::Merge {
            height: row.height.clone(),
            children,
        };
        let actual = node.leaf_count();
        if actual != row.size {
            return Err(LinkageError::SizeMismatch {
                row: r,
                declared: row.size,
                actual,
            });
        }
        clusters.push(Some(node));
    }
    Ok(clusters.pop().flatten().expect("last cluster is the root"))
}
