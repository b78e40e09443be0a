//! Fuzzy subset files: one `index p/q` line per carrier element, `#` comments.

use thiserror::Error;

use super::{Carrier, FuzzySubset, MembershipValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzyParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: index {index} appears twice")]
    DuplicateIndex { line: usize, index: usize },
    #[error("index {missing} is missing (indices must cover 0..{len})")]
    MissingIndex { missing: usize, len: usize },
    #[error("no entries")]
    Empty,
}

pub fn parse_fuzzy_subset(text: &str, carrier: Carrier) -> Result<FuzzySubset, FuzzyParseError> {
    let mut entries: Vec<(usize, usize, MembershipValue)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| FuzzyParseError::Syntax {
            line: line_no,
            message,
        };
        let mut parts = line.split_whitespace();
        let (Some(index), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(syntax("expected `index p/q`".into()));
        };
        let index: usize = index
            .parse()
            .map_err(|_| syntax(format!("`{index}` is not an element index")))?;
        let value: MembershipValue = value.parse().map_err(|e| syntax(format!("{e}")))?;
        entries.push((index, line_no, value));
    }
    if entries.is_empty() {
        return Err(FuzzyParseError::Empty);
    }
    entries.sort_by_key(|&(index, line, _)| (index, line));
    let len = entries.len();
    let mut values = Vec::with_capacity(len);
    for (expected, &(index, line, value)) in entries.iter().enumerate() {
        if index < expected {
            return Err(FuzzyParseError::DuplicateIndex { line, index });
        }
        if index > expected {
            return Err(FuzzyParseError::MissingIndex {
                missing: expected,
                len,
            });
        }
        values.push(value);
    }
    Ok(FuzzySubset::new(carrier, values))
}
