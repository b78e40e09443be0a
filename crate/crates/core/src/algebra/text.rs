//! Line-oriented table format for Γ-semirings.
//!
//! ```text
//! gamma-semiring B
//! S 2
//! Gamma 1
//! addS
//! 0 1
//! 1 1
//! addGamma
//! 0
//! prod
//! 0 0
//! 0 1
//! ```
//!
//! `prod` holds one `|S|×|S|` block per `α`, blocks separated by a blank
//! line; row `a`, column `b` of block `α` is `aαb`. `#` starts a comment.

use std::fmt;

use thiserror::Error;

use super::{AlgebraError, GammaSemiring};

/// Largest carrier accepted from text input.
pub const MAX_TEXT_CARRIER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("dimension mismatch: expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {value} out of range 0..{bound}")]
    OutOfRange { value: usize, bound: usize },
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line with comments stripped, plus its 1-based number.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (idx, raw) in self.inner.by_ref() {
            self.last = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                return Some((idx + 1, line));
            }
        }
        None
    }

    fn expect(&mut self, what: &str) -> Result<(usize, &'a str), ParseError> {
        self.next_content().ok_or_else(|| ParseError {
            line: self.last + 1,
            kind: ParseErrorKind::Syntax(format!("unexpected end of input, expected {what}")),
        })
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

fn keyword_value(line_no: usize, line: &str, keyword: &str) -> Result<usize, ParseError> {
    let mut parts = line.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(syntax(line_no, format!("expected `{keyword} <size>`")));
    }
    let value = parts
        .next()
        .ok_or_else(|| syntax(line_no, format!("`{keyword}` needs a size")))?;
    if parts.next().is_some() {
        return Err(syntax(line_no, format!("trailing tokens after `{keyword}` size")));
    }
    let n: usize = value
        .parse()
        .map_err(|_| syntax(line_no, format!("`{value}` is not a non-negative integer")))?;
    if n == 0 {
        return Err(syntax(line_no, format!("`{keyword}` size must be positive")));
    }
    if n > MAX_TEXT_CARRIER {
        return Err(syntax(
            line_no,
            format!("`{keyword}` size {n} exceeds {MAX_TEXT_CARRIER}"),
        ));
    }
    Ok(n)
}

fn read_rows(
    lines: &mut Lines<'_>,
    header: &str,
    rows: usize,
    width: usize,
    bound: usize,
) -> Result<Vec<Vec<usize>>, ParseError> {
    let (line_no, line) = lines.expect(&format!("`{header}`"))?;
    if line != header {
        return Err(syntax(line_no, format!("expected `{header}`, found `{line}`")));
    }
    let mut out = Vec::new();
    for _ in 0..rows {
        let (line_no, line) = lines.expect(&format!("a row of `{header}`"))?;
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            let value: usize = token
                .parse()
                .map_err(|_| syntax(line_no, format!("`{token}` is not an element index")))?;
            if value >= bound {
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::OutOfRange { value, bound },
                });
            }
            row.push(value);
        }
        if row.len() != width {
            return Err(ParseError {
                line: line_no,
                kind: ParseErrorKind::DimensionMismatch {
                    expected: width,
                    found: row.len(),
                },
            });
        }
        out.push(row);
    }
    Ok(out)
}

/// Parses the table format. Table shapes and index ranges are checked; the
/// Γ-semiring axioms are not.
pub fn parse_gamma_semiring(text: &str) -> Result<GammaSemiring, ParseError> {
    let mut lines = Lines::new(text);
    let (line_no, header) = lines.expect("`gamma-semiring <name>`")?;
    let name = match header.strip_prefix("gamma-semiring") {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
            let rest = rest.trim();
            (!rest.is_empty()).then(|| rest.to_string())
        }
        _ => return Err(syntax(line_no, "expected `gamma-semiring <name>` header")),
    };

    let (line_no, line) = lines.expect("`S <size>`")?;
    let s_size = keyword_value(line_no, line, "S")?;
    let (line_no, line) = lines.expect("`Gamma <size>`")?;
    let g_size = keyword_value(line_no, line, "Gamma")?;

    let add_s = read_rows(&mut lines, "addS", s_size, s_size, s_size)?;
    let add_g = read_rows(&mut lines, "addGamma", g_size, g_size, g_size)?;

    let (line_no, line) = lines.expect("`prod`")?;
    if line != "prod" {
        return Err(syntax(line_no, format!("expected `prod`, found `{line}`")));
    }
    let mut prod = Vec::new();
    for _ in 0..g_size {
        let mut block = Vec::new();
        for _ in 0..s_size {
            let (line_no, line) = lines.expect("a row of `prod`")?;
            let mut row = Vec::new();
            for token in line.split_whitespace() {
                let value: usize = token
                    .parse()
                    .map_err(|_| syntax(line_no, format!("`{token}` is not an element index")))?;
                if value >= s_size {
                    return Err(ParseError {
                        line: line_no,
                        kind: ParseErrorKind::OutOfRange { value, bound: s_size },
                    });
                }
                row.push(value);
            }
            if row.len() != s_size {
                return Err(ParseError {
                    line: line_no,
                    kind: ParseErrorKind::DimensionMismatch {
                        expected: s_size,
                        found: row.len(),
                    },
                });
            }
            block.push(row);
        }
        prod.push(block);
    }
    if let Some((line_no, line)) = lines.next_content() {
        return Err(syntax(line_no, format!("unexpected trailing content `{line}`")));
    }

    GammaSemiring::new(name, add_s, add_g, prod).map_err(|e| match e {
        // shapes and ranges were checked row by row above
        AlgebraError::OutOfRange { value, bound, .. } => ParseError {
            line: lines.last,
            kind: ParseErrorKind::OutOfRange { value, bound },
        },
        other => syntax(lines.last, other.to_string()),
    })
}

impl fmt::Display for GammaSemiring {
    /// Canonical text form; `parse_gamma_semiring` reads it back.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(name) => writeln!(f, "gamma-semiring {name}")?,
            None => writeln!(f, "gamma-semiring")?,
        }
        writeln!(f, "S {}", self.s_size())?;
        writeln!(f, "Gamma {}", self.g_size())?;
        writeln!(f, "addS")?;
        write_square(f, self.s_size(), |a, b| self.add_s(a, b))?;
        writeln!(f, "addGamma")?;
        write_square(f, self.g_size(), |a, b| self.add_g(a, b))?;
        writeln!(f, "prod")?;
        for alpha in 0..self.g_size() {
            if alpha > 0 {
                writeln!(f)?;
            }
            write_square(f, self.s_size(), |a, b| self.ternary_product(a, alpha, b))?;
        }
        Ok(())
    }
}

fn write_square(f: &mut fmt::Formatter<'_>, n: usize, cell: impl Fn(usize, usize) -> usize) -> fmt::Result {
    for a in 0..n {
        for b in 0..n {
            if b > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", cell(a, b))?;
        }
        writeln!(f)?;
    }
    Ok(())
}
