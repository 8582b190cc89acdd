//! Line-based text format for complexes.
//!
//! One maximal simplex per line as whitespace-separated, strictly
//! increasing vertex labels; `#` starts a comment; blank lines are ignored.
//! Lines that are out of order within themselves are a hard error, while
//! lines made redundant by another line only produce a warning and are
//! skipped. The writer is canonical (maximal simplices in lexicographic
//! order), so write-then-parse round trips byte-identically.

use std::collections::HashSet;

use thiserror::Error;

use super::{Complex, Simplex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: vertex labels must be strictly increasing")]
    Unsorted { line: usize },
    #[error("line {line}: cannot parse vertex label {token:?}")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected {expected}")]
    Unexpected { line: usize, expected: String },
    #[error("missing section {0:?}")]
    MissingSection(String),
    #[error("duplicate section {0:?}")]
    DuplicateSection(String),
    #[error("the empty-simplex-only complex has no text representation")]
    Unrepresentable,
}

/// Strips any `#` comment and splits a line into simplex tokens.
pub(crate) fn simplex_of_line(line: &str, line_no: usize) -> Result<Option<Simplex>, FormatError> {
    let body = line.split('#').next().unwrap_or("");
    let mut vs: Vec<u32> = Vec::new();
    for token in body.split_whitespace() {
        let v: u32 = token.parse().map_err(|_| FormatError::BadToken {
            line: line_no,
            token: token.to_string(),
        })?;
        if let Some(&last) = vs.last() {
            if v <= last {
                return Err(FormatError::Unsorted { line: line_no });
            }
        }
        vs.push(v);
    }
    if vs.is_empty() {
        Ok(None)
    } else {
        Ok(Some(Simplex::from_sorted(vs)))
    }
}

/// Parses a complex, returning it along with warnings about redundant lines.
/// Builds a complex from listed simplices, warning about duplicates and
/// simplices subsumed by other listed ones.
pub(crate) fn complex_with_warnings(listed: &[(usize, Simplex)]) -> (Complex, Vec<String>) {
    let complex = Complex::from_maximal(listed.iter().map(|(_, s)| s.clone()));
    let maximal: HashSet<&Simplex> = complex.maximal_simplices().iter().collect();
    let mut warnings = Vec::new();
    let mut seen: HashSet<&Simplex> = HashSet::new();
    for (line, s) in listed {
        if !seen.insert(s) {
            warnings.push(format!("line {line}: duplicate simplex {s} skipped"));
        } else if !maximal.contains(s) {
            warnings.push(format!(
                "line {line}: simplex {s} is contained in another listed simplex; skipped"
            ));
        }
    }
    (complex, warnings)
}

pub fn parse_complex(text: &str) -> Result<(Complex, Vec<String>), FormatError> {
    let mut listed: Vec<(usize, Simplex)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(s) = simplex_of_line(line, i + 1)? {
            listed.push((i + 1, s));
        }
    }
    Ok(complex_with_warnings(&listed))
}

/// Canonical text form. The void complex is the empty string; the
/// empty-simplex-only complex is not representable.
pub fn write_complex(k: &Complex) -> Result<String, FormatError> {
    let mut out = String::new();
    for m in k.maximal_simplices() {
        if m.is_empty() {
            return Err(FormatError::Unrepresentable);
        }
        let labels: Vec<String> = m.vertices().iter().map(|v| v.to_string()).collect();
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    Ok(out)
}
