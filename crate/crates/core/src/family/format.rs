//! The `.fam` text format.
//!
//! ```text
//! family c5
//! base 5
//! functions 10
//! 10100
//! ...
//! ```
//!
//! Member lines are sorted ascending by bit-vector value (character `i` is
//! bit `i`). A missing label is written as `-`.

use std::fmt::Write;

use crate::error::{Error, Result};

use super::{BooleanFunction, Family};

pub fn write_fam(f: &Family) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "family {}", f.label().unwrap_or("-"));
    let _ = writeln!(out, "base {}", f.base_size());
    let _ = writeln!(out, "functions {}", f.len());
    for g in f.functions() {
        let _ = writeln!(out, "{g}");
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn header<'a>(lines: &[&'a str], idx: usize, key: &str) -> Result<&'a str> {
    let line = lines.get(idx).ok_or_else(|| err(idx + 1, format!("missing `{key}` line")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| err(idx + 1, format!("expected `{key} <value>`")))
}

fn number(s: &str, line: usize) -> Result<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(line, format!("expected a number, found `{s}`")));
    }
    s.parse().map_err(|_| err(line, format!("number out of range: `{s}`")))
}

pub fn parse_fam(text: &str) -> Result<Family> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();
    for (i, line) in lines.iter().enumerate() {
        if line.chars().any(|c| c.is_whitespace() && c != ' ')
            || line.starts_with(' ')
            || line.ends_with(' ')
            || line.contains("  ")
        {
            return Err(err(i + 1, "stray whitespace"));
        }
    }
    let label = header(&lines, 0, "family")?;
    let n = number(header(&lines, 1, "base")?, 2)?;
    let m = number(header(&lines, 2, "functions")?, 3)?;
    let rows = &lines[3..];
    if rows.len() != m {
        return Err(err(3, format!("declared {m} functions, found {}", rows.len())));
    }
    let mut bits = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let line = i + 4;
        if row.len() != n {
            return Err(err(line, format!("expected {n} characters, found {}", row.len())));
        }
        let f = BooleanFunction::parse(row).map_err(|e| err(line, e.to_string()))?;
        if let Some(&prev) = bits.last() {
            if f.bits() == prev {
                return Err(err(line, format!("duplicate function {row}")));
            }
            if f.bits() < prev {
                return Err(err(line, "functions must be sorted ascending"));
            }
        }
        bits.push(f.bits());
    }
    let label = (label != "-").then(|| label.to_string());
    Family::from_bits(n, bits, label).map_err(|e| err(2, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c5, p};

    #[test]
    fn round_trip_is_byte_identical() {
        for f in [c5(), p(3).unwrap()] {
            let text = write_fam(&f);
            let back = parse_fam(&text).unwrap();
            assert_eq!(back, f);
            assert_eq!(write_fam(&back), text);
        }
    }

    #[test]
    fn rejects_malformed() {
        let good = write_fam(&p(2).unwrap());
        assert!(parse_fam(&good).is_ok());
        let dup = good.replace("01\n", "00\n");
        assert!(matches!(parse_fam(&dup), Err(Error::Parse { line: 6, .. })));
        let count = good.replace("functions 4", "functions 5");
        assert!(parse_fam(&count).is_err());
        let space = good.replace("base 2", "base 2 ");
        assert!(matches!(parse_fam(&space), Err(Error::Parse { line: 2, .. })));
        let tab = good.replace("11", "11\t");
        assert!(parse_fam(&tab).is_err());
        let width = good.replace("11\n", "111\n");
        assert!(parse_fam(&width).is_err());
        let unsorted = "family x\nbase 2\nfunctions 2\n11\n00\n";
        assert!(parse_fam(unsorted).is_err());
    }
}
