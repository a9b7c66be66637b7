//! The `.ucs` decoder format.
//!
//! ```text
//! decoder base 5 size 2
//! - 10001
//! 0 00101
//! 0,1 01001
//! ```
//!
//! One line per subset of size at most `size`: sorted comma-separated
//! elements (`-` for the empty set), one space, the decoded value string.
//! The writer emits subsets in (cardinality, mask) order; the reader accepts
//! any order but requires each subset exactly once.
//!
//! Labeled decoders use `labeled-decoder base <n> size <k>` and one line per
//! kept sub-sample: the kept set, the sub-sample as a partial-function string,
//! and the decoded value, e.g. `0,2 1-0-- 10001`.

use std::fmt::Write;

use crate::bits::{format_set, mask_of};
use crate::error::{Error, Result};
use crate::family::{BooleanFunction, PartialFunction};

use super::{LabeledDecoder, UnlabeledDecoder};

pub fn write_decoder(d: &UnlabeledDecoder) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "decoder base {} size {}", d.base_size(), d.size_bound());
    for (y, f) in d.iter() {
        let _ = writeln!(out, "{} {f}", format_set(y));
    }
    out
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_set(token: &str, base: usize, line: usize) -> Result<u32> {
    if token == "-" {
        return Ok(0);
    }
    let mut elems = Vec::new();
    for part in token.split(',') {
        let e: usize = part.parse().map_err(|_| err(line, format!("bad element `{part}`")))?;
        if e >= base {
            return Err(err(line, format!("element {e} outside base {base}")));
        }
        if elems.last().is_some_and(|&prev| prev >= e) {
            return Err(err(line, "elements must be strictly increasing"));
        }
        elems.push(e);
    }
    Ok(mask_of(&elems))
}

pub fn parse_decoder(text: &str) -> Result<UnlabeledDecoder> {
    let mut lines = text.lines().enumerate();
    let (_, head) = lines.next().ok_or_else(|| err(1, "empty decoder file"))?;
    let fields: Vec<&str> = head.split(' ').collect();
    let (base, size) = match fields.as_slice() {
        ["decoder", "base", n, "size", k] => (
            n.parse::<usize>().map_err(|_| err(1, "bad base"))?,
            k.parse::<usize>().map_err(|_| err(1, "bad size"))?,
        ),
        _ => return Err(err(1, "expected `decoder base <n> size <k>`")),
    };
    let mut pairs = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let (set, value) =
            line.split_once(' ').ok_or_else(|| err(lineno, "expected `<set> <value>`"))?;
        let y = parse_set(set, base, lineno)?;
        if !seen.insert(y) {
            return Err(err(lineno, format!("duplicate subset {set}")));
        }
        if value.len() != base {
            return Err(err(lineno, format!("value must have {base} characters")));
        }
        let f = BooleanFunction::parse(value).map_err(|e| err(lineno, e.to_string()))?;
        pairs.push((y, f));
    }
    UnlabeledDecoder::from_entries(base, size, pairs)
        .map_err(|e| err(0, format!("incomplete decoder: {e}")))
}

pub fn write_labeled_decoder(d: &LabeledDecoder) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "labeled-decoder base {} size {}", d.base_size(), d.size_bound());
    for ((y, w), f) in d.iter() {
        let g = PartialFunction::raw(d.base_size(), y, w);
        let _ = writeln!(out, "{} {g} {f}", format_set(y));
    }
    out
}

pub fn parse_labeled_decoder(text: &str) -> Result<LabeledDecoder> {
    let mut lines = text.lines().enumerate();
    let (_, head) = lines.next().ok_or_else(|| err(1, "empty decoder file"))?;
    let fields: Vec<&str> = head.split(' ').collect();
    let (base, size) = match fields.as_slice() {
        ["labeled-decoder", "base", n, "size", k] => (
            n.parse::<usize>().map_err(|_| err(1, "bad base"))?,
            k.parse::<usize>().map_err(|_| err(1, "bad size"))?,
        ),
        _ => return Err(err(1, "expected `labeled-decoder base <n> size <k>`")),
    };
    let mut entries = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let [set, sample, value] = line.split(' ').collect::<Vec<_>>()[..] else {
            return Err(err(lineno, "expected `<set> <sample> <value>`"));
        };
        let y = parse_set(set, base, lineno)?;
        let g = PartialFunction::parse(sample).map_err(|e| err(lineno, e.to_string()))?;
        if g.base_size() != base || g.domain() != y {
            return Err(err(lineno, "sample must be defined exactly on the kept set"));
        }
        let f = BooleanFunction::parse(value).map_err(|e| err(lineno, e.to_string()))?;
        entries.push(((y, g.values()), f));
    }
    LabeledDecoder::from_entries(base, size, entries).map_err(|e| err(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip(base in 1usize..7, size in 0usize..3, seed in any::<u64>()) {
            let size = size.min(base);
            let full = crate::bits::full_mask(base);
            let d = UnlabeledDecoder::from_fn(base, size, |y| {
                let h = (y as u64 ^ seed).wrapping_mul(0x2545_F491_4F6C_DD1D) >> 40;
                BooleanFunction::new(base, h as u32 & full).unwrap()
            }).unwrap();
            let text = write_decoder(&d);
            let back = parse_decoder(&text).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(write_decoder(&back), text);
        }
    }

    #[test]
    fn labeled_round_trip() {
        let d = LabeledDecoder::from_fn(3, 2, |y, w| BooleanFunction::new(3, w | (y ^ 0b111) & 1).unwrap())
            .unwrap();
        let text = write_labeled_decoder(&d);
        assert!(text.lines().nth(2).unwrap().starts_with("0 0-- "));
        assert_eq!(parse_labeled_decoder(&text).unwrap(), d);
        let short: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
        assert!(parse_labeled_decoder(&short).is_err());
    }

    #[test]
    fn rejects_missing_and_duplicate_entries() {
        let d = UnlabeledDecoder::from_fn(3, 1, |y| BooleanFunction::new(3, y).unwrap()).unwrap();
        let text = write_decoder(&d);
        let missing: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(parse_decoder(&missing).is_err());
        let dup = format!("{text}0 000\n");
        assert!(parse_decoder(&dup).is_err());
        assert!(parse_decoder("decoder base 3\n").is_err());
        assert!(parse_decoder("decoder base 3 size 1\n- 00\n").is_err());
    }
}
