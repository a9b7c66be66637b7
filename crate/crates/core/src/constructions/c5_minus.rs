//! The tabulated size-2 decoder for C5 with `01110` removed.
//!
//! Ten rows are listed; the remaining six follow from the reflection
//! `i -> 4 - i` of the pentagon, which reverses decoded strings.

use crate::bits::mask_of;
use crate::family::BooleanFunction;
use crate::scheme::UnlabeledDecoder;

/// Listed `(compressed set, decoded string)` rows.
pub const TABLE3_ROWS: [(&[usize], &str); 10] = [
    (&[], "10001"),
    (&[0], "00101"),
    (&[1], "11001"),
    (&[2], "10101"),
    (&[0, 1], "01001"),
    (&[0, 2], "01001"),
    (&[0, 3], "00111"),
    (&[0, 4], "01010"),
    (&[1, 2], "11100"),
    (&[1, 3], "01010"),
];

/// Reflects a subset of the pentagon; also reverses a decoded string.
fn reflect_set(y: u32) -> u32 {
    (0..5).filter(|i| y >> i & 1 == 1).fold(0, |m, i| m | 1 << (4 - i))
}

/// The listed rows closed under reflection: a decoder on all 16 sets of size `<= 2`.
pub fn scheme_table3() -> UnlabeledDecoder {
    let mut entries = std::collections::BTreeMap::new();
    for (set, s) in TABLE3_ROWS {
        let y = mask_of(set);
        let f = BooleanFunction::parse(s).expect("row strings are valid").bits();
        for (k, v) in [(y, f), (reflect_set(y), reflect_set(f))] {
            let prev = entries.insert(k, v);
            assert!(prev.is_none() || prev == Some(v), "reflection conflict at {k:#b}");
        }
    }
    UnlabeledDecoder::from_entries(
        5,
        2,
        entries.into_iter().map(|(y, f)| (y, BooleanFunction::raw(5, f))),
    )
    .expect("closure covers every set of size <= 2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c5_minus, PartialFunction};
    use crate::scheme::{table_to_program, verify, VerifyMode};

    #[test]
    fn closure_has_sixteen_rows() {
        let d = scheme_table3();
        assert_eq!(d.len(), 16);
        assert_eq!(d.get(0b10000).unwrap().to_string(), "10100");
        assert_eq!(d.get(0b11000).unwrap().to_string(), "10010");
    }

    #[test]
    fn tabulated_decoder_misses_two_samples() {
        // Independent check: for each trace of C5^- look for any kept subset that decodes to an extension.
        let f = c5_minus();
        let d = scheme_table3();
        let mut bad = Vec::new();
        for s in 0..32u32 {
            let mut seen = std::collections::BTreeSet::new();
            for m in f.bit_vectors() {
                if !seen.insert(m & s) {
                    continue;
                }
                let ok = (0..32u32)
                    .filter(|y| y & !s == 0 && y.count_ones() <= 2)
                    .any(|y| d.get(y).unwrap().bits() & s == m & s);
                if !ok {
                    bad.push(PartialFunction::new(5, s, m & s).unwrap().to_string());
                }
            }
        }
        assert_eq!(bad, vec!["0-01-".to_string(), "-10-0".to_string()]);
        let program = table_to_program(d, &f).unwrap();
        assert!(!verify(&program, &f, VerifyMode::Exhaustive).unwrap().valid);
    }
}
