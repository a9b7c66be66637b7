//! A size-5 scheme for C5*C5.
//!
//! Base elements 0..5 are the first copy, 5..10 the second. Rules, first match wins:
//!
//! | rule | condition                               | kept                              |
//! |------|-----------------------------------------|-----------------------------------|
//! | 1    | no triples                              | all 1's                           |
//! | 2    | copy 1 has T1, copy 2 does not          | all 1's                           |
//! | 3    | copy 1 has T0, copy 2 does not          | all 0's                           |
//! | 4    | copy 2 has T1, copy 1 has no T0         | copy 2's T1, copy 1's 0's         |
//! | 5    | copy 2 has T0, copy 1 has no T1         | copy 2's T0, copy 1's 1's         |

use crate::bits::popcount;
use crate::family::{BooleanFunction, PartialFunction};
use crate::scheme::SchemeProgram;

use super::pentagon::{classify_bits, is_arc, TripleStatus};

const LOW: u32 = 0b11111;

/// Rules whose conditions hold for the given copy statuses, in increasing order.
pub fn table1_rules(s1: TripleStatus, s2: TripleStatus) -> Vec<u8> {
    use TripleStatus::NoTriple;
    let mut rules = Vec::new();
    if s1 == NoTriple && s2 == NoTriple {
        rules.push(1);
    }
    if s1.is_one() && !s2.is_one() {
        rules.push(2);
    }
    if s1.is_zero() && !s2.is_zero() {
        rules.push(3);
    }
    if s2.is_one() && !s1.is_zero() {
        rules.push(4);
    }
    if s2.is_zero() && !s1.is_one() {
        rules.push(5);
    }
    rules
}

#[derive(Debug, Clone, Copy, Default)]
pub struct C5JoinScheme;

pub fn scheme_table1() -> C5JoinScheme {
    C5JoinScheme
}

impl C5JoinScheme {
    /// Statuses of the two copies, or `None` if `g` is not a trace of C5*C5.
    pub fn statuses(&self, g: &PartialFunction) -> Option<(TripleStatus, TripleStatus)> {
        let (d, v) = (g.domain(), g.values());
        Some((classify_bits(d & LOW, v & LOW)?, classify_bits(d >> 5, v >> 5)?))
    }

    pub fn compress_with_rule(&self, g: &PartialFunction) -> Option<(u8, u32)> {
        let (s1, s2) = self.statuses(g)?;
        let rule = *table1_rules(s1, s2).first()?;
        let (ones, zeros) = (g.ones(), g.zeros());
        let kept = match rule {
            1 | 2 => ones,
            3 => zeros,
            4 => s2.positions()? << 5 | zeros & LOW,
            _ => s2.positions()? << 5 | ones & LOW,
        };
        Some((rule, kept))
    }

    /// The rule a compressed set was produced by.
    pub fn decode_rule(&self, kept: u32) -> u8 {
        let (y1, y2) = (kept & LOW, kept >> 5 & LOW);
        if popcount(y1) == 3 {
            if is_arc(y1) { 2 } else { 3 }
        } else if popcount(y2) == 3 {
            if is_arc(y2) { 4 } else { 5 }
        } else {
            1
        }
    }
}

impl SchemeProgram for C5JoinScheme {
    fn base_size(&self) -> usize {
        10
    }
    fn size_bound(&self) -> usize {
        5
    }
    fn compress(&self, g: &PartialFunction) -> Option<u32> {
        self.compress_with_rule(g).map(|(_, y)| y)
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        let (y1, y2) = (kept & LOW, kept >> 5 & LOW);
        let bits = match self.decode_rule(kept) {
            1 | 2 => kept,
            3 => !kept & 0x3ff,
            4 => y2 << 5 | !y1 & LOW,
            _ => (!y2 & LOW) << 5 | y1,
        };
        BooleanFunction::raw(10, bits)
    }
    fn description(&self) -> String {
        "five-rule scheme for C5*C5 (size 5)".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c5, join};
    use crate::scheme::{verify, VerifyMode};

    const ALL: [TripleStatus; 3] =
        [TripleStatus::NoTriple, TripleStatus::Triple0(0), TripleStatus::Triple1(0)];

    #[test]
    fn every_status_pair_has_a_rule() {
        for s1 in ALL {
            for s2 in ALL {
                assert!(!table1_rules(s1, s2).is_empty(), "{s1:?} {s2:?}");
            }
        }
    }

    #[test]
    fn exhaustive_and_rule_identifiable() {
        let f = join(&c5(), &c5()).unwrap();
        let s = scheme_table1();
        let r = verify(&s, &f, VerifyMode::Exhaustive).unwrap();
        assert!(r.valid, "{r}");
        assert_eq!(r.max_compressed_size, 5);
        for dom in 0..1024u32 {
            for m in f.bit_vectors() {
                let g = PartialFunction::new(10, dom, m & dom).unwrap();
                let (rule, y) = s.compress_with_rule(&g).unwrap();
                assert_eq!(s.decode_rule(y), rule);
            }
        }
    }
}
