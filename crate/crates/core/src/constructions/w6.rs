//! Schemes for joins of W6: with one extra point (size 3) and with a second copy (size 5).
//!
//! In W6 three sampled ones always form a block and three sampled zeros a
//! block complement, and no 3-set is both. Keeping a triple therefore tells
//! the decoder which kind it is.

use std::collections::HashMap;

use crate::bits::{popcount, subsets_up_to};
use crate::family::{w6, join, BooleanFunction, PartialFunction};
use crate::scheme::SchemeProgram;

use super::pentagon::{classify_w6_bits, is_w6_block, is_w6_block_complement, W6Triples};

const LOW: u32 = 0b11_1111;
const EXTRA: u32 = 1 << 6;

/// W6*P(1): the extra coordinate is element 6.
#[derive(Debug, Clone, Copy, Default)]
pub struct W6ExtraScheme;

pub fn scheme_table4() -> W6ExtraScheme {
    W6ExtraScheme
}

impl W6ExtraScheme {
    pub fn compress_with_rule(&self, g: &PartialFunction) -> Option<(u8, u32)> {
        let (d, v) = (g.domain(), g.values());
        classify_w6_bits(d & LOW, v & LOW)?;
        let zeros = g.zeros() & LOW;
        Some(if v & EXTRA == 0 {
            (1, v & LOW)
        } else if popcount(zeros) == 3 {
            (2, zeros)
        } else {
            (3, EXTRA | zeros)
        })
    }

    pub fn decode_rule(&self, kept: u32) -> u8 {
        if kept & EXTRA != 0 {
            3
        } else if popcount(kept) == 3 && is_w6_block_complement(kept) {
            2
        } else {
            1
        }
    }
}

impl SchemeProgram for W6ExtraScheme {
    fn base_size(&self) -> usize {
        7
    }
    fn size_bound(&self) -> usize {
        3
    }
    fn compress(&self, g: &PartialFunction) -> Option<u32> {
        self.compress_with_rule(g).map(|(_, y)| y)
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        let bits = match self.decode_rule(kept) {
            1 => kept,
            _ => !kept & LOW | EXTRA,
        };
        BooleanFunction::raw(7, bits)
    }
    fn description(&self) -> String {
        "three-rule scheme for W6*P(1) (size 3)".into()
    }
}

/// Per-copy kept counts reserved for full samples.
const POOL_PROFILES: [(usize, usize); 6] = [(5, 0), (4, 1), (4, 0), (0, 4), (1, 4), (0, 5)];

/// W6*W6 with copy 1 on elements 0..6 and copy 2 on 6..12.
///
/// Rules, first match wins. `1_i`/`0_i` mean copy `i` has three sampled 1's/0's.
///
/// | rule | condition                 | kept                          |
/// |------|---------------------------|-------------------------------|
/// | 1    | no triples                | all 1's                       |
/// | 2    | `1_1` and not `1_2`       | all 1's                       |
/// | 3    | `0_1` and not `0_2`       | all 0's                       |
/// | 4    | `1_2` and not `0_1`       | copy 2's 1's, copy 1's 0's    |
/// | 5    | `0_2` and not `1_1`       | copy 2's 0's, copy 1's 1's    |
/// | 6    | both copies fully sampled | a reserved set                |
///
/// Reserved sets are those with per-copy counts in [`POOL_PROFILES`]; the
/// 100 members are assigned to them in increasing order.
#[derive(Debug, Clone)]
pub struct W6JoinScheme {
    pool: Vec<u32>,
    assigned: HashMap<u32, u32>,
    slot: HashMap<u32, u32>,
}

pub fn scheme_w6x2() -> W6JoinScheme {
    let pool: Vec<u32> = subsets_up_to(0xfff, 5)
        .filter(|y| POOL_PROFILES.contains(&(popcount(y & LOW), popcount(y >> 6))))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let members = join(&w6(), &w6()).expect("base 12").bit_vectors().to_vec();
    let assigned = pool.iter().copied().zip(members.iter().copied()).collect();
    let slot = members.iter().copied().zip(pool.iter().copied()).collect();
    W6JoinScheme { pool, assigned, slot }
}

impl W6JoinScheme {
    pub fn pool(&self) -> &[u32] {
        &self.pool
    }

    /// Reserved set assigned to a member's full sample.
    pub fn slot_of(&self, member: u32) -> Option<u32> {
        self.slot.get(&member).copied()
    }

    pub fn compress_with_rule(&self, g: &PartialFunction) -> Option<(u8, u32)> {
        let (d, v) = (g.domain(), g.values());
        let t1: W6Triples = classify_w6_bits(d & LOW, v & LOW)?;
        let t2: W6Triples = classify_w6_bits(d >> 6, v >> 6)?;
        let (ones, zeros) = (g.ones(), g.zeros());
        let (o1, z1, o2, z2) =
            (t1.ones.is_some(), t1.zeros.is_some(), t2.ones.is_some(), t2.zeros.is_some());
        Some(if !(o1 || z1 || o2 || z2) {
            (1, ones)
        } else if o1 && !o2 {
            (2, ones)
        } else if z1 && !z2 {
            (3, zeros)
        } else if o2 && !z1 {
            (4, ones & !LOW | zeros & LOW)
        } else if z2 && !o1 {
            (5, zeros & !LOW | ones & LOW)
        } else {
            (6, *self.slot.get(&v)?)
        })
    }

    pub fn decode_rule(&self, kept: u32) -> u8 {
        let (y1, y2) = (kept & LOW, kept >> 6);
        if self.pool.binary_search(&kept).is_ok() {
            6
        } else if popcount(y1) == 3 {
            if is_w6_block(y1) { 2 } else { 3 }
        } else if popcount(y2) == 3 {
            if is_w6_block(y2) { 4 } else { 5 }
        } else {
            1
        }
    }
}

impl SchemeProgram for W6JoinScheme {
    fn base_size(&self) -> usize {
        12
    }
    fn size_bound(&self) -> usize {
        5
    }
    fn compress(&self, g: &PartialFunction) -> Option<u32> {
        self.compress_with_rule(g).map(|(_, y)| y)
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        let (y1, y2) = (kept & LOW, kept >> 6);
        let bits = match self.decode_rule(kept) {
            6 => self.assigned.get(&kept).copied().unwrap_or(kept),
            1 | 2 => kept,
            3 => !kept & 0xfff,
            4 => y2 << 6 | !y1 & LOW,
            _ => (!y2 & LOW) << 6 | y1,
        };
        BooleanFunction::raw(12, bits)
    }
    fn description(&self) -> String {
        "six-rule scheme for W6*W6 (size 5)".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::p;
    use crate::scheme::{verify, VerifyMode};

    #[test]
    fn table4_exhaustive() {
        let f = join(&w6(), &p(1).unwrap()).unwrap();
        let s = scheme_table4();
        let r = verify(&s, &f, VerifyMode::Exhaustive).unwrap();
        assert!(r.valid, "{r}");
        assert_eq!(r.max_compressed_size, 3);
        for dom in 0..128u32 {
            for m in f.bit_vectors() {
                let g = PartialFunction::new(7, dom, m & dom).unwrap();
                let (rule, y) = s.compress_with_rule(&g).unwrap();
                assert_eq!(s.decode_rule(y), rule, "{g}");
            }
        }
    }

    #[test]
    fn pool_size() {
        let s = scheme_w6x2();
        assert_eq!(s.pool().len(), 222);
        assert_eq!(s.assigned.len(), 100);
    }

    #[test]
    fn w6x2_exhaustive() {
        let f = join(&w6(), &w6()).unwrap();
        let s = scheme_w6x2();
        let r = verify(&s, &f, VerifyMode::Exhaustive).unwrap();
        assert!(r.valid, "{r}");
        assert_eq!(r.max_compressed_size, 5);
    }
}
