//! Geometry of the pentagon base of C5 and the triple classification of its traces.
//!
//! Vertices are residues mod 5, neighbours differ by 1. Every 3-subset is
//! either an arc `{i, i+1, i+2}` or a non-arc `{i, i+1, i+3}`. In C5 three
//! sampled ones always sit on an arc and three sampled zeros on a non-arc.

use crate::bits::popcount;
use crate::error::{Error, Result};
use crate::family::PartialFunction;

/// Members of C5 as bit vectors: five distance-2 pairs and five arcs.
pub const C5_MEMBERS: [u32; 10] = [5, 7, 9, 10, 14, 18, 19, 20, 25, 28];

/// `{i, i+1, i+2}` for `i = 0..4`.
pub const ARCS: [u32; 5] = [0b00111, 0b01110, 0b11100, 0b11001, 0b10011];

/// Members of W6 (the one-sets of its design blocks).
pub const W6_BLOCKS: [u32; 10] = [7, 14, 19, 25, 28, 37, 41, 42, 50, 52];

pub fn is_arc(t: u32) -> bool {
    ARCS.contains(&t)
}

fn distance(a: usize, b: usize) -> usize {
    let d = (a + 5 - b) % 5;
    d.min(5 - d)
}

fn at(i: isize) -> u32 {
    1 << i.rem_euclid(5)
}

/// The element of a 3-subset of Z5 equidistant from the other two.
pub fn central_element(t: u32) -> Result<usize> {
    if popcount(t) != 3 || t >> 5 != 0 {
        return Err(Error::NotATriple(popcount(t)));
    }
    let pts = crate::bits::elements(t);
    for (i, &c) in pts.iter().enumerate() {
        let others: Vec<usize> =
            pts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &p)| p).collect();
        if distance(c, others[0]) == distance(c, others[1]) {
            return Ok(c);
        }
    }
    unreachable!("every 3-subset of Z5 has a central element")
}

/// The copy index in `indices` (three distinct residues mod 5) equidistant from the other two.
pub fn central_copy(indices: &[usize]) -> Result<usize> {
    if indices.len() != 3 || indices.iter().any(|i| *i >= 5) {
        return Err(Error::NotATriple(indices.len()));
    }
    let mask = indices.iter().fold(0u32, |m, &i| m | 1 << i);
    central_element(mask)
}

/// The unique vertex outside the pair `{a, b}` equidistant from `a` and `b`.
pub fn pair_center(pair: u32) -> usize {
    let pts = crate::bits::elements(pair);
    debug_assert_eq!(pts.len(), 2);
    (0..5)
        .find(|&c| pair >> c & 1 == 0 && distance(c, pts[0]) == distance(c, pts[1]))
        .expect("pairs in Z5 have a unique midpoint")
}

/// The arc with central element `c`.
pub fn arc_around(c: usize) -> u32 {
    let c = c as isize;
    at(c - 1) | at(c) | at(c + 1)
}

/// The non-arc 3-set with central element `c`: `{c-2, c, c+2}`.
pub fn non_arc_around(c: usize) -> u32 {
    let c = c as isize;
    at(c - 2) | at(c) | at(c + 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleStatus {
    NoTriple,
    /// Three sampled zeros; positions form a non-arc.
    Triple0(u32),
    /// Three sampled ones; positions form an arc.
    Triple1(u32),
}

impl TripleStatus {
    pub fn positions(self) -> Option<u32> {
        match self {
            TripleStatus::NoTriple => None,
            TripleStatus::Triple0(p) | TripleStatus::Triple1(p) => Some(p),
        }
    }

    pub fn is_one(self) -> bool {
        matches!(self, TripleStatus::Triple1(_))
    }

    pub fn is_zero(self) -> bool {
        matches!(self, TripleStatus::Triple0(_))
    }
}

pub(crate) fn is_c5_trace(domain: u32, values: u32) -> bool {
    C5_MEMBERS.iter().any(|f| f & domain == values)
}

/// Triple status of a trace of C5 (base 5).
pub fn classify_trace(g: &PartialFunction) -> Result<TripleStatus> {
    if g.base_size() != 5 {
        return Err(Error::BaseMismatch { expected: 5, found: g.base_size() });
    }
    classify_bits(g.domain(), g.values()).ok_or_else(|| Error::NotATrace(g.to_string()))
}

pub(crate) fn classify_bits(domain: u32, values: u32) -> Option<TripleStatus> {
    if !is_c5_trace(domain, values) {
        return None;
    }
    let zeros = domain & !values;
    Some(if popcount(values) == 3 {
        TripleStatus::Triple1(values)
    } else if popcount(zeros) == 3 {
        TripleStatus::Triple0(zeros)
    } else {
        TripleStatus::NoTriple
    })
}

/// Triples of a trace of W6. A full-domain trace carries both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct W6Triples {
    /// Three sampled ones; always a block.
    pub ones: Option<u32>,
    /// Three sampled zeros; always a block complement.
    pub zeros: Option<u32>,
}

pub(crate) fn classify_w6_bits(domain: u32, values: u32) -> Option<W6Triples> {
    if !W6_BLOCKS.iter().any(|f| f & domain == values) {
        return None;
    }
    let zeros = domain & !values;
    Some(W6Triples {
        ones: (popcount(values) == 3).then_some(values),
        zeros: (popcount(zeros) == 3).then_some(zeros),
    })
}

pub fn is_w6_block(t: u32) -> bool {
    W6_BLOCKS.contains(&t)
}

pub fn is_w6_block_complement(t: u32) -> bool {
    W6_BLOCKS.contains(&(!t & 0b11_1111))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::SubsetsOfSize;
    use crate::family::{c5, w6};

    #[test]
    fn constants_match_families() {
        assert_eq!(c5().bit_vectors(), &C5_MEMBERS);
        assert_eq!(w6().bit_vectors(), &W6_BLOCKS);
    }

    #[test]
    fn central_elements() {
        assert_eq!(central_element(0b01110).unwrap(), 2);
        assert_eq!(central_element(0b01011).unwrap(), 3);
        assert_eq!(central_element(0b10101).unwrap(), 2);
        assert!(central_element(0b11).is_err());
        for t in SubsetsOfSize::new(0b11111, 3) {
            let c = central_element(t).unwrap();
            let want = if is_arc(t) { arc_around(c) } else { non_arc_around(c) };
            assert_eq!(want, t);
            assert_eq!(pair_center(t & !(1 << c)), c);
        }
    }

    #[test]
    fn central_copies() {
        assert_eq!(central_copy(&[0, 2, 3]).unwrap(), 0);
        assert_eq!(central_copy(&[0, 3, 4]).unwrap(), 4);
        assert_eq!(central_copy(&[1, 2, 3]).unwrap(), 2);
        assert!(central_copy(&[1, 2]).is_err());
    }

    #[test]
    fn classification_examples() {
        let g = PartialFunction::new(5, 0b111, 0b111).unwrap();
        assert_eq!(classify_trace(&g).unwrap(), TripleStatus::Triple1(0b111));
        let g = PartialFunction::new(5, 0b1011, 0).unwrap();
        assert_eq!(classify_trace(&g).unwrap(), TripleStatus::Triple0(0b1011));
        let g = PartialFunction::new(5, 0b110, 0b110).unwrap();
        assert_eq!(classify_trace(&g).unwrap(), TripleStatus::NoTriple);
        let not_a_trace = PartialFunction::new(5, 0b111, 0).unwrap();
        assert!(classify_trace(&not_a_trace).is_err());
    }

    #[test]
    fn triples_sit_where_expected() {
        // Enumerate every trace of C5: three ones form an arc, three zeros a non-arc.
        for s in 0..32u32 {
            for f in C5_MEMBERS {
                match classify_bits(s, f & s).unwrap() {
                    TripleStatus::Triple1(p) => assert!(is_arc(p)),
                    TripleStatus::Triple0(p) => assert!(popcount(p) == 3 && !is_arc(p)),
                    TripleStatus::NoTriple => {}
                }
            }
        }
    }

    #[test]
    fn w6_triple_types_are_disjoint() {
        for t in SubsetsOfSize::new(0b11_1111, 3) {
            assert!(!(is_w6_block(t) && is_w6_block_complement(t)));
        }
        let full = classify_w6_bits(0b11_1111, 7).unwrap();
        assert_eq!(full.ones, Some(7));
        assert_eq!(full.zeros, Some(0b11_1000));
    }
}
