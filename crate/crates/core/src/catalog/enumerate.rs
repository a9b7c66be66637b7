//! Orderly generation of containment-maximal families.
//!
//! A set of functions is *canonical* when its sorted member list is the
//! lexicographic minimum over all coordinate permutations and value flips.
//! Dropping the largest member of a canonical set leaves a canonical set, so
//! growing sorted lists and keeping only canonical ones visits every
//! isomorphism class exactly once. Visits happen in lexicographic order of the
//! member lists, which makes a list a resumable cursor.

use std::collections::HashSet;

use itertools::Itertools;

use crate::bits::{extract, full_mask, SubsetsOfSize};
use crate::error::{Error, Result};
use crate::family::{apply_permutation_table, CanonicalForm, Family};

pub const MAX_ENUMERATION_BASE: usize = 6;
pub const MAX_ENUMERATION_DIMENSION: usize = 3;

/// Isomorph-free stream of the containment-maximal families on `n` points
/// with vc-dimension at most `d`.
pub struct Candidates {
    n: usize,
    nvals: u32,
    /// The `(d+1)`-subsets of the base.
    xs: Vec<u32>,
    full_traces: u16,
    /// `perms[p * nvals + v]`: image of `v` under permutation `p`.
    perms: Vec<u8>,
    /// `later[m][x]`: traces on `xs[x]` of the values above `m`.
    later: Vec<Vec<u16>>,
    path: Vec<u32>,
    traces: Vec<Vec<u16>>,
    next: Vec<u32>,
    start: Option<Vec<u32>>,
    nodes: u64,
    budget: u64,
    cursor: Option<Vec<u32>>,
    seen: HashSet<CanonicalForm>,
}

pub fn enumerate_candidates(n: usize, d: usize, budget: u64) -> Result<Candidates> {
    Candidates::new(n, d, budget, None)
}

impl Candidates {
    /// Starts at `start` (a cursor from an earlier run) when given.
    pub fn new(n: usize, d: usize, budget: u64, start: Option<Vec<u32>>) -> Result<Self> {
        if n == 0 || n > MAX_ENUMERATION_BASE {
            return Err(Error::OutOfRange(format!(
                "enumeration base {n} outside 1..={MAX_ENUMERATION_BASE}"
            )));
        }
        if d > MAX_ENUMERATION_DIMENSION {
            return Err(Error::OutOfRange(format!(
                "enumeration dimension {d} above {MAX_ENUMERATION_DIMENSION}"
            )));
        }
        let nvals = 1u32 << n;
        let xs: Vec<u32> = SubsetsOfSize::new(full_mask(n), d + 1).collect();
        let mut perms = Vec::new();
        for sigma in (0..n).permutations(n) {
            perms.extend(apply_permutation_table(n, &sigma));
        }
        let trace_bit = |v: u32, x: u32| 1u16 << extract(v, x);
        let later = (0..=nvals)
            .map(|m| {
                xs.iter().map(|&x| (m..nvals).fold(0, |t, u| t | trace_bit(u, x))).collect()
            })
            .collect();
        Ok(Candidates {
            n,
            nvals,
            full_traces: ((1u32 << (1 << (d + 1))) - 1) as u16,
            traces: vec![vec![0; xs.len()]],
            xs,
            perms,
            later,
            path: Vec::new(),
            next: vec![0],
            start,
            nodes: 0,
            budget,
            cursor: None,
            seen: HashSet::new(),
        })
    }

    /// Sets examined so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// Where to resume when the budget stopped the stream; `None` after a complete run.
    pub fn cursor(&self) -> Option<&[u32]> {
        self.cursor.as_deref()
    }

    pub fn exhausted(&self) -> bool {
        self.next.is_empty() && self.cursor.is_none()
    }

    fn canonical(&self, set: &[u32]) -> bool {
        // With at most 64 values a set is a bitmask; for equal sizes the sorted
        // lists first differ at the lowest bit of the symmetric difference.
        let own = set.iter().fold(0u64, |m, v| m | 1 << v);
        let nv = self.nvals as usize;
        for table in self.perms.chunks(nv) {
            // Only flips by a member can put 0 into the image.
            for &flip in set {
                let image = set.iter().fold(0u64, |m, v| m | 1 << table[(v ^ flip) as usize]);
                let diff = image ^ own;
                if diff & diff.wrapping_neg() & image != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// `true` iff adding `v` would shatter some `(d+1)`-set.
    fn blocked(&self, traces: &[u16], v: u32) -> bool {
        self.xs
            .iter()
            .zip(traces)
            .any(|(&x, &t)| t | 1 << extract(v, x) == self.full_traces)
    }

    fn maximal(&self, set: &[u32], traces: &[u16]) -> bool {
        (0..self.nvals).all(|v| set.binary_search(&v).is_ok() || self.blocked(traces, v))
    }

    /// Every skipped value below the largest member must still be blockable
    /// by adding larger values.
    fn completable(&self, set: &[u32], traces: &[u16]) -> bool {
        let m = *set.last().expect("nonempty");
        let later = &self.later[m as usize + 1];
        (0..m).filter(|v| set.binary_search(v).is_err()).all(|v| {
            self.xs.iter().enumerate().any(|(i, &x)| {
                let own = 1u16 << extract(v, x);
                traces[i] & own == 0 && (traces[i] | later[i]) | own == self.full_traces
            })
        })
    }

    fn before_start(&self, set: &[u32]) -> bool {
        self.start.as_ref().is_some_and(|s| set < s.as_slice() && !s.starts_with(set))
    }
}

impl Iterator for Candidates {
    type Item = Family;

    fn next(&mut self) -> Option<Family> {
        if self.cursor.is_some() {
            return None;
        }
        while let Some(u) = self.next.last().copied() {
            if u >= self.nvals {
                self.next.pop();
                self.traces.pop();
                self.path.pop();
                continue;
            }
            *self.next.last_mut().expect("frame") = u + 1;
            let parent = self.traces.last().expect("frame");
            if self.blocked(parent, u) {
                continue;
            }
            let traces: Vec<u16> =
                self.xs.iter().zip(parent).map(|(&x, &t)| t | 1 << extract(u, x)).collect();
            let mut set = self.path.clone();
            set.push(u);
            if self.before_start(&set) {
                continue;
            }
            if self.nodes >= self.budget {
                self.cursor = Some(set);
                return None;
            }
            self.nodes += 1;
            if !self.canonical(&set) || !self.completable(&set, &traces) {
                continue;
            }
            let emit = self.maximal(&set, &traces);
            self.path.push(u);
            self.traces.push(traces);
            self.next.push(u + 1);
            if emit && !self.before_start(&set) {
                let mut code = vec![self.n as u8, set.len() as u8];
                code.extend(set.iter().map(|v| *v as u8));
                if self.seen.insert(CanonicalForm(code)) {
                    return Some(Family::from_bits(self.n, set, None).expect("valid members"));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c5, canonical_form, is_containment_maximal, sauer_shelah_bound, vc_dimension};

    #[test]
    fn small_stream() {
        let all: Vec<Family> = enumerate_candidates(2, 1, 1_000).unwrap().collect();
        assert!(!all.is_empty());
        for f in &all {
            assert!(f.len() as u64 <= sauer_shelah_bound(2, 1).unwrap());
            assert!(is_containment_maximal(f, 1).unwrap());
        }
    }

    #[test]
    fn five_two_contains_c5_and_a_maximum_class() {
        let want = canonical_form(&c5()).unwrap();
        let mut saw_c5 = false;
        let mut saw_16 = false;
        for f in enumerate_candidates(5, 2, 1_000_000).unwrap() {
            assert!(vc_dimension(&f) <= 2);
            assert!(is_containment_maximal(&f, 2).unwrap());
            let canon = canonical_form(&f).unwrap();
            assert_eq!(canon.to_family().unwrap().bit_vectors(), f.bit_vectors());
            saw_c5 |= canon == want;
            saw_16 |= f.len() == 16;
        }
        assert!(saw_c5 && saw_16);
    }
}
