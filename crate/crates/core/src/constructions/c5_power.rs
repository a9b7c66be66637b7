//! A size-11 scheme for C5^5.
//!
//! Copy `i` occupies base elements `5i..5i+5`. With `a` copies carrying a T1
//! and `b` carrying a T0, the first matching rule applies:
//!
//! | rule | condition                                  | kept                                               |
//! |------|--------------------------------------------|----------------------------------------------------|
//! | 1    | `a = 0`                                    | all 1's                                            |
//! | 2    | `a >= 1, b = 0`                            | lowest T1 copy's triple, 0's of the others         |
//! | 3    | `a >= 1, b = 1`                            | all 0's                                            |
//! | 4    | `a = 1, b >= 2`                            | see below                                          |
//! | 5    | `a, b >= 2`, no fifth copy or it has 1's `!= 1` | T1 triples, T0 central elements, fifth copy's 1's |
//! | 6    | `a = b = 2`, fifth copy has one 1          | T1 triples, T0 triples minus centre, fifth copy's 1 |
//!
//! Rule 4 takes the T1 copy and the two lowest T0 copies. The two of those
//! not central among the three copy indices keep their whole triple, the
//! central one keeps its triple's central element, every other copy keeps its 1's.

use crate::bits::{elements, popcount};
use crate::family::{BooleanFunction, PartialFunction};
use crate::scheme::SchemeProgram;

use super::pentagon::{
    arc_around, central_copy, central_element, classify_bits, is_arc, non_arc_around,
    pair_center, TripleStatus,
};

const LOW: u32 = 0b11111;

fn copy(mask: u32, i: usize) -> u32 {
    mask >> (5 * i) & LOW
}

/// Per-copy data the rule conditions depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CopyProfile {
    pub status: [TripleStatus; 5],
    pub ones: [usize; 5],
}

impl CopyProfile {
    fn count(&self, p: impl Fn(TripleStatus) -> bool) -> usize {
        self.status.iter().filter(|s| p(**s)).count()
    }

    fn fifth(&self) -> Option<usize> {
        let free: Vec<usize> =
            (0..5).filter(|i| self.status[*i] == TripleStatus::NoTriple).collect();
        (free.len() == 1).then(|| free[0])
    }
}

/// Rules whose conditions hold, in increasing order.
pub fn table2_rules(p: &CopyProfile) -> Vec<u8> {
    let a = p.count(TripleStatus::is_one);
    let b = p.count(TripleStatus::is_zero);
    let fifth_ones = p.fifth().map(|i| p.ones[i]);
    let mut rules = Vec::new();
    if a == 0 {
        rules.push(1);
    }
    if a >= 1 && b == 0 {
        rules.push(2);
    }
    if a >= 1 && b == 1 {
        rules.push(3);
    }
    if a == 1 && b >= 2 {
        rules.push(4);
    }
    if a >= 2 && b >= 2 && (a + b == 5 || fifth_ones != Some(1)) {
        rules.push(5);
    }
    if a == 2 && b == 2 && fifth_ones == Some(1) {
        rules.push(6);
    }
    rules
}

#[derive(Debug, Clone, Copy, Default)]
pub struct C5PowerScheme;

pub fn scheme_table2() -> C5PowerScheme {
    C5PowerScheme
}

impl C5PowerScheme {
    /// Copy profile, or `None` if `g` is not a trace of C5^5.
    pub fn profile(&self, g: &PartialFunction) -> Option<CopyProfile> {
        let mut status = [TripleStatus::NoTriple; 5];
        let mut ones = [0; 5];
        for i in 0..5 {
            status[i] = classify_bits(copy(g.domain(), i), copy(g.values(), i))?;
            ones[i] = popcount(copy(g.values(), i));
        }
        Some(CopyProfile { status, ones })
    }

    pub fn compress_with_rule(&self, g: &PartialFunction) -> Option<(u8, u32)> {
        let p = self.profile(g)?;
        let rule = *table2_rules(&p).first()?;
        let ones = |i: usize| copy(g.ones(), i);
        let zeros = |i: usize| copy(g.zeros(), i);
        let triple = |i: usize| p.status[i].positions().unwrap_or(0);
        let centre = |i: usize| 1u32 << central_element(triple(i)).expect("triple");
        let parts: [u32; 5] = match rule {
            1 => std::array::from_fn(ones),
            2 => {
                let first = (0..5).find(|i| p.status[*i].is_one())?;
                std::array::from_fn(|i| if i == first { triple(i) } else { zeros(i) })
            }
            3 => std::array::from_fn(zeros),
            4 => {
                let t1 = (0..5).find(|i| p.status[*i].is_one())?;
                let t0: Vec<usize> = (0..5).filter(|i| p.status[*i].is_zero()).take(2).collect();
                let chosen = [t1, t0[0], t0[1]];
                let c = central_copy(&chosen).ok()?;
                std::array::from_fn(|i| {
                    if i == c {
                        centre(i)
                    } else if chosen.contains(&i) {
                        triple(i)
                    } else {
                        ones(i)
                    }
                })
            }
            5 | 6 => {
                std::array::from_fn(|i| match p.status[i] {
                    TripleStatus::Triple1(t) => t,
                    TripleStatus::Triple0(_) if rule == 5 => centre(i),
                    TripleStatus::Triple0(t) => t & !centre(i),
                    TripleStatus::NoTriple => ones(i),
                })
            }
            _ => unreachable!(),
        };
        let kept = parts.iter().enumerate().fold(0, |m, (i, y)| m | y << (5 * i));
        Some((rule, kept))
    }

    /// The rule a compressed set was produced by.
    pub fn decode_rule(&self, kept: u32) -> u8 {
        let triples: Vec<u32> =
            (0..5).map(|i| copy(kept, i)).filter(|y| popcount(*y) == 3).collect();
        match triples.len() {
            0 => 1,
            1 if is_arc(triples[0]) => 2,
            1 => 3,
            _ if !triples.iter().all(|t| is_arc(*t)) => 4,
            _ => {
                let mut sizes: Vec<usize> = (0..5).map(|i| popcount(copy(kept, i))).collect();
                sizes.sort_unstable();
                if sizes == [1, 2, 2, 3, 3] { 6 } else { 5 }
            }
        }
    }

    fn decode_parts(&self, kept: u32) -> [u32; 5] {
        let y: [u32; 5] = std::array::from_fn(|i| copy(kept, i));
        let ones_style = |v: u32| v;
        let zeros_style = |v: u32| !v & LOW;
        let arc_from = |v: u32| arc_around(central_element(v).expect("triple"));
        let t0_from_centre = |c: usize| !non_arc_around(c) & LOW;
        let triple_decode = |v: u32| if is_arc(v) { v } else { !v & LOW };
        match self.decode_rule(kept) {
            1 => y.map(ones_style),
            2 => y.map(|v| if popcount(v) == 3 { v } else { zeros_style(v) }),
            3 => y.map(zeros_style),
            4 => {
                let idx: Vec<usize> = (0..5).filter(|i| popcount(y[*i]) == 3).collect();
                let c = pair_center(1 << idx[0] | 1 << idx[1]);
                let central_is_t0 = idx.iter().any(|i| is_arc(y[*i]));
                std::array::from_fn(|i| {
                    if idx.contains(&i) {
                        triple_decode(y[i])
                    } else if i == c {
                        let e = elements(y[i])[0];
                        if central_is_t0 { t0_from_centre(e) } else { arc_around(e) }
                    } else {
                        ones_style(y[i])
                    }
                })
            }
            6 => y.map(|v| match popcount(v) {
                3 => arc_from(v),
                2 => t0_from_centre(pair_center(v)),
                _ => ones_style(v),
            }),
            _ => y.map(|v| match popcount(v) {
                3 => arc_from(v),
                1 => t0_from_centre(elements(v)[0]),
                _ => ones_style(v),
            }),
        }
    }
}

impl SchemeProgram for C5PowerScheme {
    fn base_size(&self) -> usize {
        25
    }
    fn size_bound(&self) -> usize {
        11
    }
    fn compress(&self, g: &PartialFunction) -> Option<u32> {
        self.compress_with_rule(g).map(|(_, y)| y)
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        let parts = self.decode_parts(kept);
        let bits = parts.iter().enumerate().fold(0, |m, (i, v)| m | v << (5 * i));
        BooleanFunction::raw(25, bits)
    }
    fn description(&self) -> String {
        "six-rule scheme for C5^5 (size 11)".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c5, power_join};
    use crate::scheme::{verify, VerifyMode};

    #[test]
    fn every_profile_has_a_rule() {
        let kinds = [TripleStatus::NoTriple, TripleStatus::Triple0(0), TripleStatus::Triple1(0)];
        for code in 0..243usize {
            let status: [TripleStatus; 5] = std::array::from_fn(|i| kinds[code / 3usize.pow(i as u32) % 3]);
            for fifth_ones in 0..3 {
                let p = CopyProfile { status, ones: [fifth_ones; 5] };
                assert!(!table2_rules(&p).is_empty(), "{p:?}");
            }
        }
    }

    #[test]
    fn random_samples_verify() {
        let f = power_join(&c5(), 5).unwrap();
        let s = scheme_table2();
        let r = verify(&s, &f, VerifyMode::Random { samples: 20_000, seed: 7 }).unwrap();
        assert!(r.valid, "{r}");
        assert!(r.max_compressed_size <= 11);
    }

    #[test]
    fn rule_six_example() {
        // Copies 0,1 carry arcs, 2,3 carry non-arc zeros, copy 4 has one sampled 1.
        let s = scheme_table2();
        let f: [u32; 5] = [0b00111, 0b01110, 0b10100, 0b01001, 0b01010];
        let dom: [u32; 5] = [0b00111, 0b01110, 0b01011, 0b10110, 0b00010];
        let bits = f.iter().enumerate().fold(0, |m, (i, v)| m | v << (5 * i));
        let d = dom.iter().enumerate().fold(0, |m, (i, v)| m | v << (5 * i));
        let g = PartialFunction::new(25, d, bits & d).unwrap();
        let (rule, y) = s.compress_with_rule(&g).unwrap();
        assert_eq!(rule, 6);
        assert_eq!(popcount(y), 11);
        assert_eq!(s.decode_rule(y), 6);
        assert_eq!(s.decode(y).bits() & d, bits & d);
    }
}
