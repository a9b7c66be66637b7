//! Finite boolean concept classes.
//!
//! A [`Family`] is a nonempty, duplicate-free set of total 0/1 functions on a
//! base `{0, .., n-1}` with `n <= 25`. Functions are stored as bit vectors
//! (bit `i` is the value at base element `i`) and kept sorted ascending, so
//! every iteration order in the crate is deterministic.

mod builtin;
mod format;
mod symmetry;

use std::fmt;
use std::sync::Arc;

use crate::bits::{self, full_mask, popcount, SubsetsOfSize, MAX_BASE};
use crate::error::{Error, Result};

pub use builtin::{c4, c5, c5_minus, make_builtin, p, w6, C5_REMOVED};
pub use format::{parse_fam, write_fam};
pub(crate) use symmetry::apply_permutation as symmetry_apply;
pub use symmetry::{
    apply_permutation_table, automorphisms, canonical_form, design_check, flip_values, is_two_transitive,
    permute_base, CanonicalForm, CANONICAL_MAX_BASE,
};

/// A total assignment `B -> {0,1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BooleanFunction {
    base: u8,
    bits: u32,
}

impl BooleanFunction {
    pub fn new(base_size: usize, bits: u32) -> Result<Self> {
        check_base(base_size)?;
        if bits & !full_mask(base_size) != 0 {
            return Err(Error::OutOfRange(format!(
                "bits {bits:#x} set beyond base size {base_size}"
            )));
        }
        Ok(BooleanFunction { base: base_size as u8, bits })
    }

    /// Unchecked constructor for internal hot paths; the caller guarantees the invariant.
    #[inline]
    pub(crate) fn raw(base_size: usize, bits: u32) -> Self {
        debug_assert!(bits & !full_mask(base_size) == 0);
        BooleanFunction { base: base_size as u8, bits }
    }

    /// Parses a 0/1 string where character `i` is the value at element `i`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("unexpected character `{c}` in function `{s}`"),
                    })
                }
            }
        }
        BooleanFunction::new(s.chars().count(), bits)
    }

    /// The function that is 1 exactly on `set`.
    pub fn indicator(base_size: usize, set: u32) -> Result<Self> {
        BooleanFunction::new(base_size, set)
    }

    #[inline]
    pub fn base_size(&self) -> usize {
        self.base as usize
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn value(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn weight(&self) -> usize {
        popcount(self.bits)
    }

    pub fn trace(&self, domain: u32) -> PartialFunction {
        PartialFunction { base: self.base, domain, values: self.bits & domain }
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.base_size() {
            f.write_str(if self.value(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A labeled sample: a domain `S` and the values of some function on it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PartialFunction {
    base: u8,
    domain: u32,
    values: u32,
}

impl PartialFunction {
    pub fn new(base_size: usize, domain: u32, values: u32) -> Result<Self> {
        check_base(base_size)?;
        if domain & !full_mask(base_size) != 0 {
            return Err(Error::NotASubset(domain));
        }
        if values & !domain != 0 {
            return Err(Error::OutOfRange(format!(
                "values {values:#x} set outside domain {domain:#x}"
            )));
        }
        Ok(PartialFunction { base: base_size as u8, domain, values })
    }

    #[inline]
    pub(crate) fn raw(base_size: usize, domain: u32, values: u32) -> Self {
        debug_assert!(values & !domain == 0);
        PartialFunction { base: base_size as u8, domain, values }
    }

    pub fn empty(base_size: usize) -> Self {
        PartialFunction { base: base_size as u8, domain: 0, values: 0 }
    }

    #[inline]
    pub fn base_size(&self) -> usize {
        self.base as usize
    }

    #[inline]
    pub fn domain(&self) -> u32 {
        self.domain
    }

    #[inline]
    pub fn values(&self) -> u32 {
        self.values
    }

    /// Domain points carrying value 1.
    #[inline]
    pub fn ones(&self) -> u32 {
        self.values
    }

    /// Domain points carrying value 0.
    #[inline]
    pub fn zeros(&self) -> u32 {
        self.domain & !self.values
    }

    pub fn len(&self) -> usize {
        popcount(self.domain)
    }

    pub fn is_empty(&self) -> bool {
        self.domain == 0
    }

    pub fn restrict(&self, sub: u32) -> PartialFunction {
        let domain = self.domain & sub;
        PartialFunction { base: self.base, domain, values: self.values & domain }
    }

    /// Parses the [`Display`](fmt::Display) form: one character per base element,
    /// `0`/`1` inside the domain and `-` outside.
    pub fn parse(s: &str) -> Result<Self> {
        let (mut domain, mut values) = (0, 0);
        for (i, c) in s.chars().enumerate() {
            match c {
                '-' => {}
                '0' => domain |= 1 << i,
                '1' => {
                    domain |= 1 << i;
                    values |= 1 << i;
                }
                _ => {
                    return Err(Error::Parse {
                        line: 0,
                        message: format!("unexpected character `{c}` in sample `{s}`"),
                    })
                }
            }
        }
        PartialFunction::new(s.chars().count(), domain, values)
    }
}

impl fmt::Display for PartialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.base_size() {
            let c = if self.domain >> i & 1 == 0 {
                "-"
            } else if self.values >> i & 1 == 1 {
                "1"
            } else {
                "0"
            };
            f.write_str(c)?;
        }
        Ok(())
    }
}

/// `true` iff `f` agrees with `g` on the domain of `g`.
pub fn extends(f: &BooleanFunction, g: &PartialFunction) -> Result<bool> {
    if f.base_size() != g.base_size() {
        return Err(Error::BaseMismatch { expected: g.base_size(), found: f.base_size() });
    }
    Ok(f.bits & g.domain == g.values)
}

/// A concept class: a nonempty sorted set of functions on a common base.
#[derive(Clone, Debug)]
pub struct Family {
    base: u8,
    bits: Vec<u32>,
    label: Option<String>,
    // Join structure, if this family was built by `join`: consecutive coordinate
    // blocks, lowest first. Only used to enumerate traces faster.
    factors: Option<Arc<[Family]>>,
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.bits == other.bits
    }
}

impl Eq for Family {}

fn check_base(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > MAX_BASE {
        return Err(Error::BaseTooLarge { size: n, max: MAX_BASE });
    }
    Ok(())
}

impl Family {
    /// Builds a family from bit vectors, sorting and removing duplicates.
    pub fn from_bits(
        base_size: usize,
        bits: impl IntoIterator<Item = u32>,
        label: Option<String>,
    ) -> Result<Self> {
        check_base(base_size)?;
        let full = full_mask(base_size);
        let mut v: Vec<u32> = bits.into_iter().collect();
        if let Some(bad) = v.iter().find(|b| **b & !full != 0) {
            return Err(Error::OutOfRange(format!(
                "function {bad:#x} has bits beyond base size {base_size}"
            )));
        }
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Family { base: base_size as u8, bits: v, label, factors: None })
    }

    pub fn from_functions(
        functions: impl IntoIterator<Item = BooleanFunction>,
        label: Option<String>,
    ) -> Result<Self> {
        let functions: Vec<BooleanFunction> = functions.into_iter().collect();
        let base = functions.first().ok_or(Error::Empty)?.base_size();
        if let Some(f) = functions.iter().find(|f| f.base_size() != base) {
            return Err(Error::BaseMismatch { expected: base, found: f.base_size() });
        }
        Family::from_bits(base, functions.iter().map(|f| f.bits), label)
    }

    #[inline]
    pub fn base_size(&self) -> usize {
        self.base as usize
    }

    pub fn base_mask(&self) -> u32 {
        full_mask(self.base_size())
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// Always false; families are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Member bit vectors, ascending.
    pub fn bit_vectors(&self) -> &[u32] {
        &self.bits
    }

    pub fn functions(&self) -> impl Iterator<Item = BooleanFunction> + '_ {
        let n = self.base_size();
        self.bits.iter().map(move |&b| BooleanFunction::raw(n, b))
    }

    pub fn contains(&self, f: &BooleanFunction) -> bool {
        f.base_size() == self.base_size() && self.bits.binary_search(&f.bits).is_ok()
    }

    pub(crate) fn contains_bits(&self, bits: u32) -> bool {
        self.bits.binary_search(&bits).is_ok()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn display_name(&self) -> String {
        self.label.clone().unwrap_or_else(|| format!("family(n={}, m={})", self.base, self.len()))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// The join blocks when this family was built by [`join`], else `None`.
    pub fn factors(&self) -> Option<&[Family]> {
        self.factors.as_deref()
    }

    /// Same functions with the join structure forgotten.
    pub fn flattened(&self) -> Family {
        Family { factors: None, ..self.clone() }
    }

    pub fn max_weight(&self) -> usize {
        self.bits.iter().map(|b| popcount(*b)).max().unwrap_or(0)
    }

    pub fn max_coweight(&self) -> usize {
        let n = self.base_size();
        self.bits.iter().map(|b| n - popcount(*b)).max().unwrap_or(0)
    }

    /// Distinct trace values `f & s`, ascending.
    pub fn trace_values(&self, s: u32) -> Vec<u32> {
        if let Some(factors) = self.factors() {
            let mut acc = vec![0u32];
            let mut offset = 0;
            for fac in factors {
                let n = fac.base_size();
                let local = (s >> offset) & full_mask(n);
                let part = fac.trace_values(local);
                let mut next = Vec::with_capacity(acc.len() * part.len());
                for &a in &acc {
                    for &p in &part {
                        next.push(a | (p << offset));
                    }
                }
                acc = next;
                offset += n;
            }
            acc.sort_unstable();
            return acc;
        }
        let mut v: Vec<u32> = self.bits.iter().map(|b| b & s).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Number of distinct traces on `s`.
    pub fn trace_count(&self, s: u32) -> usize {
        if let Some(factors) = self.factors() {
            let mut offset = 0;
            let mut product = 1;
            for fac in factors {
                let n = fac.base_size();
                product *= fac.trace_count((s >> offset) & full_mask(n));
                offset += n;
            }
            return product;
        }
        self.trace_values(s).len()
    }
}

/// Distinct traces `f|_S` of the family, ascending by value bit vector.
pub fn traces(family: &Family, s: u32) -> Result<Vec<PartialFunction>> {
    if s & !family.base_mask() != 0 {
        return Err(Error::NotASubset(s));
    }
    let n = family.base_size();
    Ok(family.trace_values(s).into_iter().map(|v| PartialFunction::raw(n, s, v)).collect())
}

/// `true` iff every assignment on `x` extends to a member.
pub fn shatters(family: &Family, x: u32) -> Result<bool> {
    if x & !family.base_mask() != 0 {
        return Err(Error::NotASubset(x));
    }
    Ok(shatters_unchecked(family, x))
}

fn shatters_unchecked(family: &Family, x: u32) -> bool {
    let size = popcount(x);
    if size >= 32 || family.len() < (1usize << size) {
        return false;
    }
    family.trace_count(x) == 1 << size
}

/// Size of the largest shattered subset.
pub fn vc_dimension(family: &Family) -> usize {
    let n = family.base_size();
    let universe = family.base_mask();
    let mut d = 0;
    while d < n {
        let next = d + 1;
        if family.len() < 1 << next {
            break;
        }
        if !SubsetsOfSize::new(universe, next).any(|x| shatters_unchecked(family, x)) {
            break;
        }
        d = next;
    }
    d
}

/// `sum_{i<=d} C(n, i)`, the largest possible size of a family with vc-dimension `d`.
pub fn sauer_shelah_bound(n: usize, d: usize) -> Result<u64> {
    if d > n {
        return Err(Error::OutOfRange(format!("dimension {d} exceeds base size {n}")));
    }
    Ok((0..=d).map(|i| bits::binomial(n, i)).sum())
}

/// `true` iff no non-member can be added without pushing the vc-dimension above `d`.
pub fn is_containment_maximal(family: &Family, d: usize) -> Result<bool> {
    let vc = vc_dimension(family);
    if vc > d {
        return Err(Error::VcTooLarge { vc, bound: d });
    }
    let n = family.base_size();
    if n > 20 {
        return Err(Error::BaseTooLarge { size: n, max: 20 });
    }
    if d >= n {
        // Nothing on n points can exceed dimension n, so only P(n) is maximal.
        return Ok(family.len() == 1 << n);
    }
    // Sets of size d+1 missing exactly one trace; adding a function with that
    // trace shatters them.
    let mut blockers: Vec<(u32, u32)> = Vec::new();
    for x in SubsetsOfSize::new(family.base_mask(), d + 1) {
        let present = family.trace_values(x);
        if present.len() + 1 == 1 << (d + 1) {
            let missing = (0..1u32 << (d + 1))
                .map(|v| bits::deposit(v, x))
                .find(|v| present.binary_search(v).is_err())
                .expect("exactly one missing trace");
            blockers.push((x, missing));
        }
    }
    Ok((0..1u32 << n)
        .filter(|v| !family.contains_bits(*v))
        .all(|v| blockers.iter().any(|&(x, missing)| v & x == missing)))
}

/// The join `F * G` on the disjoint union of the bases; `G`'s coordinates follow `F`'s.
pub fn join(f: &Family, g: &Family) -> Result<Family> {
    let nf = f.base_size();
    let n = nf + g.base_size();
    if n > MAX_BASE {
        return Err(Error::BaseTooLarge { size: n, max: MAX_BASE });
    }
    let bits: Vec<u32> =
        g.bits.iter().flat_map(|&b| f.bits.iter().map(move |&a| a | (b << nf))).collect();
    let mut factors: Vec<Family> = Vec::new();
    for part in [f, g] {
        match part.factors() {
            Some(inner) => factors.extend(inner.iter().cloned()),
            None => factors.push(part.clone()),
        }
    }
    let label = format!("{}*{}", f.display_name(), g.display_name());
    let mut out = Family::from_bits(n, bits, Some(label))?;
    out.factors = Some(factors.into());
    Ok(out)
}

/// The `n`-fold join `F * .. * F`.
pub fn power_join(f: &Family, n: usize) -> Result<Family> {
    if n == 0 {
        return Err(Error::OutOfRange("power_join needs n >= 1".into()));
    }
    if n * f.base_size() > MAX_BASE {
        return Err(Error::BaseTooLarge { size: n * f.base_size(), max: MAX_BASE });
    }
    let mut acc = f.clone();
    for _ in 1..n {
        acc = join(&acc, f)?;
    }
    if n > 1 {
        acc.label = Some(format!("{}^{}", f.display_name(), n));
    }
    Ok(acc)
}

/// Distinct traces on `keep`, relabeled onto `0..|keep|` in increasing original order.
pub fn restrict(f: &Family, keep: u32) -> Result<Family> {
    if keep == 0 {
        return Err(Error::Empty);
    }
    if keep & !f.base_mask() != 0 {
        return Err(Error::NotASubset(keep));
    }
    Family::from_bits(
        popcount(keep),
        f.bits.iter().map(|b| bits::extract(*b, keep)),
        Some(format!("{}|{}", f.display_name(), bits::format_set(keep))),
    )
}

pub fn remove_function(f: &Family, g: &BooleanFunction) -> Result<Family> {
    if !f.contains(g) {
        return Err(Error::NotAMember(g.to_string()));
    }
    if f.len() < 2 {
        return Err(Error::Empty);
    }
    Family::from_bits(
        f.base_size(),
        f.bits.iter().copied().filter(|b| *b != g.bits),
        Some(format!("{}-{}", f.display_name(), g)),
    )
}

/// `true` iff `small` and `big` share a base and every member of `small` is in `big`.
pub fn is_subfamily(small: &Family, big: &Family) -> bool {
    small.base == big.base && small.bits.iter().all(|b| big.contains_bits(*b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_traces(f: &Family, s: u32) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        for &b in f.bit_vectors() {
            if !out.contains(&(b & s)) {
                out.push(b & s);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn c5_has_ten_functions() {
        assert_eq!(c5().len(), 10);
    }

    #[test]
    fn c4_has_nine_functions_by_brute_force() {
        let keep = bits::mask_of(&[0, 1, 3, 4]);
        let distinct = brute_traces(&c5(), keep);
        assert_eq!(distinct.len(), 9);
        assert_eq!(c4().len(), 9);
        assert_eq!(c4().base_size(), 4);
        assert_eq!(restrict(&c5(), keep).unwrap(), c4());
    }

    #[test]
    fn join_and_power() {
        let j = join(&c5(), &c5()).unwrap();
        assert_eq!(j.len(), 100);
        assert_eq!(j.base_size(), 10);
        assert_eq!(power_join(&c5(), 2).unwrap(), j);
        assert_eq!(power_join(&p(1).unwrap(), 3).unwrap(), p(3).unwrap());
        assert_eq!(power_join(&c5(), 1).unwrap(), c5());
        let single = Family::from_bits(1, [1], None).unwrap();
        assert_eq!(join(&c5(), &single).unwrap().len(), 10);
        assert_eq!(restrict(&j, 0b11111).unwrap(), c5());
    }

    #[test]
    fn power_join_of_c5_fits_in_25() {
        let big = power_join(&c5(), 5).unwrap();
        assert_eq!(big.base_size(), 25);
        assert_eq!(big.len(), 100_000);
        assert!(matches!(power_join(&c5(), 6), Err(Error::BaseTooLarge { .. })));
    }

    #[test]
    fn factored_traces_match_flat() {
        let j = join(&c5(), &c4()).unwrap();
        let flat = j.flattened();
        for s in [0, 0b1, 0b101101101, 0b111111111, 0b100010001] {
            assert_eq!(j.trace_values(s), flat.trace_values(s));
            assert_eq!(j.trace_values(s), brute_traces(&flat, s));
        }
    }

    #[test]
    fn c5_trace_structure() {
        let f = c5();
        for s in SubsetsOfSize::new(0b11111, 3) {
            let t = f.trace_values(s);
            assert_eq!(t.len(), 7);
            let arc = [0b00111u32, 0b01110, 0b11100, 0b11001, 0b10011].contains(&s);
            if arc {
                assert!(!t.contains(&0), "arc {s:#b} must miss the all-0 trace");
            } else {
                assert!(!t.contains(&s), "non-arc {s:#b} must miss the all-1 trace");
            }
        }
        assert_eq!(traces(&f, 0).unwrap(), vec![PartialFunction::empty(5)]);
    }

    #[test]
    fn shattering_and_vc() {
        let f = c5();
        assert!(shatters(&f, 0b11).unwrap());
        assert!(!shatters(&f, 0b111).unwrap());
        assert!(shatters(&f, 0).unwrap());
        assert_eq!(vc_dimension(&f), 2);
        assert_eq!(vc_dimension(&w6()), 2);
        assert_eq!(vc_dimension(&p(4).unwrap()), 4);
        assert_eq!(vc_dimension(&Family::from_bits(3, [5], None).unwrap()), 0);
        assert_eq!(vc_dimension(&flip_values(&f, 0b1).unwrap()), 2);
    }

    #[test]
    fn sauer_shelah() {
        assert_eq!(sauer_shelah_bound(5, 2).unwrap(), 16);
        assert_eq!(sauer_shelah_bound(7, 0).unwrap(), 1);
        assert_eq!(sauer_shelah_bound(4, 2).unwrap(), 11);
        assert!(sauer_shelah_bound(2, 3).is_err());
        assert!((c5().len() as u64) < sauer_shelah_bound(5, 2).unwrap());
    }

    fn brute_maximal(f: &Family, d: usize) -> bool {
        (0..1u32 << f.base_size()).filter(|v| !f.contains_bits(*v)).all(|v| {
            let bigger =
                Family::from_bits(f.base_size(), f.bit_vectors().iter().copied().chain([v]), None)
                    .unwrap();
            vc_dimension(&bigger) > d
        })
    }

    #[test]
    fn containment_maximality() {
        assert!(is_containment_maximal(&c5(), 2).unwrap());
        assert!(is_containment_maximal(&p(3).unwrap(), 3).unwrap());
        let minus = c5_minus();
        assert_eq!(is_containment_maximal(&minus, 2).unwrap(), brute_maximal(&minus, 2));
        assert_eq!(is_containment_maximal(&c4(), 2).unwrap(), brute_maximal(&c4(), 2));
        assert!(matches!(is_containment_maximal(&c5(), 1), Err(Error::VcTooLarge { .. })));
    }

    #[test]
    fn remove_and_six_trace_triples() {
        let minus = c5_minus();
        assert_eq!(minus.len(), 9);
        let bad = BooleanFunction::parse("01110").unwrap();
        assert_eq!(remove_function(&c5(), &bad).unwrap(), minus);
        assert!(remove_function(&minus, &bad).is_err());
        let six: Vec<u32> = SubsetsOfSize::new(0b11111, 3)
            .filter(|s| minus.trace_values(*s).len() == 6)
            .collect();
        // The removed function is the only member with ones exactly on the arc
        // {1,2,3}; every 3-set whose trace of 01110 is unique to it loses one trace.
        let by_brute: Vec<u32> = SubsetsOfSize::new(0b11111, 3)
            .filter(|s| brute_traces(&minus, *s).len() < brute_traces(&c5(), *s).len())
            .collect();
        assert_eq!(six, by_brute);
        assert!(!six.is_empty());
    }

    #[test]
    fn extends_examples() {
        let f = BooleanFunction::parse("10010").unwrap();
        let g = PartialFunction::new(5, 0b1001, 0b1001).unwrap();
        assert!(extends(&f, &g).unwrap());
        let h = PartialFunction::new(5, 0b10, 0b10).unwrap();
        assert!(!extends(&f, &h).unwrap());
        assert!(extends(&f, &PartialFunction::empty(5)).unwrap());
        assert!(extends(&f, &PartialFunction::empty(4)).is_err());
    }

    #[test]
    fn partial_function_invariant() {
        assert!(PartialFunction::new(5, 0b011, 0b100).is_err());
        let g = PartialFunction::parse("1-0-1").unwrap();
        assert_eq!(g.domain(), 0b10101);
        assert_eq!(g.values(), 0b10001);
        assert_eq!(g.to_string(), "1-0-1");
    }

    #[test]
    fn rejects_empty_and_oversized() {
        assert_eq!(Family::from_bits(3, [], None), Err(Error::Empty));
        assert_eq!(Family::from_bits(0, [0], None), Err(Error::Empty));
        assert!(matches!(Family::from_bits(26, [0], None), Err(Error::BaseTooLarge { .. })));
        assert!(Family::from_bits(2, [4], None).is_err());
    }
}
