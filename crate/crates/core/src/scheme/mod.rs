//! Compression schemes and their verification.
//!
//! An unlabeled scheme is a pair (compress, decode): `compress` keeps a subset
//! of the sample's domain (no values), `decode` maps that subset back to a total
//! function which must extend the sample. Labeled schemes keep the values too.
//!
//! Schemes are either procedural ([`SchemeProgram`] implementations) or
//! decoder tables ([`UnlabeledDecoder`], [`LabeledDecoder`]); for tables the
//! compressor is derived from the decoder by [`table_to_program`].

mod combinators;
mod format;
mod verify;

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::{binomial, popcount, subsets_up_to};
use crate::error::{Error, Result};
use crate::family::{BooleanFunction, Family, PartialFunction};

pub use combinators::{permute_scheme, product_scheme, restrict_scheme};
pub use format::{parse_decoder, parse_labeled_decoder, write_decoder, write_labeled_decoder};
pub use verify::{
    all_violations, verify, verify_labeled, Counterexample, VerificationReport, VerifyMode, ViolationKind,
    RANDOM_CHUNK,
};

/// A procedural unlabeled compression scheme.
pub trait SchemeProgram: Send + Sync {
    fn base_size(&self) -> usize;

    /// Largest compressed set the scheme claims to produce.
    fn size_bound(&self) -> usize;

    /// Compressed set for `sample`, or `None` when the scheme has nothing to offer.
    fn compress(&self, sample: &PartialFunction) -> Option<u32>;

    /// Total function reconstructed from a compressed set alone.
    fn decode(&self, kept: u32) -> BooleanFunction;

    fn description(&self) -> String;
}

pub type Program = Arc<dyn SchemeProgram>;

/// Keeps the sample points with value 1 and decodes to the indicator of the kept set.
#[derive(Debug, Clone)]
pub struct KeepOnes {
    base: usize,
    size: usize,
}

/// Keeps the sample points with value 0 and decodes to 0 on the kept set, 1 elsewhere.
#[derive(Debug, Clone)]
pub struct KeepZeros {
    base: usize,
    size: usize,
}

pub fn keep_ones_scheme(f: &Family) -> KeepOnes {
    KeepOnes { base: f.base_size(), size: f.max_weight() }
}

pub fn keep_zeros_scheme(f: &Family) -> KeepZeros {
    KeepZeros { base: f.base_size(), size: f.max_coweight() }
}

impl SchemeProgram for KeepOnes {
    fn base_size(&self) -> usize {
        self.base
    }
    fn size_bound(&self) -> usize {
        self.size
    }
    fn compress(&self, sample: &PartialFunction) -> Option<u32> {
        Some(sample.ones())
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        BooleanFunction::raw(self.base, kept)
    }
    fn description(&self) -> String {
        format!("keep-ones (size {})", self.size)
    }
}

impl SchemeProgram for KeepZeros {
    fn base_size(&self) -> usize {
        self.base
    }
    fn size_bound(&self) -> usize {
        self.size
    }
    fn compress(&self, sample: &PartialFunction) -> Option<u32> {
        Some(sample.zeros())
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        BooleanFunction::raw(self.base, !kept & crate::bits::full_mask(self.base))
    }
    fn description(&self) -> String {
        format!("keep-zeros (size {})", self.size)
    }
}

/// Number of base subsets of size at most `k`.
pub fn decoder_entry_count(n: usize, k: usize) -> u64 {
    (0..=k.min(n)).map(|j| binomial(n, j)).sum()
}

/// A decoding table defined on every base subset of size at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnlabeledDecoder {
    base: usize,
    size: usize,
    entries: HashMap<u32, u32>,
}

impl UnlabeledDecoder {
    pub fn from_fn(
        base: usize,
        size: usize,
        mut value: impl FnMut(u32) -> BooleanFunction,
    ) -> Result<Self> {
        let full = crate::bits::full_mask(base);
        let mut entries = HashMap::new();
        for y in subsets_up_to(full, size) {
            let f = value(y);
            if f.base_size() != base {
                return Err(Error::BaseMismatch { expected: base, found: f.base_size() });
            }
            entries.insert(y, f.bits());
        }
        Ok(UnlabeledDecoder { base, size, entries })
    }

    /// Builds from explicit `(subset, value)` pairs; every subset of size `<= k`
    /// must appear exactly once.
    pub fn from_entries(
        base: usize,
        size: usize,
        pairs: impl IntoIterator<Item = (u32, BooleanFunction)>,
    ) -> Result<Self> {
        let full = crate::bits::full_mask(base);
        let mut entries = HashMap::new();
        for (y, f) in pairs {
            if y & !full != 0 || popcount(y) > size {
                return Err(Error::OutOfRange(format!(
                    "decoder key {} outside base {base} / size {size}",
                    crate::bits::format_set(y)
                )));
            }
            if f.base_size() != base {
                return Err(Error::BaseMismatch { expected: base, found: f.base_size() });
            }
            if entries.insert(y, f.bits()).is_some() {
                return Err(Error::OutOfRange(format!(
                    "duplicate decoder key {}",
                    crate::bits::format_set(y)
                )));
            }
        }
        let want = decoder_entry_count(base, size);
        if entries.len() as u64 != want {
            return Err(Error::OutOfRange(format!(
                "decoder has {} entries, expected {want}",
                entries.len()
            )));
        }
        Ok(UnlabeledDecoder { base, size, entries })
    }

    pub fn base_size(&self) -> usize {
        self.base
    }

    pub fn size_bound(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, kept: u32) -> Option<BooleanFunction> {
        self.entries.get(&kept).map(|b| BooleanFunction::raw(self.base, *b))
    }

    /// Entries in (cardinality, mask) order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, BooleanFunction)> + '_ {
        subsets_up_to(crate::bits::full_mask(self.base), self.size)
            .map(move |y| (y, self.get(y).expect("decoder is total")))
    }

    /// First compressed set `Y ⊆ dom(g)`, `|Y| <= k`, in (cardinality, mask)
    /// order whose decoding extends `g`.
    pub fn first_extending(&self, g: &PartialFunction) -> Option<u32> {
        subsets_up_to(g.domain(), self.size).find(|y| {
            self.entries.get(y).is_some_and(|f| f & g.domain() == g.values())
        })
    }
}

/// A decoder table turned into a program; `compress` is [`UnlabeledDecoder::first_extending`].
#[derive(Debug, Clone)]
pub struct DecoderProgram {
    decoder: UnlabeledDecoder,
    name: String,
}

impl DecoderProgram {
    pub fn decoder(&self) -> &UnlabeledDecoder {
        &self.decoder
    }
}

pub fn table_to_program(decoder: UnlabeledDecoder, f: &Family) -> Result<DecoderProgram> {
    if decoder.base != f.base_size() {
        return Err(Error::BaseMismatch { expected: f.base_size(), found: decoder.base });
    }
    let name = format!("decoder table (size {}) for {}", decoder.size, f.display_name());
    Ok(DecoderProgram { decoder, name })
}

impl SchemeProgram for DecoderProgram {
    fn base_size(&self) -> usize {
        self.decoder.base
    }
    fn size_bound(&self) -> usize {
        self.decoder.size
    }
    fn compress(&self, sample: &PartialFunction) -> Option<u32> {
        self.decoder.first_extending(sample)
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        self.decoder.get(kept).unwrap_or(BooleanFunction::raw(self.decoder.base, 0))
    }
    fn description(&self) -> String {
        self.name.clone()
    }
}

/// A labeled decoding table: keys are sub-samples `(Y, values on Y)`, `|Y| <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDecoder {
    base: usize,
    size: usize,
    entries: HashMap<(u32, u32), u32>,
}

impl LabeledDecoder {
    pub fn from_fn(
        base: usize,
        size: usize,
        mut value: impl FnMut(u32, u32) -> BooleanFunction,
    ) -> Result<Self> {
        let full = crate::bits::full_mask(base);
        let mut entries = HashMap::new();
        for y in subsets_up_to(full, size) {
            for w in crate::bits::subsets_up_to(y, popcount(y)) {
                let f = value(y, w);
                if f.base_size() != base {
                    return Err(Error::BaseMismatch { expected: base, found: f.base_size() });
                }
                entries.insert((y, w), f.bits());
            }
        }
        Ok(LabeledDecoder { base, size, entries })
    }

    /// Builds from `((Y, values on Y), f)` entries; every key with `|Y| <= size`
    /// must appear exactly once.
    pub fn from_entries(
        base: usize,
        size: usize,
        entries: impl IntoIterator<Item = ((u32, u32), BooleanFunction)>,
    ) -> Result<Self> {
        let mut map = HashMap::new();
        for ((y, w), f) in entries {
            if f.base_size() != base {
                return Err(Error::BaseMismatch { expected: base, found: f.base_size() });
            }
            if popcount(y) > size || w & !y != 0 || y & !crate::bits::full_mask(base) != 0 {
                return Err(Error::OutOfRange(format!("entry ({y:#b}, {w:#b}) outside the table")));
            }
            if map.insert((y, w), f.bits()).is_some() {
                return Err(Error::OutOfRange(format!("duplicate entry ({y:#b}, {w:#b})")));
            }
        }
        let expected: u64 = (0..=size.min(base))
            .map(|j| binomial(base, j) << j)
            .sum();
        if map.len() as u64 != expected {
            return Err(Error::OutOfRange(format!(
                "{} entries, a total table has {expected}",
                map.len()
            )));
        }
        Ok(LabeledDecoder { base, size, entries: map })
    }

    /// Entries ordered by kept set (cardinality, then mask), then kept values.
    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), BooleanFunction)> + '_ {
        let mut keys: Vec<(u32, u32)> = self.entries.keys().copied().collect();
        keys.sort_unstable_by_key(|&(y, w)| (popcount(y), y, w));
        keys.into_iter().map(|k| (k, BooleanFunction::raw(self.base, self.entries[&k])))
    }

    /// Ignores the kept values and decodes as `d` does.
    pub fn from_unlabeled(d: &UnlabeledDecoder) -> Self {
        LabeledDecoder::from_fn(d.base, d.size, |y, _| d.get(y).expect("total"))
            .expect("same base")
    }

    pub fn base_size(&self) -> usize {
        self.base
    }

    pub fn size_bound(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, kept: u32, values: u32) -> Option<BooleanFunction> {
        self.entries.get(&(kept, values & kept)).map(|b| BooleanFunction::raw(self.base, *b))
    }

    pub fn compress(&self, g: &PartialFunction) -> Option<u32> {
        subsets_up_to(g.domain(), self.size).find(|y| {
            self.entries
                .get(&(*y, g.values() & y))
                .is_some_and(|f| f & g.domain() == g.values())
        })
    }
}
