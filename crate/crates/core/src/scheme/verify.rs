//! The definitional check: for every partial function `g` of the family,
//! `compress(g) ⊆ dom(g)`, `|compress(g)| <= k`, and `decode(compress(g))` extends `g`.
//!
//! Samples are processed in parallel; the reported counterexample is the
//! minimum under a fixed order (domain mask, then value bits; draw index in
//! random mode), so reports do not depend on the worker count.
//!
//! Random mode draws sample `i` as follows. Draws are grouped into chunks of
//! [`RANDOM_CHUNK`]; chunk `c` uses `Pcg64::seed_from_u64(seed ^ (c * 0x9E3779B97F4A7C15))`
//! (wrapping multiply). Each draw takes a member index uniformly with
//! `random_range(0..|F|)`, then a domain as `next_u32() & full_mask`.

use std::fmt;

use rand::{Rng, RngExt, SeedableRng};
use rand_pcg::Pcg64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bits::{elements, format_set, full_mask, popcount};
use crate::error::{Error, Result};
use crate::family::{BooleanFunction, Family, PartialFunction};

use super::{LabeledDecoder, SchemeProgram};

pub const RANDOM_CHUNK: u64 = 4096;
const CHUNK_STREAM: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every subset `S` of the base and every trace on it.
    Exhaustive,
    /// Every `S` with `|S| <= m`.
    Bounded(usize),
    /// `samples` draws of (member, subset) from the pinned generator.
    Random { samples: u64, seed: u64 },
    /// Only `S = B`.
    FullDomainOnly,
}

impl VerifyMode {
    /// Parses `exhaustive`, `bounded:<m>`, `random:<N>[:<seed>]` or `full`.
    pub fn parse(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Selector { token: s.to_string(), message: msg.to_string() };
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| -> Result<u64> {
            let t = t.trim();
            match t.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16).map_err(|_| bad("bad number")),
                None => t.parse().map_err(|_| bad("bad number")),
            }
        };
        match parts.as_slice() {
            ["exhaustive"] => Ok(VerifyMode::Exhaustive),
            ["full"] | ["full-domain-only"] => Ok(VerifyMode::FullDomainOnly),
            ["bounded", m] => Ok(VerifyMode::Bounded(num(m)? as usize)),
            ["random", n] => Ok(VerifyMode::Random { samples: num(n)?, seed: 0 }),
            ["random", n, seed] => Ok(VerifyMode::Random { samples: num(n)?, seed: num(seed)? }),
            _ => Err(bad("expected exhaustive, bounded:<m>, random:<N>[:<seed>] or full")),
        }
    }

    fn to_json(self) -> Value {
        match self {
            VerifyMode::Exhaustive => json!({"kind": "exhaustive"}),
            VerifyMode::Bounded(m) => json!({"kind": "bounded", "max_sample": m}),
            VerifyMode::Random { samples, seed } => {
                json!({"kind": "random", "samples": samples, "seed": seed})
            }
            VerifyMode::FullDomainOnly => json!({"kind": "full-domain-only"}),
        }
    }
}

impl fmt::Display for VerifyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyMode::Exhaustive => write!(f, "exhaustive"),
            VerifyMode::Bounded(m) => write!(f, "bounded({m})"),
            VerifyMode::Random { samples, seed } => write!(f, "random({samples}, seed={seed:#x})"),
            VerifyMode::FullDomainOnly => write!(f, "full-domain-only"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// The compressor found no admissible compressed set.
    NoCompression,
    /// The compressed set leaves the sample's domain.
    NotSubset,
    /// The compressed set is larger than the size bound.
    TooLarge,
    /// The decoding disagrees with the sample at `violated_point`.
    Mismatch,
}

impl ViolationKind {
    fn as_str(self) -> &'static str {
        match self {
            ViolationKind::NoCompression => "no-compression",
            ViolationKind::NotSubset => "not-subset",
            ViolationKind::TooLarge => "too-large",
            ViolationKind::Mismatch => "mismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub sample: PartialFunction,
    pub kind: ViolationKind,
    pub compressed: Option<u32>,
    pub decoded: Option<BooleanFunction>,
    pub violated_point: Option<usize>,
}

impl Counterexample {
    fn diagnose(
        sample: &PartialFunction,
        compressed: Option<u32>,
        size_bound: usize,
        decode: impl FnOnce(u32) -> BooleanFunction,
    ) -> std::result::Result<usize, Counterexample> {
        let mut cx = Counterexample {
            sample: *sample,
            kind: ViolationKind::NoCompression,
            compressed,
            decoded: None,
            violated_point: None,
        };
        let Some(y) = compressed else { return Err(cx) };
        if y & !sample.domain() != 0 {
            cx.kind = ViolationKind::NotSubset;
            return Err(cx);
        }
        if popcount(y) > size_bound {
            cx.kind = ViolationKind::TooLarge;
            return Err(cx);
        }
        let f = decode(y);
        let wrong = (f.bits() ^ sample.values()) & sample.domain();
        if wrong != 0 {
            cx.kind = ViolationKind::Mismatch;
            cx.decoded = Some(f);
            cx.violated_point = Some(wrong.trailing_zeros() as usize);
            return Err(cx);
        }
        Ok(popcount(y))
    }

    /// Re-runs `scheme` on the stored sample and confirms the same genuine violation.
    pub fn recheck(&self, scheme: &dyn SchemeProgram) -> bool {
        let y = scheme.compress(&self.sample);
        let again = Counterexample::diagnose(&self.sample, y, scheme.size_bound(), |y| {
            scheme.decode(y)
        });
        again.as_ref().err() == Some(self) && self.is_violation(scheme.size_bound())
    }

    /// Like [`recheck`](Self::recheck) for a labeled decoder.
    pub fn recheck_labeled(&self, decoder: &LabeledDecoder) -> bool {
        let y = decoder.compress(&self.sample);
        let again = Counterexample::diagnose(&self.sample, y, decoder.size_bound(), |y| {
            decoder.get(y, self.sample.values()).expect("total")
        });
        again.as_ref().err() == Some(self) && self.is_violation(decoder.size_bound())
    }

    /// The stored data by itself demonstrates a violation.
    fn is_violation(&self, size_bound: usize) -> bool {
        match self.kind {
            ViolationKind::NoCompression => self.compressed.is_none(),
            ViolationKind::NotSubset => {
                self.compressed.is_some_and(|y| y & !self.sample.domain() != 0)
            }
            ViolationKind::TooLarge => self.compressed.is_some_and(|y| popcount(y) > size_bound),
            ViolationKind::Mismatch => match (self.decoded, self.violated_point) {
                (Some(f), Some(x)) => {
                    self.sample.domain() >> x & 1 == 1
                        && (f.bits() >> x & 1) != (self.sample.values() >> x & 1)
                }
                _ => false,
            },
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "sample": self.sample.to_string(),
            "kind": self.kind.as_str(),
            "compressed": self.compressed.map(elements),
            "decoded": self.decoded.map(|f| f.to_string()),
            "violated_point": self.violated_point,
        })
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sample {} ({})", self.sample, self.kind.as_str())?;
        if let Some(y) = self.compressed {
            write!(f, ", compressed {{{}}}", format_set(y))?;
        }
        if let Some(d) = self.decoded {
            write!(f, ", decoded {d}")?;
        }
        if let Some(x) = self.violated_point {
            write!(f, ", wrong at {x}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub mode: VerifyMode,
    pub checked: u64,
    pub max_compressed_size: usize,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid,
            "mode": self.mode.to_json(),
            "checked": self.checked,
            "max_compressed_size": self.max_compressed_size,
            "counterexample": self.counterexample.as_ref().map(Counterexample::to_json),
        })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "mode: {}", self.mode)?;
        writeln!(f, "checked: {}", self.checked)?;
        write!(f, "max compressed size: {}", self.max_compressed_size)?;
        if let Some(cx) = &self.counterexample {
            write!(f, "\ncounterexample: {cx}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    max_size: usize,
    first: Option<(u64, Counterexample)>,
}

impl Tally {
    fn record(&mut self, key: u64, outcome: std::result::Result<usize, Counterexample>) {
        self.checked += 1;
        match outcome {
            Ok(size) => self.max_size = self.max_size.max(size),
            Err(cx) => {
                if self.first.as_ref().is_none_or(|(k, _)| key < *k) {
                    self.first = Some((key, cx));
                }
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.max_size = self.max_size.max(other.max_size);
        if let Some((k, cx)) = other.first {
            if self.first.as_ref().is_none_or(|(mine, _)| k < *mine) {
                self.first = Some((k, cx));
            }
        }
        self
    }

    fn into_report(self, mode: VerifyMode) -> VerificationReport {
        let counterexample = self.first.map(|(_, cx)| cx);
        VerificationReport {
            valid: counterexample.is_none(),
            mode,
            checked: self.checked,
            max_compressed_size: self.max_size,
            counterexample,
        }
    }
}

fn run<C>(family: &Family, mode: VerifyMode, check: C) -> VerificationReport
where
    C: Fn(&PartialFunction) -> std::result::Result<usize, Counterexample> + Sync,
{
    let n = family.base_size();
    let full = full_mask(n);
    let per_subset = |s: u32| {
        let mut tally = Tally::default();
        for v in family.trace_values(s) {
            let g = PartialFunction::raw(n, s, v);
            let key = ((s as u64) << 32) | v as u64;
            tally.record(key, check(&g));
        }
        tally
    };
    let tally = match mode {
        VerifyMode::FullDomainOnly => per_subset(full),
        VerifyMode::Exhaustive | VerifyMode::Bounded(_) => {
            let limit = match mode {
                VerifyMode::Bounded(m) => m,
                _ => n,
            };
            (0..full as usize + 1)
                .into_par_iter()
                .with_min_len(256)
                .map(|s| s as u32)
                .filter(|s| popcount(*s) <= limit)
                .fold(Tally::default, |acc, s| acc.merge(per_subset(s)))
                .reduce(Tally::default, Tally::merge)
        }
        VerifyMode::Random { samples, seed } => {
            let chunks = samples.div_ceil(RANDOM_CHUNK);
            let members = family.bit_vectors();
            (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = Pcg64::seed_from_u64(seed ^ c.wrapping_mul(CHUNK_STREAM));
                    let mut tally = Tally::default();
                    let start = c * RANDOM_CHUNK;
                    let end = (start + RANDOM_CHUNK).min(samples);
                    for i in start..end {
                        let f = members[rng.random_range(0..members.len())];
                        let s = rng.next_u32() & full;
                        let g = PartialFunction::raw(n, s, f & s);
                        tally.record(i, check(&g));
                    }
                    tally
                })
                .reduce(Tally::default, Tally::merge)
        }
    };
    tally.into_report(mode)
}

/// Checks an unlabeled scheme against every sample selected by `mode`.
pub fn verify(
    scheme: &dyn SchemeProgram,
    family: &Family,
    mode: VerifyMode,
) -> Result<VerificationReport> {
    if scheme.base_size() != family.base_size() {
        return Err(Error::BaseMismatch {
            expected: family.base_size(),
            found: scheme.base_size(),
        });
    }
    let k = scheme.size_bound();
    Ok(run(family, mode, |g| {
        Counterexample::diagnose(g, scheme.compress(g), k, |y| scheme.decode(y))
    }))
}

/// Every violating sample, in verification order. Intended for small bases.
pub fn all_violations(scheme: &dyn SchemeProgram, family: &Family) -> Result<Vec<Counterexample>> {
    if scheme.base_size() != family.base_size() {
        return Err(Error::BaseMismatch {
            expected: family.base_size(),
            found: scheme.base_size(),
        });
    }
    if family.base_size() > 16 {
        return Err(Error::BaseTooLarge { size: family.base_size(), max: 16 });
    }
    let k = scheme.size_bound();
    let mut out = Vec::new();
    for s in 0..=full_mask(family.base_size()) {
        for v in family.trace_values(s) {
            let g = PartialFunction::raw(family.base_size(), s, v);
            if let Err(cx) = Counterexample::diagnose(&g, scheme.compress(&g), k, |y| scheme.decode(y)) {
                out.push(cx);
            }
        }
    }
    Ok(out)
}

/// Checks a labeled decoder: the compressed object is `g|_Y` for the first
/// admissible `Y`.
pub fn verify_labeled(
    decoder: &LabeledDecoder,
    family: &Family,
    mode: VerifyMode,
) -> Result<VerificationReport> {
    if decoder.base_size() != family.base_size() {
        return Err(Error::BaseMismatch {
            expected: family.base_size(),
            found: decoder.base_size(),
        });
    }
    let k = decoder.size_bound();
    Ok(run(family, mode, |g| {
        Counterexample::diagnose(g, decoder.compress(g), k, |y| {
            decoder.get(y, g.values()).expect("labeled decoder is total")
        })
    }))
}
