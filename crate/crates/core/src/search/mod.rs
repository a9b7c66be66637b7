//! Exact decision procedures for scheme existence.
//!
//! [`decide_ucs`] asks whether a total decoder on base subsets of size `<= k`
//! exists such that every sample of the family has a kept subset decoding to an
//! extension. [`decide_lcs`] asks the same for labeled decoders. Both run the
//! backtracking engine from `engine`: one clause per partial function, unit
//! propagation, most-constrained clause branching.
//!
//! Default budgets: [`DEFAULT_NODE_BUDGET`] nodes, no time limit, one thread.

mod cnf;
mod engine;

use std::fmt;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::bits::{extract, format_set, full_mask, popcount, subsets_up_to};
use crate::error::{Error, Result};
use crate::family::{automorphisms, symmetry_apply, vc_dimension, Family};
use crate::scheme::{
    verify, verify_labeled, LabeledDecoder, UnlabeledDecoder, VerifyMode,
};

pub use cnf::{export_cnf, CnfInstance, DEFAULT_CNF_BUDGET};

use engine::{Clause, Instance, Limits, Outcome};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Largest base the engine accepts (domains are bitsets over `2^n` functions).
pub const MAX_SEARCH_BASE: usize = 16;

/// Upper limit on clause storage, in 64-bit words.
const MAX_CLAUSE_WORDS: usize = 1 << 25;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Only samples with at most this many points are constrained.
    pub max_sample: Option<usize>,
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
    /// Worker threads for the root branches; 1 runs inline.
    pub threads: usize,
    /// Restrict the decoding of the empty set to orbit minima under the family's automorphisms.
    pub symmetry: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_sample: None,
            node_budget: DEFAULT_NODE_BUDGET,
            time_budget: None,
            threads: 1,
            symmetry: false,
        }
    }
}

impl SearchOptions {
    pub fn with_max_sample(mut self, m: Option<usize>) -> Self {
        self.max_sample = m;
        self
    }

    pub fn with_node_budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn with_time_budget(mut self, limit: Option<Duration>) -> Self {
        self.time_budget = limit;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Found,
    /// The search space was exhausted without a decoder.
    Refuted,
    /// A budget ran out first.
    Indeterminate,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Found => "FOUND",
            Decision::Refuted => "NONE",
            Decision::Indeterminate => "INDETERMINATE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Unlabeled(UnlabeledDecoder),
    Labeled(LabeledDecoder),
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
    pub variables: usize,
    pub clauses: usize,
    pub wall_time: Duration,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub decision: Decision,
    pub certificate: Option<Certificate>,
    pub stats: SearchStats,
    pub family: String,
    pub size: usize,
    pub max_sample: Option<usize>,
    pub labeled: bool,
    pub node_budget: u64,
    pub time_budget: Option<Duration>,
}

impl SearchResult {
    pub fn is_found(&self) -> bool {
        self.decision == Decision::Found
    }

    pub fn unlabeled(&self) -> Option<&UnlabeledDecoder> {
        match &self.certificate {
            Some(Certificate::Unlabeled(d)) => Some(d),
            _ => None,
        }
    }

    pub fn labeled_decoder(&self) -> Option<&LabeledDecoder> {
        match &self.certificate {
            Some(Certificate::Labeled(d)) => Some(d),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "problem": if self.labeled { "lcs" } else { "ucs" },
            "family": self.family,
            "size": self.size,
            "max_sample": self.max_sample,
            "decision": self.decision.to_string(),
            "nodes": self.stats.nodes,
            "propagations": self.stats.propagations,
            "variables": self.stats.variables,
            "clauses": self.stats.clauses,
            "wall_time_ms": self.stats.wall_time.as_millis() as u64,
            "node_budget": self.node_budget,
            "time_budget_ms": self.time_budget.map(|t| t.as_millis() as u64),
        })
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} size {}{}: {} ({} nodes, {} propagations, {:.3}s)",
            if self.labeled { "lcs" } else { "ucs" },
            self.family,
            self.size,
            self.max_sample.map(|m| format!(" max-sample {m}")).unwrap_or_default(),
            self.decision,
            self.stats.nodes,
            self.stats.propagations,
            self.stats.wall_time.as_secs_f64(),
        )?;
        if self.decision == Decision::Indeterminate {
            write!(f, " [node budget {}", self.node_budget)?;
            if let Some(t) = self.time_budget {
                write!(f, ", time budget {:.1}s", t.as_secs_f64())?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Values of the empty-set entry worth trying: minima of their orbit under the
/// base permutations preserving `f`. Without automorphisms every value is kept.
pub fn symmetry_fix(f: &Family) -> Result<Vec<u32>> {
    let n = f.base_size();
    let all = 0..1u32 << n;
    let group = match automorphisms(f) {
        Ok(g) => g,
        Err(Error::BaseTooLarge { .. }) => return Ok(all.collect()),
        Err(e) => return Err(e),
    };
    Ok(all.filter(|&v| group.iter().all(|s| symmetry_apply(v, s) >= v)).collect())
}

fn check_instance(f: &Family, m: Option<usize>) -> Result<()> {
    let n = f.base_size();
    if n > MAX_SEARCH_BASE {
        return Err(Error::BaseTooLarge { size: n, max: MAX_SEARCH_BASE });
    }
    if let Some(m) = m {
        if m > n {
            return Err(Error::OutOfRange(format!("max sample {m} exceeds base size {n}")));
        }
    }
    Ok(())
}

/// Partial functions `(domain, values)` constrained by the search, ascending.
fn samples(f: &Family, m: Option<usize>) -> Vec<(u32, u32)> {
    let n = f.base_size();
    let limit = m.unwrap_or(n);
    let mut out = Vec::new();
    for s in 0..=full_mask(n) {
        if popcount(s) > limit {
            continue;
        }
        let mut vals = f.trace_values(s);
        vals.sort_unstable();
        vals.dedup();
        out.extend(vals.into_iter().map(|v| (s, v)));
    }
    out
}

fn clause_budget(n: usize, clauses: usize) -> Result<()> {
    let words = (1usize << n).div_ceil(64);
    if clauses.saturating_mul(words) > MAX_CLAUSE_WORDS {
        return Err(Error::TooLarge(format!("{clauses} clauses over 2^{n} functions")));
    }
    Ok(())
}

/// Decoder entries in (cardinality, mask) order with a dense index over all subsets.
struct Entries {
    keys: Vec<u32>,
    offset: Vec<u32>,
}

impl Entries {
    fn new(n: usize, k: usize, labeled: bool) -> Self {
        let keys: Vec<u32> = subsets_up_to(full_mask(n), k).collect();
        let mut offset = vec![u32::MAX; 1 << n];
        let mut next = 0u32;
        for &y in &keys {
            offset[y as usize] = next;
            next += if labeled { 1 << popcount(y) } else { 1 };
        }
        Entries { keys, offset }
    }

    fn var(&self, y: u32, values: u32, labeled: bool) -> u32 {
        let base = self.offset[y as usize];
        if labeled { base + extract(values, y) } else { base }
    }
}

fn build(f: &Family, k: usize, opts: &SearchOptions, labeled: bool) -> Result<(Instance, Entries)> {
    check_instance(f, opts.max_sample)?;
    let n = f.base_size();
    let entries = Entries::new(n, k, labeled);
    let nvars = entries
        .keys
        .iter()
        .map(|y| if labeled { 1usize << popcount(*y) } else { 1 })
        .sum();
    let samples = samples(f, opts.max_sample);
    clause_budget(n, samples.len())?;
    let clauses = samples
        .into_iter()
        .map(|(s, v)| Clause {
            domain: s,
            values: v,
            vars: subsets_up_to(s, k).map(|y| entries.var(y, v, labeled)).collect(),
        })
        .collect();
    let mut inst = Instance::new(n, nvars, clauses);
    if opts.symmetry {
        inst.restrict_initial(0, symmetry_fix(f)?);
    }
    Ok((inst, entries))
}

fn limits(opts: &SearchOptions, start: Instant) -> Limits {
    Limits {
        nodes: opts.node_budget,
        deadline: opts.time_budget.map(|t| start + t),
        threads: opts.threads.max(1),
    }
}

fn decide(f: &Family, k: usize, opts: &SearchOptions, labeled: bool) -> Result<SearchResult> {
    let start = Instant::now();
    let (inst, entries) = build(f, k, opts, labeled)?;
    let (outcome, st) = engine::solve(&inst, &limits(opts, start));
    let n = f.base_size();
    let (decision, certificate) = match outcome {
        Outcome::Found(sol) => {
            let cert = if labeled {
                Certificate::Labeled(LabeledDecoder::from_fn(n, k, |y, w| {
                    crate::family::BooleanFunction::raw(n, sol[entries.var(y, w, true) as usize])
                })?)
            } else {
                Certificate::Unlabeled(UnlabeledDecoder::from_entries(
                    n,
                    k,
                    entries.keys.iter().map(|&y| {
                        (y, crate::family::BooleanFunction::raw(n, sol[entries.var(y, 0, false) as usize]))
                    }),
                )?)
            };
            check_certificate(f, &cert, opts.max_sample)?;
            (Decision::Found, Some(cert))
        }
        Outcome::Exhausted => (Decision::Refuted, None),
        Outcome::OutOfBudget => (Decision::Indeterminate, None),
    };
    Ok(SearchResult {
        decision,
        certificate,
        stats: SearchStats {
            nodes: st.nodes,
            propagations: st.propagations,
            variables: inst.nvars,
            clauses: inst.clauses.len(),
            wall_time: start.elapsed(),
        },
        family: f.display_name(),
        size: k,
        max_sample: opts.max_sample,
        labeled,
        node_budget: opts.node_budget,
        time_budget: opts.time_budget,
    })
}

fn check_certificate(f: &Family, cert: &Certificate, m: Option<usize>) -> Result<()> {
    let mode = m.map_or(VerifyMode::Exhaustive, VerifyMode::Bounded);
    let report = match cert {
        Certificate::Unlabeled(d) => {
            let program = crate::scheme::table_to_program(d.clone(), f)?;
            verify(&program, f, mode)?
        }
        Certificate::Labeled(d) => verify_labeled(d, f, mode)?,
    };
    if report.valid {
        Ok(())
    } else {
        Err(Error::Solver(format!("search certificate failed verification: {report}")))
    }
}

/// Is there an unlabeled scheme of size `<= k`?
pub fn decide_ucs(f: &Family, k: usize, opts: &SearchOptions) -> Result<SearchResult> {
    decide(f, k, opts, false)
}

/// Is there a labeled scheme of size `<= k`?
pub fn decide_lcs(f: &Family, k: usize, opts: &SearchOptions) -> Result<SearchResult> {
    decide(f, k, opts, true)
}

/// Least `k` with a FOUND decision, plus every run made on the way.
/// Unlabeled runs start at the vc-dimension, labeled runs at 0.
pub fn exact_search(
    f: &Family,
    labeled: bool,
    opts: &SearchOptions,
) -> Result<(usize, Vec<SearchResult>)> {
    let start = if labeled { 0 } else { vc_dimension(f) };
    let mut runs = Vec::new();
    for k in start..=f.base_size() {
        let r = decide(f, k, opts, labeled)?;
        let decision = r.decision;
        let r_text = r.to_string();
        runs.push(r);
        match decision {
            Decision::Found => return Ok((k, runs)),
            Decision::Refuted => {}
            Decision::Indeterminate => return Err(Error::Budget(r_text)),
        }
    }
    Err(Error::Solver(format!(
        "no scheme of size <= {} found for {}",
        f.base_size(),
        format_set(f.base_mask())
    )))
}

pub fn ucs_exact(f: &Family, opts: &SearchOptions) -> Result<usize> {
    exact_search(f, false, opts).map(|(k, _)| k)
}

pub fn lcs_exact(f: &Family, opts: &SearchOptions) -> Result<usize> {
    exact_search(f, true, opts).map(|(k, _)| k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c4, c5, c5_minus, p, w6};

    fn opts() -> SearchOptions {
        SearchOptions::default()
    }

    #[test]
    fn small_decisions() {
        assert_eq!(decide_ucs(&c5(), 2, &opts()).unwrap().decision, Decision::Refuted);
        assert_eq!(decide_ucs(&c5(), 3, &opts()).unwrap().decision, Decision::Found);
        assert_eq!(decide_ucs(&c5_minus(), 2, &opts()).unwrap().decision, Decision::Found);
        assert_eq!(decide_ucs(&c4(), 1, &opts()).unwrap().decision, Decision::Refuted);
        assert_eq!(ucs_exact(&c4(), &opts()).unwrap(), 2);
        assert_eq!(lcs_exact(&p(2).unwrap(), &opts()).unwrap(), 1);
        assert_eq!(ucs_exact(&p(2).unwrap(), &opts()).unwrap(), 2);
    }

    #[test]
    fn max_sample_three_still_refutes() {
        let r = decide_ucs(&c5(), 2, &opts().with_max_sample(Some(3))).unwrap();
        assert_eq!(r.decision, Decision::Refuted);
    }

    #[test]
    fn budget_gives_indeterminate() {
        let r = decide_ucs(&w6(), 2, &opts().with_node_budget(3)).unwrap();
        assert_eq!(r.decision, Decision::Indeterminate);
        assert!(r.to_string().contains("node budget 3"));
    }

    #[test]
    fn single_function_lcs_is_zero() {
        let f = Family::from_bits(3, [5], None).unwrap();
        assert_eq!(lcs_exact(&f, &opts()).unwrap(), 0);
    }

    #[test]
    fn threads_do_not_change_results() {
        for (f, k) in [(c5(), 2), (c5(), 3), (c5_minus(), 2)] {
            let a = decide_ucs(&f, k, &opts()).unwrap();
            let b = decide_ucs(&f, k, &opts().with_threads(4)).unwrap();
            assert_eq!(a.decision, b.decision);
            assert_eq!(a.certificate, b.certificate);
            assert_eq!(a.stats.nodes, b.stats.nodes);
        }
    }

    #[test]
    fn symmetry_fix_keeps_decisions() {
        for f in [c5(), c4(), c5_minus(), p(2).unwrap()] {
            let vc = vc_dimension(&f);
            for k in [vc, vc + 1] {
                let a = decide_ucs(&f, k, &opts()).unwrap();
                let b = decide_ucs(&f, k, &opts().with_symmetry(true)).unwrap();
                assert_eq!(a.decision, b.decision, "{} k={k}", f.display_name());
            }
        }
        assert_eq!(symmetry_fix(&Family::from_bits(2, [0, 1], None).unwrap()).unwrap().len(), 4);
    }
}
