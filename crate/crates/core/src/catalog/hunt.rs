//! Catalog records and the gap hunt.

use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{canonical_form, vc_dimension, BooleanFunction, Family};
use crate::search::{decide_ucs, Decision, SearchOptions};

use super::Candidates;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Lower,
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UcsStatus {
    pub status: Status,
    pub value: usize,
}

/// One line of a catalog file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogRecord {
    /// Hex canonical form.
    pub canon: String,
    pub n: usize,
    pub functions: Vec<String>,
    pub vc: usize,
    pub ucs: UcsStatus,
    pub gap: Option<usize>,
    pub nodes: u64,
}

impl CatalogRecord {
    pub fn family(&self) -> Result<Family> {
        let fs = self
            .functions
            .iter()
            .map(|s| BooleanFunction::parse(s))
            .collect::<Result<Vec<_>>>()?;
        Family::from_functions(fs, None)
    }

    /// Recomputes the canonical form and vc-dimension from the stored functions.
    pub fn recheck(&self) -> Result<bool> {
        let f = self.family()?;
        let gap_ok = match self.ucs.status {
            Status::Exact => self.gap == Some(self.ucs.value - self.vc),
            _ => self.gap.is_none(),
        };
        Ok(canonical_form(&f)?.to_hex() == self.canon && vc_dimension(&f) == self.vc && gap_ok)
    }
}

/// Searches `k = vc, vc+1, ...` until a scheme is found or the budget stops it.
/// Sizes at which keeping all 1's or all 0's already works are not searched.
pub fn assess(f: &Family, opts: &SearchOptions) -> Result<CatalogRecord> {
    let vc = vc_dimension(f);
    let trivial = f.max_weight().min(f.max_coweight());
    let mut nodes = 0;
    let mut k = vc;
    let ucs = loop {
        if k >= trivial {
            break UcsStatus { status: Status::Exact, value: k };
        }
        let r = decide_ucs(f, k, opts)?;
        nodes += r.stats.nodes;
        match r.decision {
            Decision::Found => break UcsStatus { status: Status::Exact, value: k },
            Decision::Refuted => k += 1,
            Decision::Indeterminate if k == vc => {
                break UcsStatus { status: Status::Indeterminate, value: vc }
            }
            Decision::Indeterminate => break UcsStatus { status: Status::Lower, value: k },
        }
    };
    Ok(CatalogRecord {
        canon: canonical_form(f)?.to_hex(),
        n: f.base_size(),
        functions: f.functions().map(|g| g.to_string()).collect(),
        vc,
        gap: (ucs.status == Status::Exact).then(|| ucs.value - vc),
        ucs,
        nodes,
    })
}

/// Reads a catalog file; errors name the first malformed line.
pub fn read_catalog(text: &str) -> Result<Vec<CatalogRecord>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, message: e.to_string() })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct HuntOptions {
    pub enumeration_budget: u64,
    pub search: SearchOptions,
    /// Candidates assessed concurrently.
    pub workers: usize,
    pub resume: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntSummary {
    pub candidates: usize,
    pub skipped: usize,
    pub written: usize,
    pub gaps: usize,
    pub enumeration_nodes: u64,
    pub exhausted: bool,
    /// First unvisited member list when the enumeration budget ran out.
    pub cursor: Option<Vec<u32>>,
}

const BATCH: usize = 64;

/// Enumerates the maximal families at `(n, d)` and appends one record per
/// new candidate to `out`. Records appear in enumeration order whatever the
/// worker count.
pub fn gap_hunt(n: usize, d: usize, out: &Path, opts: &HuntOptions) -> Result<HuntSummary> {
    let existing = match std::fs::read_to_string(out) {
        Ok(text) => text,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => String::new(),
        Err(e) => return Err(e.into()),
    };
    if !existing.trim().is_empty() && !opts.resume {
        return Err(Error::Io(format!(
            "{} is not empty; pass resume to continue it",
            out.display()
        )));
    }
    let present: HashSet<String> = read_catalog(&existing)?.into_iter().map(|r| r.canon).collect();
    let mut file = OpenOptions::new().create(true).append(true).open(out)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let mut stream = Candidates::new(n, d, opts.enumeration_budget, None)?;
    let mut summary = HuntSummary {
        candidates: 0,
        skipped: 0,
        written: 0,
        gaps: 0,
        enumeration_nodes: 0,
        exhausted: false,
        cursor: None,
    };
    loop {
        let mut batch = Vec::with_capacity(BATCH);
        for f in stream.by_ref() {
            summary.candidates += 1;
            if present.contains(&canonical_form(&f)?.to_hex()) {
                summary.skipped += 1;
                continue;
            }
            batch.push(f);
            if batch.len() == BATCH {
                break;
            }
        }
        if batch.is_empty() {
            break;
        }
        let records: Vec<CatalogRecord> = pool.install(|| {
            batch.par_iter().map(|f| assess(f, &opts.search)).collect::<Result<_>>()
        })?;
        for r in records {
            let mut line = serde_json::to_string(&r).expect("records serialize");
            line.push('\n');
            file.write_all(line.as_bytes())?;
            file.flush()?;
            summary.written += 1;
            summary.gaps += usize::from(r.gap.is_some_and(|g| g > 0));
        }
    }
    summary.enumeration_nodes = stream.nodes();
    summary.exhausted = stream.exhausted();
    summary.cursor = stream.cursor().map(<[u32]>::to_vec);
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c4, c5};

    #[test]
    fn c5_record() {
        let r = assess(&c5(), &SearchOptions::default()).unwrap();
        assert_eq!((r.vc, r.ucs, r.gap), (2, UcsStatus { status: Status::Exact, value: 3 }, Some(1)));
        assert!(r.recheck().unwrap());
        let line = serde_json::to_string(&r).unwrap();
        assert!(line.starts_with("{\"canon\":"));
        assert_eq!(read_catalog(&line).unwrap(), vec![r]);
    }

    #[test]
    fn c4_has_no_gap() {
        let r = assess(&c4(), &SearchOptions::default()).unwrap();
        assert_eq!(r.gap, Some(0));
    }

    #[test]
    fn tiny_budget_is_not_exact() {
        let r = assess(&c5(), &SearchOptions::default().with_node_budget(1)).unwrap();
        assert_eq!(r.ucs.status, Status::Indeterminate);
        assert_eq!(r.gap, None);
    }

    #[test]
    fn corrupt_line_is_reported() {
        let err = read_catalog("\n{\"canon\"").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
