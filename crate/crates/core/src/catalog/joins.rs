//! Bounds on the unlabeled compression size of joins of builtin families.

use serde::Serialize;

use crate::error::Result;
use crate::family::{join, vc_dimension, Family};
use crate::scheme::{verify, VerifyMode};
use crate::search::{decide_ucs, Decision, SearchOptions, MAX_SEARCH_BASE};
use crate::select::{best_scheme, parse_family};

use super::hunt::{Status, UcsStatus};

/// Largest base on which certificates are verified on every partial function.
const EXHAUSTIVE_CERTIFICATE_BASE: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// A constructed scheme passed verification.
    Certificate,
    Search,
    /// The base is too large for the search engine.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinAttempt {
    pub k: usize,
    pub outcome: String,
    pub method: Method,
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JoinRecord {
    pub family: String,
    pub n: usize,
    pub vc: usize,
    pub attempts: Vec<JoinAttempt>,
    pub lower: usize,
    pub upper: Option<usize>,
    pub ucs: UcsStatus,
}

/// Tries `k = vc, .., k_bound` on `f` and records what was settled.
pub fn bound_join(f: &Family, k_bound: usize, opts: &SearchOptions) -> Result<JoinRecord> {
    let vc = vc_dimension(f);
    let cert = best_scheme(f)?;
    let mode = if f.base_size() <= EXHAUSTIVE_CERTIFICATE_BASE {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Bounded(cert.size_bound())
    };
    let mut attempts = Vec::new();
    let mut lower = vc;
    let mut upper = None;
    for k in vc..=k_bound {
        let attempt = if cert.size_bound() <= k && verify(cert.as_ref(), f, mode)?.valid {
            JoinAttempt { k, outcome: Decision::Found.to_string(), method: Method::Certificate, nodes: 0 }
        } else if f.base_size() > MAX_SEARCH_BASE {
            JoinAttempt {
                k,
                outcome: Decision::Indeterminate.to_string(),
                method: Method::Skipped,
                nodes: 0,
            }
        } else {
            let r = decide_ucs(f, k, opts)?;
            if r.decision == Decision::Refuted {
                lower = k + 1;
            }
            JoinAttempt {
                k,
                outcome: r.decision.to_string(),
                method: Method::Search,
                nodes: r.stats.nodes,
            }
        };
        let found = attempt.outcome == Decision::Found.to_string();
        attempts.push(attempt);
        if found {
            upper = Some(k);
            break;
        }
    }
    let status = if upper == Some(lower) { Status::Exact } else { Status::Lower };
    Ok(JoinRecord {
        family: f.display_name(),
        n: f.base_size(),
        vc,
        attempts,
        lower,
        upper,
        ucs: UcsStatus { status, value: lower },
    })
}

/// Every join `a * b` with `a` no later than `b` in `names`.
pub fn candidate_joins(
    names: &[&str],
    k_bound: usize,
    opts: &SearchOptions,
) -> Result<Vec<JoinRecord>> {
    let families = names.iter().map(|n| parse_family(n)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (i, a) in families.iter().enumerate() {
        for b in &families[i..] {
            out.push(bound_join(&join(a, b)?, k_bound, opts)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w6_with_a_point_is_exact() {
        let f = parse_family("join:w6,p:1").unwrap();
        let r = bound_join(&f, 4, &SearchOptions::default()).unwrap();
        assert_eq!(r.ucs, UcsStatus { status: Status::Exact, value: 3 });
        assert_eq!(r.attempts[0].method, Method::Certificate);
    }

    #[test]
    fn c5_pair_upper_bound_from_certificate() {
        let f = parse_family("join:c5,c5").unwrap();
        let opts = SearchOptions::default().with_node_budget(2);
        let r = bound_join(&f, 5, &opts).unwrap();
        assert_eq!(r.upper, Some(5));
        assert_eq!(r.attempts.last().unwrap().method, Method::Certificate);
        assert_eq!(r.attempts[0].outcome, "INDETERMINATE");
        assert_eq!(r.ucs, UcsStatus { status: Status::Lower, value: 4 });
    }
}
