//! DIMACS encoding of the unlabeled decision problem.
//!
//! Variable `x[Y, f]` means "decode(Y) = f". Entries `Y` are numbered in
//! (cardinality, mask) order, functions `f` ascending, so
//! `id = index(Y) * 2^n + f + 1`. Each entry gets an at-least-one clause and
//! pairwise at-most-one clauses; each sample `g` gets the disjunction of
//! `x[Y, f]` over `Y ⊆ dom(g)`, `|Y| <= k`, `f` extending `g`.

use std::fmt::Write as _;

use varisat::dimacs::{write_dimacs_clauses, DimacsParser};
use varisat::{CnfFormula, ExtendFormula, Lit, Solver};

use crate::bits::{format_set, full_mask, popcount, subsets_up_to};
use crate::error::{Error, Result};
use crate::family::{BooleanFunction, Family};
use crate::scheme::UnlabeledDecoder;

use super::{check_instance, samples};

/// Default cap on variables plus literal occurrences.
pub const DEFAULT_CNF_BUDGET: usize = 50_000_000;

#[derive(Debug)]
pub struct CnfInstance {
    pub base: usize,
    pub size: usize,
    pub max_sample: Option<usize>,
    entries: Vec<u32>,
    formula: CnfFormula,
}

pub fn export_cnf(
    f: &Family,
    k: usize,
    max_sample: Option<usize>,
    budget: usize,
) -> Result<CnfInstance> {
    check_instance(f, max_sample)?;
    let n = f.base_size();
    let nvals = 1usize << n;
    let entries: Vec<u32> = subsets_up_to(full_mask(n), k).collect();
    let nvars = entries.len() * nvals;
    let samples = samples(f, max_sample);
    let amo = entries.len() * nvals * (nvals - 1);
    let per_sample: usize = samples
        .iter()
        .map(|(s, _)| {
            let ys = subsets_up_to(*s, k).count();
            ys << (n - popcount(*s))
        })
        .sum();
    let cost = nvars + amo + nvars + per_sample;
    if cost > budget {
        return Err(Error::TooLarge(format!(
            "cnf needs {cost} variables and literals, budget {budget}"
        )));
    }
    let index: std::collections::HashMap<u32, usize> =
        entries.iter().enumerate().map(|(i, y)| (*y, i)).collect();
    let var = |yi: usize, fv: usize| Lit::from_index(yi * nvals + fv, true);
    let mut formula = CnfFormula::new();
    formula.set_var_count(nvars);
    for yi in 0..entries.len() {
        let alo: Vec<Lit> = (0..nvals).map(|fv| var(yi, fv)).collect();
        formula.add_clause(&alo);
        for a in 0..nvals {
            for b in a + 1..nvals {
                formula.add_clause(&[!var(yi, a), !var(yi, b)]);
            }
        }
    }
    for (s, v) in samples {
        let free = full_mask(n) & !s;
        let mut clause = Vec::new();
        for y in subsets_up_to(s, k) {
            let yi = index[&y];
            for sub in subsets_up_to(free, popcount(free)) {
                clause.push(var(yi, (v | sub) as usize));
            }
        }
        clause.sort_by_key(|l| l.index());
        formula.add_clause(&clause);
    }
    Ok(CnfInstance { base: n, size: k, max_sample, entries, formula })
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.formula.var_count()
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.len()
    }

    /// DIMACS id of `x[Y, f]`.
    pub fn var_id(&self, y: u32, f: u32) -> Option<usize> {
        let yi = self.entries.iter().position(|e| *e == y)?;
        Some(yi * (1 << self.base) + f as usize + 1)
    }

    pub fn to_dimacs(&self) -> String {
        let nvals = 1usize << self.base;
        let mut out = String::new();
        let m = self.max_sample.map_or("-".to_string(), |m| m.to_string());
        writeln!(out, "c ucs base {} size {} max-sample {m}", self.base, self.size).unwrap();
        for (yi, y) in self.entries.iter().enumerate() {
            for fv in 0..nvals {
                let f = BooleanFunction::raw(self.base, fv as u32);
                writeln!(out, "c var {} {} {f}", yi * nvals + fv + 1, format_set(*y)).unwrap();
            }
        }
        writeln!(out, "p cnf {} {}", self.num_vars(), self.num_clauses()).unwrap();
        let mut body = Vec::new();
        write_dimacs_clauses(&mut body, self.formula.iter()).expect("writing to memory");
        out.push_str(&String::from_utf8(body).expect("dimacs is ascii"));
        out
    }

    /// Reads a document written by [`CnfInstance::to_dimacs`]; the header
    /// comment and the variable map must be present and consistent.
    pub fn parse_dimacs(text: &str) -> Result<CnfInstance> {
        let perr = |line: usize, m: String| Error::Parse { line, message: m };
        let mut lines = text.lines().enumerate();
        let (_, head) = lines.next().ok_or_else(|| perr(1, "empty document".into()))?;
        let words: Vec<&str> = head.split(' ').collect();
        let (base, size, max_sample) = match words.as_slice() {
            ["c", "ucs", "base", n, "size", k, "max-sample", m] => {
                let num = |s: &str| s.parse::<usize>().map_err(|e| perr(1, e.to_string()));
                let m = if *m == "-" { None } else { Some(num(m)?) };
                (num(n)?, num(k)?, m)
            }
            _ => return Err(perr(1, format!("unrecognized header `{head}`"))),
        };
        if base > super::MAX_SEARCH_BASE {
            return Err(Error::BaseTooLarge { size: base, max: super::MAX_SEARCH_BASE });
        }
        let nvals = 1usize << base;
        let entries: Vec<u32> = subsets_up_to(full_mask(base), size).collect();
        for (yi, y) in entries.iter().enumerate() {
            for fv in 0..nvals {
                let (i, line) = lines.next().ok_or_else(|| perr(0, "truncated variable map".into()))?;
                let id = yi * nvals + fv + 1;
                let want =
                    format!("c var {id} {} {}", format_set(*y), BooleanFunction::raw(base, fv as u32));
                if line != want {
                    return Err(perr(i + 1, format!("expected `{want}`")));
                }
            }
        }
        let formula = DimacsParser::parse(text.as_bytes()).map_err(|e| perr(0, e.to_string()))?;
        if formula.var_count() != entries.len() * nvals {
            return Err(perr(0, "variable count does not match the map".into()));
        }
        Ok(CnfInstance { base, size, max_sample, entries, formula })
    }

    /// A satisfying assignment (`model[id - 1]`) or `None` when unsatisfiable.
    pub fn solve(&self) -> Result<Option<Vec<bool>>> {
        let mut solver = Solver::new();
        solver.add_formula(&self.formula);
        let sat = solver.solve().map_err(|e| Error::Solver(e.to_string()))?;
        if !sat {
            return Ok(None);
        }
        let mut model = vec![false; self.num_vars()];
        for lit in solver.model().expect("model after SAT") {
            if lit.index() < model.len() {
                model[lit.index()] = lit.is_positive();
            }
        }
        Ok(Some(model))
    }

    /// Each entry's unique true variable, as a decoder.
    pub fn decoder_from_model(&self, model: &[bool]) -> Result<UnlabeledDecoder> {
        let nvals = 1usize << self.base;
        if model.len() != self.num_vars() {
            return Err(Error::Solver(format!(
                "model has {} values, expected {}",
                model.len(),
                self.num_vars()
            )));
        }
        let mut pairs = Vec::with_capacity(self.entries.len());
        for (yi, y) in self.entries.iter().enumerate() {
            let row = &model[yi * nvals..(yi + 1) * nvals];
            let chosen: Vec<usize> = (0..nvals).filter(|f| row[*f]).collect();
            if chosen.len() != 1 {
                return Err(Error::Solver(format!(
                    "entry {} has {} true values",
                    format_set(*y),
                    chosen.len()
                )));
            }
            pairs.push((*y, BooleanFunction::raw(self.base, chosen[0] as u32)));
        }
        UnlabeledDecoder::from_entries(self.base, self.size, pairs)
    }

    /// `true` iff `decoder` satisfies every clause (checked on the formula itself).
    pub fn satisfied_by(&self, decoder: &UnlabeledDecoder) -> bool {
        let nvals = 1usize << self.base;
        let mut model = vec![false; self.num_vars()];
        for (yi, y) in self.entries.iter().enumerate() {
            let f = decoder.get(*y).map(|f| f.bits() as usize).unwrap_or(0);
            model[yi * nvals + f] = true;
        }
        self.formula.iter().all(|c| c.iter().any(|l| model[l.index()] == l.is_positive()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c4, c5, c5_minus, PartialFunction};
    use crate::scheme::{table_to_program, verify, VerifyMode};

    /// The sample clause for `g` as DIMACS ids, for inspection.
    fn sample_clause(cnf: &CnfInstance, g: &PartialFunction) -> Vec<usize> {
        let free = full_mask(cnf.base) & !g.domain();
        let mut ids = Vec::new();
        for y in subsets_up_to(g.domain(), cnf.size) {
            for sub in subsets_up_to(free, popcount(free)) {
                ids.extend(cnf.var_id(y, g.values() | sub));
            }
        }
        ids.sort_unstable();
        ids
    }

    #[test]
    fn c5_k2_counts_and_unsat() {
        let cnf = export_cnf(&c5(), 2, None, DEFAULT_CNF_BUDGET).unwrap();
        assert_eq!(cnf.num_vars(), 512);
        assert!(cnf.solve().unwrap().is_none());
    }

    #[test]
    fn round_trip_and_extract() {
        let cnf = export_cnf(&c5_minus(), 2, None, DEFAULT_CNF_BUDGET).unwrap();
        let text = cnf.to_dimacs();
        let back = CnfInstance::parse_dimacs(&text).unwrap();
        assert_eq!(back.to_dimacs(), text);
        let model = back.solve().unwrap().expect("satisfiable");
        let d = back.decoder_from_model(&model).unwrap();
        assert!(back.satisfied_by(&d));
        let program = table_to_program(d, &c5_minus()).unwrap();
        assert!(verify(&program, &c5_minus(), VerifyMode::Exhaustive).unwrap().valid);
    }

    #[test]
    fn c4_sizes() {
        assert!(export_cnf(&c4(), 1, None, DEFAULT_CNF_BUDGET).unwrap().solve().unwrap().is_none());
        assert!(export_cnf(&c4(), 2, None, DEFAULT_CNF_BUDGET).unwrap().solve().unwrap().is_some());
    }

    #[test]
    fn sample_clause_lists_extensions() {
        let cnf = export_cnf(&c5(), 1, None, DEFAULT_CNF_BUDGET).unwrap();
        let g = PartialFunction::new(5, 0b11111, 0b00101).unwrap();
        // Six entries (empty set and five singletons), one extension each.
        assert_eq!(sample_clause(&cnf, &g).len(), 6);
        assert!(export_cnf(&c5(), 2, None, 10).is_err());
    }

    #[test]
    fn rejects_mismatched_map() {
        let text = export_cnf(&c4(), 1, None, DEFAULT_CNF_BUDGET).unwrap().to_dimacs();
        let bad = text.replacen("c var 1 - 0000", "c var 1 - 1000", 1);
        assert!(matches!(CnfInstance::parse_dimacs(&bad), Err(Error::Parse { line: 2, .. })));
    }
}
