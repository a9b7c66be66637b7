//! The `ucs` command line.
//!
//! Exit codes: 0 success (valid, FOUND), 2 a negative answer (invalid, NONE),
//! 3 a budget ran out, 1 any error.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::catalog::{candidate_joins, gap_hunt, HuntOptions};
use crate::error::{Error, Result};
use crate::family::{vc_dimension, write_fam};
use crate::reproduce::{reproduce, ReproOptions};
use crate::scheme::{all_violations, verify, write_decoder, write_labeled_decoder, VerifyMode};
use crate::search::{
    decide_lcs, decide_ucs, exact_search, export_cnf, Certificate, Decision, SearchOptions,
    DEFAULT_CNF_BUDGET, DEFAULT_NODE_BUDGET,
};
use crate::select::{parse_family, parse_scheme};

/// Largest base on which an invalid report lists every violating sample.
const LIST_VIOLATIONS_BASE: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "ucs", version, about = "Compression schemes for finite concept classes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print or save a family; optionally its vc-dimension.
    Family {
        spec: String,
        #[arg(long)]
        vc: bool,
        #[arg(long)]
        info: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Check a compression scheme on a family.
    Verify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        scheme: String,
        /// exhaustive, bounded:<m>, random:<N>[:<seed>] or full
        #[arg(long, default_value = "exhaustive")]
        mode: String,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a scheme of a given size exists.
    Search {
        problem: Problem,
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        max_sample: Option<usize>,
        /// Write the decoder here when one is found.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
    },
    /// Smallest size with a scheme.
    Exact {
        problem: Problem,
        #[arg(long)]
        family: String,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
    },
    /// Write the size-k existence question as DIMACS CNF.
    ExportCnf {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        max_sample: Option<usize>,
        #[arg(short = 'o', long)]
        out: PathBuf,
        /// Cap on variables plus literal occurrences.
        #[arg(long, default_value_t = DEFAULT_CNF_BUDGET)]
        cnf_budget: usize,
    },
    /// Enumerate maximal families on a small base and record their compression sizes.
    Catalog {
        #[arg(long)]
        base: usize,
        #[arg(long)]
        vc: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        resume: bool,
        /// Enumeration nodes, also used as each search's node budget.
        #[arg(long, default_value_t = 1_000_000)]
        node_budget: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        json: bool,
    },
    /// Bound the compression size of pairwise joins.
    Joins {
        /// Family selectors; every pair (with repetition) is joined.
        #[arg(required = true)]
        names: Vec<String>,
        #[arg(long)]
        k_bound: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        json: bool,
    },
    /// Re-derive every headline claim and print a claim-vs-result table.
    Reproduce {
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 1_000_000)]
        random_samples: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Problem {
    Ucs,
    Lcs,
}

#[derive(Args, Debug, Clone)]
struct Budget {
    /// Search nodes before giving up.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Seconds before giving up.
    #[arg(long)]
    time_budget: Option<f64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Fix the empty-set decoding up to automorphisms.
    #[arg(long)]
    symmetry: bool,
}

impl Budget {
    fn options(&self, max_sample: Option<usize>) -> SearchOptions {
        SearchOptions::default()
            .with_node_budget(self.budget)
            .with_threads(self.threads)
            .with_symmetry(self.symmetry)
            .with_max_sample(max_sample)
            .with_time_budget(self.time_budget.map(Duration::from_secs_f64))
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn in_pool<T: Send>(threads: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(pool.install(job))
}

fn decision_code(d: Decision) -> i32 {
    match d {
        Decision::Found => 0,
        Decision::Refuted => 2,
        Decision::Indeterminate => 3,
    }
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Family { spec, vc, info, out, json } => {
            let f = parse_family(&spec)?;
            let d = vc.then(|| vc_dimension(&f));
            if let Some(path) = &out {
                std::fs::write(path, write_fam(&f))?;
            }
            if json {
                print_json(&json!({
                    "name": f.display_name(),
                    "base": f.base_size(),
                    "functions": f.len(),
                    "vc": d,
                    "members": f.functions().map(|g| g.to_string()).collect::<Vec<_>>(),
                }));
            } else if info {
                println!("name {}", f.display_name());
                println!("base {}", f.base_size());
                println!("functions {}", f.len());
                if let Some(d) = d {
                    println!("vc {d}");
                }
            } else if let Some(d) = d {
                println!("{d}");
            } else if out.is_none() {
                print!("{}", write_fam(&f));
            }
            Ok(0)
        }
        Command::Verify { family, scheme, mode, threads, json } => {
            let f = parse_family(&family)?;
            let s = parse_scheme(&scheme, Some(&f))?;
            let mode = VerifyMode::parse(&mode)?;
            let report = in_pool(threads, || verify(s.as_ref(), &f, mode))??;
            let all = if !report.valid && f.base_size() <= LIST_VIOLATIONS_BASE {
                all_violations(s.as_ref(), &f)?
            } else {
                Vec::new()
            };
            if json {
                let mut v = report.to_json();
                v["scheme"] = json!(s.description());
                v["family"] = json!(f.display_name());
                if !all.is_empty() {
                    v["violating_samples"] =
                        json!(all.iter().map(|c| c.sample.to_string()).collect::<Vec<_>>());
                }
                print_json(&v);
            } else {
                println!("scheme: {}", s.description());
                println!("family: {}", f.display_name());
                println!("{report}");
                if !all.is_empty() {
                    let list: Vec<String> = all.iter().map(|c| c.sample.to_string()).collect();
                    println!("violating samples ({}): {}", list.len(), list.join(" "));
                }
            }
            Ok(if report.valid { 0 } else { 2 })
        }
        Command::Search { problem, family, size, max_sample, out, budget, json } => {
            let f = parse_family(&family)?;
            let opts = budget.options(max_sample);
            let r = match problem {
                Problem::Ucs => decide_ucs(&f, size, &opts)?,
                Problem::Lcs => decide_lcs(&f, size, &opts)?,
            };
            if let (Some(path), Some(cert)) = (&out, &r.certificate) {
                let text = match cert {
                    Certificate::Unlabeled(d) => write_decoder(d),
                    Certificate::Labeled(d) => write_labeled_decoder(d),
                };
                std::fs::write(path, text)?;
            }
            if json {
                print_json(&r.to_json());
            } else {
                println!("{r}");
                if let (Some(path), true) = (&out, r.is_found()) {
                    println!("certificate written to {}", path.display());
                }
            }
            Ok(decision_code(r.decision))
        }
        Command::Exact { problem, family, budget, json } => {
            let f = parse_family(&family)?;
            let opts = budget.options(None);
            match exact_search(&f, matches!(problem, Problem::Lcs), &opts) {
                Ok((k, runs)) => {
                    if json {
                        print_json(&json!({
                            "family": f.display_name(),
                            "value": k,
                            "runs": runs.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                        }));
                    } else {
                        println!("{k}");
                    }
                    Ok(0)
                }
                Err(Error::Budget(msg)) => {
                    eprintln!("budget exhausted: {msg}");
                    Ok(3)
                }
                Err(e) => Err(e),
            }
        }
        Command::ExportCnf { family, size, max_sample, out, cnf_budget } => {
            let f = parse_family(&family)?;
            let cnf = export_cnf(&f, size, max_sample, cnf_budget)?;
            std::fs::write(&out, cnf.to_dimacs())?;
            println!(
                "{} variables, {} clauses written to {}",
                cnf.num_vars(),
                cnf.num_clauses(),
                out.display()
            );
            Ok(0)
        }
        Command::Catalog { base, vc, out, resume, node_budget, workers, json } => {
            let opts = HuntOptions {
                enumeration_budget: node_budget,
                search: SearchOptions::default().with_node_budget(node_budget),
                workers,
                resume,
            };
            let s = gap_hunt(base, vc, &out, &opts)?;
            if json {
                print_json(&serde_json::to_value(&s).expect("summary serializes"));
            } else {
                println!(
                    "{} candidates, {} already present, {} written, {} with a gap",
                    s.candidates, s.skipped, s.written, s.gaps
                );
                println!("enumeration nodes {}, complete {}", s.enumeration_nodes, s.exhausted);
                if let Some(c) = &s.cursor {
                    println!("stopped before {c:?}");
                }
            }
            Ok(0)
        }
        Command::Joins { names, k_bound, budget, json } => {
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let records = candidate_joins(&names, k_bound, &budget.options(None))?;
            if json {
                print_json(&serde_json::to_value(&records).expect("records serialize"));
            } else {
                for r in &records {
                    let tried: Vec<String> = r
                        .attempts
                        .iter()
                        .map(|a| format!("k={} {} ({:?}, {} nodes)", a.k, a.outcome, a.method, a.nodes))
                        .collect();
                    let upper = r.upper.map_or("?".to_string(), |u| u.to_string());
                    println!(
                        "{}: vc {}, {} <= ucs <= {upper}; {}",
                        r.family,
                        r.vc,
                        r.lower,
                        tried.join(", ")
                    );
                }
            }
            Ok(0)
        }
        Command::Reproduce { threads, random_samples, json } => {
            let results = in_pool(threads, || {
                reproduce(&ReproOptions { random_samples, threads })
            })?;
            let ok = results.iter().all(|r| r.pass);
            if json {
                print_json(&serde_json::to_value(&results).expect("results serialize"));
            } else {
                for r in &results {
                    println!("{r}");
                }
                let passed = results.iter().filter(|r| r.pass).count();
                println!("{passed}/{} claims reproduced", results.len());
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
