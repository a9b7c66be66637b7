//! The existence question as CNF, solved by an external SAT solver.

use compression_schemes::family::{c5, w6};
use compression_schemes::search::{export_cnf, CnfInstance, DEFAULT_CNF_BUDGET};

fn main() -> compression_schemes::Result<()> {
    let cnf = export_cnf(&c5(), 2, None, DEFAULT_CNF_BUDGET)?;
    println!("c5 size 2: {} variables, {} clauses", cnf.num_vars(), cnf.num_clauses());
    let text = cnf.to_dimacs();
    println!("{}", text.lines().next().unwrap_or_default());
    let back = CnfInstance::parse_dimacs(&text)?;
    println!("satisfiable: {}", back.solve()?.is_some());

    let cnf = export_cnf(&w6(), 3, None, DEFAULT_CNF_BUDGET)?;
    let model = cnf.solve()?.expect("w6 has a size-3 scheme");
    let decoder = cnf.decoder_from_model(&model)?;
    println!("w6 size 3: decoder with {} entries, satisfies the clauses: {}", decoder.len(), cnf.satisfied_by(&decoder));
    Ok(())
}
