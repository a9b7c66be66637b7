//! Deciding whether an unlabeled scheme of a given size exists.

use compression_schemes::family::{c5, w6};
use compression_schemes::scheme::{write_decoder, verify, table_to_program, VerifyMode};
use compression_schemes::search::{decide_ucs, ucs_exact, SearchOptions};

fn main() -> compression_schemes::Result<()> {
    let opts = SearchOptions::default();
    let pentagon = c5();
    println!("{}", decide_ucs(&pentagon, 2, &opts)?);
    let found = decide_ucs(&pentagon, 3, &opts)?;
    println!("{found}");

    let decoder = found.unlabeled().expect("size 3 works").clone();
    println!("{}", write_decoder(&decoder).lines().take(6).collect::<Vec<_>>().join("\n"));
    println!("...");
    let program = table_to_program(decoder, &pentagon)?;
    println!("decoder verifies: {}", verify(&program, &pentagon, VerifyMode::Exhaustive)?.valid);

    println!("exact ucs(w6) = {}", ucs_exact(&w6(), &opts.clone().with_symmetry(true))?);
    Ok(())
}
