//! Checking schemes exhaustively, on bounded samples, and at random.

use compression_schemes::family::{c5, c5_minus, join};
use compression_schemes::scheme::{all_violations, verify, VerifyMode};
use compression_schemes::select::parse_scheme;

fn main() -> compression_schemes::Result<()> {
    let pentagon = c5();
    let ones = parse_scheme("keep-ones", Some(&pentagon))?;
    println!("{}\n{}\n", ones.description(), verify(ones.as_ref(), &pentagon, VerifyMode::Exhaustive)?);

    let pair = join(&c5(), &c5())?;
    let table = parse_scheme("table1-c5x2", Some(&pair))?;
    let report = verify(table.as_ref(), &pair, VerifyMode::Random { samples: 20_000, seed: 7 })?;
    println!("{}\n{report}\n", table.description());

    // The size-2 table for C5 minus one function misses two samples.
    let minus = c5_minus();
    let table3 = parse_scheme("table3-c5minus", Some(&minus))?;
    let report = verify(table3.as_ref(), &minus, VerifyMode::Bounded(5))?;
    println!("{}\n{report}", table3.description());
    for c in all_violations(table3.as_ref(), &minus)? {
        println!("  fails on {}", c.sample);
    }
    Ok(())
}
