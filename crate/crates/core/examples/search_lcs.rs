//! Labeled schemes, where the compressed sample keeps its values.

use compression_schemes::family::{c5, p};
use compression_schemes::scheme::{verify_labeled, write_labeled_decoder, VerifyMode};
use compression_schemes::search::{decide_lcs, lcs_exact, SearchOptions};

fn main() -> compression_schemes::Result<()> {
    let opts = SearchOptions::default();
    let points = p(2)?;
    let r = decide_lcs(&points, 1, &opts)?;
    println!("{r}");
    let decoder = r.labeled_decoder().expect("one point suffices");
    print!("{}", write_labeled_decoder(decoder));
    println!("{}", verify_labeled(decoder, &points, VerifyMode::Exhaustive)?);

    println!("exact lcs(c5) = {}", lcs_exact(&c5(), &opts)?);
    Ok(())
}
