//! Cataloging maximal families and their unlabeled compression sizes.

use compression_schemes::catalog::{gap_hunt, read_catalog, HuntOptions};
use compression_schemes::search::SearchOptions;

fn main() -> compression_schemes::Result<()> {
    let dir = std::env::temp_dir().join(format!("ucs-catalog-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let out = dir.join("n5d2.jsonl");
    let mut opts = HuntOptions {
        enumeration_budget: 1_000_000,
        search: SearchOptions::default().with_node_budget(1_000_000),
        workers: 1,
        resume: false,
    };
    let summary = gap_hunt(5, 2, &out, &opts)?;
    println!("{summary:?}");

    opts.resume = true;
    let again = gap_hunt(5, 2, &out, &opts)?;
    println!("resumed: {} skipped, {} written", again.skipped, again.written);

    let records = read_catalog(&std::fs::read_to_string(&out)?)?;
    for r in records.iter().filter(|r| r.gap.is_some_and(|g| g > 0)) {
        println!("gap {}: vc {}, ucs {}, {}", r.gap.unwrap_or(0), r.vc, r.ucs.value, r.functions.join(" "));
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
