//! Sandwiching the compression size of joins between search and constructions.

use std::time::Duration;

use compression_schemes::catalog::candidate_joins;
use compression_schemes::search::SearchOptions;

fn main() -> compression_schemes::Result<()> {
    let opts = SearchOptions::default()
        .with_node_budget(10_000)
        .with_time_budget(Some(Duration::from_secs(10)));
    for r in candidate_joins(&["c5", "w6", "p:1"], 5, &opts)? {
        let upper = r.upper.map_or("?".into(), |u| u.to_string());
        println!("{:>8}: vc {}, {} <= ucs <= {upper}", r.family, r.vc, r.lower);
        for a in &r.attempts {
            println!("          k={} {} by {:?}", a.k, a.outcome, a.method);
        }
    }
    Ok(())
}
