//! One representative per isomorphism class of maximal families.

use std::collections::BTreeMap;

use compression_schemes::catalog::enumerate_candidates;
use compression_schemes::family::vc_dimension;

fn main() -> compression_schemes::Result<()> {
    for (n, d) in [(3, 1), (4, 2), (5, 2)] {
        let mut stream = enumerate_candidates(n, d, 1_000_000)?;
        let mut sizes = BTreeMap::new();
        for f in stream.by_ref() {
            assert_eq!(vc_dimension(&f), d);
            *sizes.entry(f.len()).or_insert(0) += 1;
        }
        let total: usize = sizes.values().sum();
        println!("n={n} d={d}: {total} classes in {} nodes, by size {sizes:?}", stream.nodes());
    }
    Ok(())
}
