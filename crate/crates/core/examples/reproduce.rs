//! Runs every claim check and prints one line per claim.

use compression_schemes::reproduce::{reproduce, ReproOptions};

fn main() {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let results = reproduce(&ReproOptions { threads, ..ReproOptions::default() });
    for r in &results {
        println!("{r}");
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("{} of {} claims reproduced", results.len() - failed, results.len());
    std::process::exit(i32::from(failed > 0));
}
