//! Driving the command line in-process.

use compression_schemes::cli::run;

fn main() {
    for args in [
        vec!["ucs", "family", "join:c5,c5", "--info", "--vc"],
        vec!["ucs", "verify", "--family", "w6", "--scheme", "keep-ones", "--json"],
        vec!["ucs", "search", "ucs", "--family", "c5", "--size", "2"],
        vec!["ucs", "exact", "lcs", "--family", "w6"],
    ] {
        println!("$ {}", args.join(" "));
        let code = run(args);
        println!("(exit {code})\n");
    }
}
