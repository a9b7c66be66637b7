//! Builtin families, traces, shattering and joins.

use compression_schemes::family::{
    c5, canonical_form, join, p, parse_fam, restrict, sauer_shelah_bound, shatters, traces,
    vc_dimension, w6, write_fam,
};

fn main() -> compression_schemes::Result<()> {
    let pentagon = c5();
    println!("{}: {} functions on {} points", pentagon.display_name(), pentagon.len(), pentagon.base_size());
    for g in pentagon.functions() {
        println!("  {g}");
    }

    // Every pair of points is shattered; no triple is.
    println!("shatters {{0,1}}: {}", shatters(&pentagon, 0b00011)?);
    println!("shatters {{0,1,2}}: {}", shatters(&pentagon, 0b00111)?);
    let on_first_three: Vec<String> = traces(&pentagon, 0b00111)?.iter().map(|t| t.to_string()).collect();
    println!("traces on {{0,1,2}}: {}", on_first_three.join(" "));

    let d = vc_dimension(&pentagon);
    println!("vc = {d}, Sauer-Shelah bound = {}", sauer_shelah_bound(5, d)?);

    let joined = join(&w6(), &p(1)?)?;
    println!("{}: base {}, {} functions, vc {}", joined.display_name(), joined.base_size(), joined.len(), vc_dimension(&joined));

    let smaller = restrict(&joined, 0b1011111)?;
    println!("w6*p:1 without point 5: {} functions", smaller.len());

    let text = write_fam(&pentagon);
    assert_eq!(parse_fam(&text)?, pentagon);
    println!("canonical form {}", canonical_form(&pentagon)?.to_hex());
    Ok(())
}
