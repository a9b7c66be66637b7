//! Building schemes for joins and restrictions out of smaller ones.

use compression_schemes::family::{c4, c5, join, restrict};
use compression_schemes::scheme::{
    keep_ones_scheme, keep_zeros_scheme, permute_scheme, product_scheme, restrict_scheme, verify,
    Program, VerifyMode,
};
use compression_schemes::family::permute_base;
use std::sync::Arc;

fn main() -> compression_schemes::Result<()> {
    let (a, b) = (c5(), c4());
    let left: Program = Arc::new(keep_ones_scheme(&a));
    let right: Program = Arc::new(keep_zeros_scheme(&b));
    let both = product_scheme(left.clone(), right)?;
    let f = join(&a, &b)?;
    println!("{} on {}", both.description(), f.display_name());
    println!("{}\n", verify(both.as_ref(), &f, VerifyMode::Exhaustive)?);

    // Dropping points 1 and 3 of the pentagon.
    let keep = 0b10101;
    let r = restrict_scheme(left.clone(), keep)?;
    let g = restrict(&a, keep)?;
    println!("{} on {} functions", r.description(), g.len());
    println!("valid: {}\n", verify(r.as_ref(), &g, VerifyMode::Exhaustive)?.valid);

    let sigma = [4, 3, 2, 1, 0];
    let moved = permute_scheme(left, &sigma)?;
    let h = permute_base(&a, &sigma)?;
    println!("{}: valid {}", moved.description(), verify(moved.as_ref(), &h, VerifyMode::Exhaustive)?.valid);
    Ok(())
}
