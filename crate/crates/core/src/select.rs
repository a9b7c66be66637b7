//! Textual selectors for families and schemes.
//!
//! Families: `c5`, `c5-minus`, `c4`, `w6`, `p:<k>`, `join:<a>,<b>`,
//! `pow:<a>,<n>`, or a path ending in `.fam`. Selectors nest, so
//! `join:join:c5,c5,c5` is `(C5 * C5) * C5`.
//!
//! Schemes are resolved against a family: `keep-ones`, `keep-zeros`,
//! `table1-c5x2`, `table2-c5pow5`, `table3-c5minus`, `table4-w6p1`, `w6x2`,
//! `product:<a>,<b>` for a join, and `restrict:<scheme>:<bits>` where `<bits>`
//! marks the kept elements of the inner scheme's base (`1101` keeps 0, 1, 3).

use std::sync::Arc;

use crate::constructions::{scheme_table1, scheme_table2, scheme_table3, scheme_table4, scheme_w6x2};
use crate::error::{Error, Result};
use crate::family::{c5, c5_minus, join, make_builtin, parse_fam, p, power_join, w6, Family};
use crate::scheme::{
    keep_ones_scheme, keep_zeros_scheme, product_scheme, restrict_scheme, table_to_program,
    Program,
};

fn bad(token: &str, message: impl Into<String>) -> Error {
    Error::Selector { token: token.to_string(), message: message.into() }
}

/// Splits off the leading atom: everything up to the first `,`.
fn atom(s: &str) -> (&str, &str) {
    match s.find(',') {
        Some(i) => (&s[..i], &s[i..]),
        None => (s, ""),
    }
}

fn expect_comma<'a>(rest: &'a str, whole: &str) -> Result<&'a str> {
    rest.strip_prefix(',').ok_or_else(|| bad(whole, "expected `,`"))
}

fn family_prefix(s: &str) -> Result<(Family, &str)> {
    if let Some(body) = s.strip_prefix("join:") {
        let (a, rest) = family_prefix(body)?;
        let (b, rest) = family_prefix(expect_comma(rest, s)?)?;
        return Ok((join(&a, &b)?, rest));
    }
    if let Some(body) = s.strip_prefix("pow:") {
        let (a, rest) = family_prefix(body)?;
        let (count, rest) = atom(expect_comma(rest, s)?);
        let n: usize = count.parse().map_err(|_| bad(count, "expected a repetition count"))?;
        return Ok((power_join(&a, n)?, rest));
    }
    let (name, rest) = atom(s);
    if name.is_empty() {
        return Err(bad(s, "missing family"));
    }
    if name.ends_with(".fam") {
        let text = std::fs::read_to_string(name).map_err(|e| bad(name, e.to_string()))?;
        return Ok((parse_fam(&text)?, rest));
    }
    let f = make_builtin(name).map_err(|e| match e {
        Error::UnknownFamily(_) => bad(name, "unknown family"),
        other => other,
    })?;
    Ok((f, rest))
}

pub fn parse_family(spec: &str) -> Result<Family> {
    let (f, rest) = family_prefix(spec)?;
    if !rest.is_empty() {
        return Err(bad(rest, "trailing input"));
    }
    Ok(f)
}

fn split_scheme(s: &str) -> Result<(&str, &str)> {
    // The first scheme of a product ends at the comma that balances its nesting.
    let mut need = 1usize;
    let mut i = 0;
    while i < s.len() {
        let rest = &s[i..];
        if rest.starts_with("product:") {
            need += 1;
            i += "product:".len();
        } else if rest.starts_with(',') {
            need -= 1;
            if need == 0 {
                return Ok((&s[..i], &s[i + 1..]));
            }
            i += 1;
        } else {
            i += rest.chars().next().map_or(1, char::len_utf8);
        }
    }
    Err(bad(s, "product needs two schemes separated by `,`"))
}

/// Resolves a scheme name. Family-dependent schemes need `family`; the
/// fixed constructions only check that the base sizes agree.
pub fn parse_scheme(name: &str, family: Option<&Family>) -> Result<Program> {
    let need_family = || family.ok_or_else(|| bad(name, "needs a family to size itself"));
    let fixed = |p: Program| -> Result<Program> {
        match family {
            Some(f) if f.base_size() != p.base_size() => {
                Err(Error::BaseMismatch { expected: p.base_size(), found: f.base_size() })
            }
            _ => Ok(p),
        }
    };
    if let Some(body) = name.strip_prefix("product:") {
        let (a, b) = split_scheme(body)?;
        let f = need_family()?;
        let factors = f.factors().ok_or_else(|| bad(name, "family is not a join"))?;
        let mut last = None;
        for i in 1..factors.len() {
            let left = factors[..i].iter().skip(1).try_fold(factors[0].clone(), |acc, g| join(&acc, g))?;
            let right =
                factors[i + 1..].iter().try_fold(factors[i].clone(), |acc, g| join(&acc, g))?;
            match (parse_scheme(a, Some(&left)), parse_scheme(b, Some(&right))) {
                (Ok(l), Ok(r)) => return product_scheme(l, r),
                (Err(e), _) | (_, Err(e)) => last = Some(e),
            }
        }
        return Err(last.unwrap_or_else(|| bad(name, "family has a single factor")));
    }
    if let Some(body) = name.strip_prefix("restrict:") {
        let cut = body.rfind(':').ok_or_else(|| bad(name, "expected restrict:<scheme>:<bits>"))?;
        let (inner, bits) = (&body[..cut], &body[cut + 1..]);
        let inner = parse_scheme(inner, None)?;
        if bits.len() != inner.base_size() || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(bad(bits, format!("expected {} characters of 0/1", inner.base_size())));
        }
        let keep = bits.chars().enumerate().fold(0u32, |m, (i, c)| m | u32::from(c == '1') << i);
        return fixed(restrict_scheme(inner, keep)?);
    }
    match name {
        "keep-ones" => Ok(Arc::new(keep_ones_scheme(need_family()?))),
        "keep-zeros" => Ok(Arc::new(keep_zeros_scheme(need_family()?))),
        "table1-c5x2" => fixed(Arc::new(scheme_table1())),
        "table2-c5pow5" => fixed(Arc::new(scheme_table2())),
        "table3-c5minus" => fixed(Arc::new(table_to_program(scheme_table3(), &c5_minus())?)),
        "table4-w6p1" => fixed(Arc::new(scheme_table4())),
        "w6x2" => fixed(Arc::new(scheme_w6x2())),
        _ => Err(bad(name, "unknown scheme")),
    }
}

/// The smallest scheme the crate can build for `f` from its constructions,
/// products over join factors, and keeping all 1's or all 0's.
pub fn best_scheme(f: &Family) -> Result<Program> {
    type Build = fn() -> Result<Family>;
    let known: [(usize, usize, Build, &str); 4] = [
        (10, 100, || join(&c5(), &c5()), "table1-c5x2"),
        (25, 100_000, || power_join(&c5(), 5), "table2-c5pow5"),
        (7, 20, || join(&w6(), &p(1)?), "table4-w6p1"),
        (12, 100, || join(&w6(), &w6()), "w6x2"),
    ];
    for (n, len, build, name) in known {
        if f.base_size() == n && f.len() == len && build()? == *f {
            return parse_scheme(name, Some(f));
        }
    }
    let ones: Program = Arc::new(keep_ones_scheme(f));
    let zeros: Program = Arc::new(keep_zeros_scheme(f));
    let mut best = if zeros.size_bound() < ones.size_bound() { zeros } else { ones };
    if let Some(factors) = f.factors() {
        if let [first, second, ..] = factors {
            let rest = factors[2..].iter().try_fold(second.clone(), |acc, g| join(&acc, g))?;
            let prod = product_scheme(best_scheme(first)?, best_scheme(&rest)?)?;
            if prod.size_bound() < best.size_bound() {
                best = prod;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c4, restrict, vc_dimension};
    use crate::scheme::{verify, VerifyMode};

    #[test]
    fn families() {
        assert_eq!(parse_family("c5").unwrap(), c5());
        let f = parse_family("join:c5,c5").unwrap();
        assert_eq!((f.base_size(), f.len()), (10, 100));
        let g = parse_family("join:join:c4,p:1,c4").unwrap();
        assert_eq!(g.base_size(), 9);
        assert_eq!(vc_dimension(&g), 5);
        assert_eq!(parse_family("pow:c5,2").unwrap(), f);
        match parse_family("join:c5,c7") {
            Err(Error::Selector { token, .. }) => assert_eq!(token, "c7"),
            other => panic!("{other:?}"),
        }
        assert!(parse_family("c5,c5").is_err());
        assert!(parse_family("join:c5").is_err());
    }

    #[test]
    fn schemes_resolve_and_verify() {
        let f = parse_family("join:c5,c4").unwrap();
        let s = parse_scheme("product:keep-ones,keep-zeros", Some(&f)).unwrap();
        assert_eq!(s.size_bound(), 3 + 3);
        assert!(verify(s.as_ref(), &f, VerifyMode::Exhaustive).unwrap().valid);
        let r = restrict(&parse_family("join:w6,p:1").unwrap(), 0b1011111).unwrap();
        let s = parse_scheme("restrict:table4-w6p1:1111101", Some(&r)).unwrap();
        assert!(verify(s.as_ref(), &r, VerifyMode::Exhaustive).unwrap().valid);
        assert!(parse_scheme("restrict:keep-ones:11", None).is_err());
        assert!(matches!(
            parse_scheme("table1-c5x2", Some(&c4())),
            Err(Error::BaseMismatch { .. })
        ));
    }

    #[test]
    fn nested_products_split_at_the_balancing_comma() {
        assert_eq!(split_scheme("product:a,b,c").unwrap(), ("product:a,b", "c"));
        assert_eq!(split_scheme("a,product:b,c").unwrap(), ("a", "product:b,c"));
    }

    #[test]
    fn best_schemes() {
        assert_eq!(best_scheme(&parse_family("join:c5,c5").unwrap()).unwrap().size_bound(), 5);
        assert_eq!(best_scheme(&parse_family("join:w6,p:1").unwrap()).unwrap().size_bound(), 3);
        assert_eq!(best_scheme(&parse_family("join:c4,c4").unwrap()).unwrap().size_bound(), 6);
        assert_eq!(best_scheme(&c5()).unwrap().size_bound(), 3);
    }
}
