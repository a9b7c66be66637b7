use crate::bits::{mask_of, popcount};
use crate::error::{Error, Result};

use super::{remove_function, restrict, BooleanFunction, Family};

/// The member of C5 deleted to obtain C5⁻, as a value string over 0..4.
pub const C5_REMOVED: &str = "01110";

/// `true` iff `f` takes the values 1,0,0,1 on four consecutive pentagon vertices.
fn in_c5(f: u32) -> bool {
    let v = |i: usize| (f >> (i % 5)) & 1;
    (0..5).any(|i| v(i) == 1 && v(i + 1) == 0 && v(i + 2) == 0 && v(i + 3) == 1)
}

pub fn c5() -> Family {
    Family::from_bits(5, (0..32).filter(|f| in_c5(*f)), Some("c5".into()))
        .expect("c5 is nonempty")
}

pub fn c5_minus() -> Family {
    let removed = BooleanFunction::parse(C5_REMOVED).expect("valid literal");
    remove_function(&c5(), &removed).expect("01110 is in c5").with_label("c5-minus")
}

/// C5 restricted to the base without element 2, relabeled to 0..3.
pub fn c4() -> Family {
    restrict(&c5(), mask_of(&[0, 1, 3, 4])).expect("nonempty keep").with_label("c4")
}

/// C5 extended by a sixth element so that every function has weight 3.
pub fn w6() -> Family {
    let base = c5();
    let bits = base.bit_vectors().iter().map(|&f| match popcount(f) {
        2 => f | 1 << 5,
        _ => f,
    });
    Family::from_bits(6, bits.collect::<Vec<_>>(), Some("w6".into())).expect("nonempty")
}

/// All `2^k` functions on `k` points.
pub fn p(k: usize) -> Result<Family> {
    if !(1..=8).contains(&k) {
        return Err(Error::OutOfRange(format!("p:{k} needs 1 <= k <= 8")));
    }
    Family::from_bits(k, 0..1u32 << k, Some(format!("p:{k}")))
}

/// Resolves `c5`, `c5-minus`, `c4`, `w6` or `p:<k>`.
pub fn make_builtin(name: &str) -> Result<Family> {
    match name {
        "c5" => Ok(c5()),
        "c5-minus" => Ok(c5_minus()),
        "c4" => Ok(c4()),
        "w6" => Ok(w6()),
        _ => match name.strip_prefix("p:") {
            Some(k) => {
                let k: usize =
                    k.parse().map_err(|_| Error::UnknownFamily(name.to_string()))?;
                p(k)
            }
            None => Err(Error::UnknownFamily(name.to_string())),
        },
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_sizes() {
        assert_eq!(make_builtin("c5").unwrap().len(), 10);
        assert_eq!(make_builtin("p:3").unwrap().len(), 8);
        assert_eq!(make_builtin("c4").unwrap().len(), 9);
        let w = make_builtin("w6").unwrap();
        assert_eq!(w.len(), 10);
        assert!(w.functions().all(|f| f.weight() == 3));
        assert!(matches!(make_builtin("c7"), Err(Error::UnknownFamily(_))));
        assert!(matches!(make_builtin("p:9"), Err(Error::OutOfRange(_))));
        assert!(matches!(make_builtin("p:0"), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn c5_members_are_rotations_of_two_patterns() {
        let ones: Vec<u32> = c5().bit_vectors().to_vec();
        let rot = |m: u32, r: u32| ((m << r) | (m >> (5 - r))) & 31;
        for r in 0..5 {
            assert!(ones.contains(&rot(0b01001, r)));
            assert!(ones.contains(&rot(0b00111, r)));
        }
    }

    #[test]
    fn w6_restricts_to_c5() {
        assert_eq!(restrict(&w6(), 0b11111).unwrap(), c5());
    }
}
