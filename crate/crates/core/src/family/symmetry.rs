//! Group actions on families: coordinate permutations and value flips.

use std::fmt;

use itertools::Itertools;

use crate::bits::{elements, popcount};
use crate::error::{Error, Result};

use super::Family;

/// Largest base for which [`canonical_form`] enumerates the full group of
/// `n! * 2^n` permutation-and-flip maps.
pub const CANONICAL_MAX_BASE: usize = 7;

const AUTOMORPHISM_MAX_BASE: usize = 10;

fn check_permutation(n: usize, sigma: &[usize]) -> Result<()> {
    if sigma.len() != n {
        return Err(Error::BadPermutation(format!("length {} for base {n}", sigma.len())));
    }
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(Error::BadPermutation(format!("{sigma:?}")));
        }
        seen[s] = true;
    }
    Ok(())
}

#[inline]
pub(crate) fn apply_permutation(bits: u32, sigma: &[usize]) -> u32 {
    sigma.iter().enumerate().fold(0, |acc, (i, &s)| acc | (((bits >> i) & 1) << s))
}

/// Images of `0..2^n` under `sigma`, indexed by value.
pub fn apply_permutation_table(n: usize, sigma: &[usize]) -> Vec<u8> {
    (0..1u32 << n).map(|v| apply_permutation(v, sigma) as u8).collect()
}

/// Moves coordinate `i` to `sigma[i]` in every member.
pub fn permute_base(f: &Family, sigma: &[usize]) -> Result<Family> {
    check_permutation(f.base_size(), sigma)?;
    Family::from_bits(
        f.base_size(),
        f.bit_vectors().iter().map(|b| apply_permutation(*b, sigma)).collect::<Vec<_>>(),
        f.label.clone(),
    )
}

/// Replaces `f(x)` by `1 - f(x)` for every `x` in `flip`.
pub fn flip_values(f: &Family, flip: u32) -> Result<Family> {
    if flip & !f.base_mask() != 0 {
        return Err(Error::NotASubset(flip));
    }
    Family::from_bits(
        f.base_size(),
        f.bit_vectors().iter().map(|b| b ^ flip).collect::<Vec<_>>(),
        f.label.clone(),
    )
}

/// Orbit-minimal encoding under permutations and flips: `[n, |F|, sorted values...]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalForm)
    }

    /// Family with the canonical member list.
    pub fn to_family(&self) -> Result<Family> {
        let n = *self.0.first().ok_or(Error::Empty)? as usize;
        Family::from_bits(n, self.0.iter().skip(2).map(|b| *b as u32), None)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_form(f: &Family) -> Result<CanonicalForm> {
    let n = f.base_size();
    if n > CANONICAL_MAX_BASE {
        return Err(Error::BaseTooLarge { size: n, max: CANONICAL_MAX_BASE });
    }
    let values = 1u32 << n;
    let mut best: Option<Vec<u8>> = None;
    let mut image = vec![0u8; f.len()];
    for sigma in (0..n).permutations(n) {
        let table = apply_permutation_table(n, &sigma);
        // Permuting after flipping by M equals flipping by sigma(M) after permuting,
        // so iterating all M for each sigma covers the whole group.
        for flip in 0..values {
            for (slot, &b) in image.iter_mut().zip(f.bit_vectors()) {
                *slot = table[(b ^ flip) as usize];
            }
            image.sort_unstable();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image.clone());
            }
        }
    }
    let mut out = vec![n as u8, f.len() as u8];
    out.extend(best.expect("group is nonempty"));
    Ok(CanonicalForm(out))
}

/// Base permutations mapping the family onto itself, in lexicographic order.
pub fn automorphisms(f: &Family) -> Result<Vec<Vec<usize>>> {
    let n = f.base_size();
    if n > AUTOMORPHISM_MAX_BASE {
        return Err(Error::BaseTooLarge { size: n, max: AUTOMORPHISM_MAX_BASE });
    }
    Ok((0..n)
        .permutations(n)
        .filter(|sigma| {
            f.bit_vectors().iter().all(|b| f.contains_bits(apply_permutation(*b, sigma)))
        })
        .collect())
}

/// `true` iff the permutation group moves every ordered pair of distinct
/// points onto every other one. `group` must be closed under composition.
pub fn is_two_transitive(group: &[Vec<usize>], n: usize) -> bool {
    if n < 2 {
        return true;
    }
    let mut hit = vec![false; n * n];
    for sigma in group {
        hit[sigma[0] * n + sigma[1]] = true;
    }
    (0..n).all(|a| (0..n).all(|b| a == b || hit[a * n + b]))
}

/// `true` iff the one-sets of the members form a 2-design with index `lambda`:
/// every pair of base points lies in exactly `lambda` of them.
pub fn design_check(f: &Family, lambda: usize) -> Result<bool> {
    let weight = popcount(f.bit_vectors()[0]);
    if f.bit_vectors().iter().any(|b| popcount(*b) != weight) {
        return Err(Error::MixedWeights);
    }
    let n = f.base_size();
    let mut counts = vec![0usize; n * n];
    for &b in f.bit_vectors() {
        let pts = elements(b);
        for (i, &x) in pts.iter().enumerate() {
            for &y in &pts[i + 1..] {
                counts[x * n + y] += 1;
            }
        }
    }
    Ok((0..n).all(|x| (x + 1..n).all(|y| counts[x * n + y] == lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c4, c5, c5_minus, join, p, vc_dimension, w6};

    fn rotation(n: usize, r: usize) -> Vec<usize> {
        (0..n).map(|i| (i + r) % n).collect()
    }

    #[test]
    fn rotations_fix_c5() {
        for r in 0..5 {
            assert_eq!(permute_base(&c5(), &rotation(5, r)).unwrap(), c5());
        }
        assert!(permute_base(&c5(), &[0, 0, 1, 2, 3]).is_err());
        assert!(permute_base(&c5(), &[0, 1, 2]).is_err());
    }

    #[test]
    fn flip_identity_and_invariance() {
        assert_eq!(flip_values(&c5(), 0).unwrap(), c5());
        let flipped = flip_values(&c5(), 0b1000).unwrap();
        assert_ne!(flipped, c5());
        assert_eq!(canonical_form(&flipped).unwrap(), canonical_form(&c5()).unwrap());
        assert_eq!(vc_dimension(&flipped), 2);
    }

    #[test]
    fn canonical_form_separates_orbits() {
        let c = canonical_form(&c5()).unwrap();
        for r in 0..5 {
            let img = permute_base(&c5(), &rotation(5, r)).unwrap();
            assert_eq!(canonical_form(&img).unwrap(), c);
        }
        assert_ne!(c, canonical_form(&c5_minus()).unwrap());
        assert_eq!(CanonicalForm::from_hex(&c.to_hex()), Some(c.clone()));
        let rebuilt = c.to_family().unwrap();
        assert_eq!(canonical_form(&rebuilt).unwrap(), c);
        assert!(canonical_form(&p(8).unwrap()).is_err());
    }

    #[test]
    fn canonical_form_agrees_with_orbit_membership() {
        // Brute-force orbit of c5 under flips only, then a permutation.
        let c = canonical_form(&c5()).unwrap();
        let sigma = [2, 0, 4, 1, 3];
        for flip in 0..32 {
            let img = permute_base(&flip_values(&c5(), flip).unwrap(), &sigma).unwrap();
            assert_eq!(canonical_form(&img).unwrap(), c);
        }
    }

    #[test]
    fn w6_is_two_transitive_design() {
        let group = automorphisms(&w6()).unwrap();
        assert!(is_two_transitive(&group, 6));
        assert!(design_check(&w6(), 2).unwrap());
        assert!(!design_check(&w6(), 1).unwrap());
        assert_eq!(design_check(&c5(), 1), Err(Error::MixedWeights));
    }

    #[test]
    fn c5_automorphisms_are_dihedral() {
        let group = automorphisms(&c5()).unwrap();
        assert_eq!(group.len(), 10);
        assert!(group.contains(&rotation(5, 1)));
        assert!(group.windows(2).all(|w| w[0] < w[1]));
        assert!(!is_two_transitive(&group, 5));
        let trivial = automorphisms(&c4()).unwrap();
        assert!(trivial.contains(&vec![0, 1, 2, 3]));
    }

    #[test]
    fn w6_blocks_and_complements_are_disjoint() {
        let blocks: Vec<u32> = w6().bit_vectors().to_vec();
        for b in &blocks {
            assert!(!blocks.contains(&(!b & 0b111111)));
        }
    }

    #[test]
    fn c5_embeds_in_p1_join_c4() {
        // Element 2 of C5 moves to the P(1) coordinate 0; 0,1,3,4 follow in order.
        let sigma = [1, 2, 0, 3, 4];
        let relabeled = permute_base(&c5(), &sigma).unwrap();
        let big = join(&p(1).unwrap(), &c4()).unwrap();
        assert!(crate::family::is_subfamily(&relabeled, &big));
        assert!(!crate::family::is_subfamily(&big, &relabeled));
    }
}
