//! Building schemes for joins, restrictions and relabelings from existing ones.

use std::sync::Arc;

use crate::bits::{deposit, extract, full_mask, popcount, MAX_BASE};
use crate::error::{Error, Result};
use crate::family::{BooleanFunction, PartialFunction};

use super::{Program, SchemeProgram};

struct Product {
    left: Program,
    right: Program,
}

impl SchemeProgram for Product {
    fn base_size(&self) -> usize {
        self.left.base_size() + self.right.base_size()
    }
    fn size_bound(&self) -> usize {
        self.left.size_bound() + self.right.size_bound()
    }
    fn compress(&self, g: &PartialFunction) -> Option<u32> {
        let nl = self.left.base_size();
        let nr = self.right.base_size();
        let low = full_mask(nl);
        let gl = PartialFunction::raw(nl, g.domain() & low, g.values() & low);
        let gr = PartialFunction::raw(nr, g.domain() >> nl, g.values() >> nl);
        Some(self.left.compress(&gl)? | (self.right.compress(&gr)? << nl))
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        let nl = self.left.base_size();
        let l = self.left.decode(kept & full_mask(nl));
        let r = self.right.decode(kept >> nl);
        BooleanFunction::raw(self.base_size(), l.bits() | (r.bits() << nl))
    }
    fn description(&self) -> String {
        format!("product({}; {})", self.left.description(), self.right.description())
    }
}

/// Scheme for `F * G` from schemes for `F` and `G`: each block is compressed and
/// decoded independently.
pub fn product_scheme(left: Program, right: Program) -> Result<Program> {
    let n = left.base_size() + right.base_size();
    if n > MAX_BASE {
        return Err(Error::BaseTooLarge { size: n, max: MAX_BASE });
    }
    Ok(Arc::new(Product { left, right }))
}

struct Restricted {
    inner: Program,
    keep: u32,
}

impl SchemeProgram for Restricted {
    fn base_size(&self) -> usize {
        popcount(self.keep)
    }
    fn size_bound(&self) -> usize {
        self.inner.size_bound()
    }
    fn compress(&self, g: &PartialFunction) -> Option<u32> {
        let lifted = PartialFunction::raw(
            self.inner.base_size(),
            deposit(g.domain(), self.keep),
            deposit(g.values(), self.keep),
        );
        let y = self.inner.compress(&lifted)?;
        // Points outside `keep` have no restricted label; flag them with the
        // first out-of-base bit so the verifier reports a non-subset.
        if y & !self.keep != 0 {
            return Some(extract(y, self.keep) | 1 << self.base_size());
        }
        Some(extract(y, self.keep))
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        let f = self.inner.decode(deposit(kept, self.keep));
        BooleanFunction::raw(self.base_size(), extract(f.bits(), self.keep))
    }
    fn description(&self) -> String {
        format!(
            "restrict({}; {{{}}})",
            self.inner.description(),
            crate::bits::format_set(self.keep)
        )
    }
}

/// Scheme for `restrict(F, keep)` from a scheme for `F`. Samples supported in
/// `keep` are partial functions of `F`, so the inner compressor applies as is.
pub fn restrict_scheme(inner: Program, keep: u32) -> Result<Program> {
    if keep == 0 {
        return Err(Error::Empty);
    }
    if keep & !full_mask(inner.base_size()) != 0 {
        return Err(Error::NotASubset(keep));
    }
    Ok(Arc::new(Restricted { inner, keep }))
}

struct Permuted {
    inner: Program,
    sigma: Vec<usize>,
    inverse: Vec<usize>,
}

fn apply(bits: u32, sigma: &[usize]) -> u32 {
    crate::family::symmetry_apply(bits, sigma)
}

impl SchemeProgram for Permuted {
    fn base_size(&self) -> usize {
        self.inner.base_size()
    }
    fn size_bound(&self) -> usize {
        self.inner.size_bound()
    }
    fn compress(&self, g: &PartialFunction) -> Option<u32> {
        let back = PartialFunction::raw(
            self.base_size(),
            apply(g.domain(), &self.inverse),
            apply(g.values(), &self.inverse),
        );
        Some(apply(self.inner.compress(&back)?, &self.sigma))
    }
    fn decode(&self, kept: u32) -> BooleanFunction {
        let f = self.inner.decode(apply(kept, &self.inverse));
        BooleanFunction::raw(self.base_size(), apply(f.bits(), &self.sigma))
    }
    fn description(&self) -> String {
        format!("permute({}; {:?})", self.inner.description(), self.sigma)
    }
}

/// Scheme for `permute_base(F, sigma)` from a scheme for `F`.
pub fn permute_scheme(inner: Program, sigma: &[usize]) -> Result<Program> {
    let n = inner.base_size();
    let mut inverse = vec![usize::MAX; n];
    if sigma.len() != n {
        return Err(Error::BadPermutation(format!("length {} for base {n}", sigma.len())));
    }
    for (i, &s) in sigma.iter().enumerate() {
        if s >= n || inverse[s] != usize::MAX {
            return Err(Error::BadPermutation(format!("{sigma:?}")));
        }
        inverse[s] = i;
    }
    Ok(Arc::new(Permuted { inner, sigma: sigma.to_vec(), inverse }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{c4, c5, join, p, permute_base, restrict, w6, Family};
    use crate::scheme::{keep_ones_scheme, keep_zeros_scheme, verify, VerifyMode};

    fn ones(f: &Family) -> Program {
        Arc::new(keep_ones_scheme(f))
    }

    #[test]
    fn product_of_keep_ones() {
        let j = join(&c5(), &c5()).unwrap();
        let prog = product_scheme(ones(&c5()), ones(&c5())).unwrap();
        assert_eq!(prog.size_bound(), 6);
        let r = verify(prog.as_ref(), &j, VerifyMode::Exhaustive).unwrap();
        assert!(r.valid);
        assert_eq!(r.max_compressed_size, 6);
    }

    #[test]
    fn product_with_single_function_family() {
        let single = Family::from_bits(2, [0b10], None).unwrap();
        let j = join(&c4(), &single).unwrap();
        let zero: Program = Arc::new(keep_zeros_scheme(&single));
        let prog = product_scheme(ones(&c4()), zero).unwrap();
        let r = verify(prog.as_ref(), &j, VerifyMode::Exhaustive).unwrap();
        assert!(r.valid);
        assert_eq!(prog.size_bound(), keep_ones_scheme(&c4()).size_bound() + 1);
    }

    #[test]
    fn restriction_of_keep_ones() {
        let prog = restrict_scheme(ones(&w6()), 0b11111).unwrap();
        let r = verify(prog.as_ref(), &c5(), VerifyMode::Exhaustive).unwrap();
        assert!(r.valid);
        assert!(r.max_compressed_size <= 3);
        let full = restrict_scheme(ones(&c5()), 0b11111).unwrap();
        assert!(verify(full.as_ref(), &c5(), VerifyMode::Exhaustive).unwrap().valid);
        assert!(restrict_scheme(ones(&c5()), 0).is_err());
        let keep = 0b11011;
        let r = verify(prog.as_ref(), &restrict(&w6(), 0b11111).unwrap(), VerifyMode::Exhaustive);
        assert!(r.unwrap().valid);
        let c4_prog = restrict_scheme(ones(&c5()), keep).unwrap();
        assert!(verify(c4_prog.as_ref(), &c4(), VerifyMode::Exhaustive).unwrap().valid);
    }

    #[test]
    fn permuted_scheme_tracks_relabeling() {
        let sigma = [3, 0, 4, 1, 2];
        let f = permute_base(&c5(), &sigma).unwrap();
        let prog = permute_scheme(Arc::new(keep_zeros_scheme(&c5())), &sigma).unwrap();
        assert!(verify(prog.as_ref(), &f, VerifyMode::Exhaustive).unwrap().valid);
        assert!(permute_scheme(ones(&p(2).unwrap()), &[0, 0]).is_err());
    }
}
