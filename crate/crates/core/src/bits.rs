//! Small helpers for base subsets stored as `u32` bit masks.

/// Largest supported base size; bit operations stay within one 32-bit word.
pub const MAX_BASE: usize = 25;

#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn popcount(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Positions of the set bits, ascending.
pub fn elements(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(popcount(mask));
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

pub fn mask_of(elements: &[usize]) -> u32 {
    elements.iter().fold(0, |acc, &e| acc | (1 << e))
}

/// Gathers the bits of `value` at the set positions of `mask` into the low bits.
#[inline]
pub fn extract(value: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let pos = m.trailing_zeros();
        out |= ((value >> pos) & 1) << i;
        i += 1;
        m &= m - 1;
    }
    out
}

/// Inverse of [`extract`]: scatters the low bits of `value` onto the set positions of `mask`.
#[inline]
pub fn deposit(value: u32, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let pos = m.trailing_zeros();
        out |= ((value >> i) & 1) << pos;
        i += 1;
        m &= m - 1;
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

/// All `k`-element subsets of `universe`, in ascending mask order.
pub struct SubsetsOfSize {
    universe: u32,
    width: u32,
    current: Option<u64>,
}

impl SubsetsOfSize {
    pub fn new(universe: u32, k: usize) -> Self {
        let width = universe.count_ones();
        let current = if k as u32 > width { None } else { Some((1u64 << k) - 1) };
        SubsetsOfSize { universe, width, current }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let c = self.current?;
        if c >> self.width != 0 {
            self.current = None;
            return None;
        }
        // Gosper's hack on the compressed index space.
        self.current = if c == 0 {
            None
        } else {
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            Some((((ripple ^ c) >> 2) / low) | ripple)
        };
        Some(deposit(c as u32, self.universe))
    }
}

/// Subsets of `universe` with at most `k` elements, ordered by cardinality and then by mask.
pub fn subsets_up_to(universe: u32, k: usize) -> impl Iterator<Item = u32> {
    (0..=k.min(popcount(universe))).flat_map(move |j| SubsetsOfSize::new(universe, j))
}

/// Formats a subset as sorted comma-separated indices, `-` for the empty set.
pub fn format_set(mask: u32) -> String {
    if mask == 0 {
        return "-".to_string();
    }
    elements(mask).iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// Strict "lexicographically smaller" on sets compared as sorted element lists of
/// equal length: the smallest element of the symmetric difference decides.
#[inline]
pub fn set_lex_less_u128(a: u128, b: u128) -> bool {
    let diff = a ^ b;
    diff != 0 && (a & diff & diff.wrapping_neg()) != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_size_matches_filter() {
        let universe = 0b1011_0110;
        for k in 0..=6 {
            let got: Vec<u32> = SubsetsOfSize::new(universe, k).collect();
            let want: Vec<u32> = (0..=universe)
                .filter(|s| s & !universe == 0 && popcount(*s) == k)
                .collect();
            assert_eq!(got, want, "k = {k}");
        }
    }

    #[test]
    fn subsets_up_to_orders_by_cardinality() {
        let all: Vec<u32> = subsets_up_to(0b11111, 2).collect();
        assert_eq!(all.len(), 16);
        assert_eq!(all[0], 0);
        assert_eq!(&all[1..6], &[1, 2, 4, 8, 16]);
    }

    #[test]
    fn extract_deposit_inverse() {
        let mask = 0b1101_0010;
        for v in 0..16 {
            assert_eq!(extract(deposit(v, mask), mask), v);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(25, 5), 53130);
        assert_eq!(binomial(3, 5), 0);
    }
}
