//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use compression_schemes::family::{c4, c5, c5_minus, p, w6, Family};
use rand::seq::SliceRandom;
use rand::{Rng, RngExt, SeedableRng};
use rand_pcg::Pcg64;

/// Largest decoder space the brute-force oracle will walk.
pub const ORACLE_SPACE: u64 = 1 << 24;

pub fn builtins() -> Vec<Family> {
    vec![c5(), c5_minus(), c4(), w6(), p(1).unwrap(), p(2).unwrap(), p(3).unwrap(), p(4).unwrap()]
}

/// Every (domain, values) sample of `f`, computed straight from its bit vectors.
pub fn samples(f: &Family) -> Vec<(u32, u32)> {
    let n = f.base_size();
    let mut out = Vec::new();
    for s in 0..1u32 << n {
        let mut seen: Vec<u32> = f.bit_vectors().iter().map(|b| b & s).collect();
        seen.sort_unstable();
        seen.dedup();
        out.extend(seen.into_iter().map(|t| (s, t)));
    }
    out
}

/// Number of partial functions extended by some member, counted over all `3^n` of them.
pub fn partial_function_count(f: &Family) -> u64 {
    let n = f.base_size();
    let mut count = 0;
    let mut digits = vec![0u8; n];
    loop {
        let (mut dom, mut val) = (0u32, 0u32);
        for (i, &d) in digits.iter().enumerate() {
            if d > 0 {
                dom |= 1 << i;
            }
            if d == 2 {
                val |= 1 << i;
            }
        }
        if f.bit_vectors().iter().any(|b| b & dom == val) {
            count += 1;
        }
        let Some(i) = digits.iter().position(|&d| d < 2) else { break };
        digits[i] += 1;
        digits[..i].iter_mut().for_each(|d| *d = 0);
    }
    count
}

/// Whether some decoder on subsets of size ≤ `k` works for every sample of `f`,
/// found by walking all `(2^n)^entries` decoders. `None` when that space is too big.
pub fn brute_force_ucs(f: &Family, k: usize) -> Option<bool> {
    let n = f.base_size();
    let entries: Vec<u32> = (0..1u32 << n).filter(|y| y.count_ones() as usize <= k).collect();
    let values = 1u64 << n;
    let space = (entries.len() as u32).checked_mul(n as u32).filter(|&b| b < 64).map(|b| 1u64 << b)?;
    if space > ORACLE_SPACE {
        return None;
    }
    // For each sample, the entries it may use and the functions extending it there.
    let needs: Vec<Vec<(usize, u64)>> = samples(f)
        .into_iter()
        .map(|(s, t)| {
            let ext: u64 = (0..values).filter(|&h| h as u32 & s == t).fold(0, |m, h| m | 1 << h);
            entries
                .iter()
                .enumerate()
                .filter(|(_, &y)| y & !s == 0)
                .map(|(e, _)| (e, ext))
                .collect()
        })
        .collect();
    let mut decoder = vec![0u64; entries.len()];
    for code in 0..space {
        let mut c = code;
        for d in decoder.iter_mut() {
            *d = c % values;
            c /= values;
        }
        if needs.iter().all(|opts| opts.iter().any(|&(e, ext)| ext >> decoder[e] & 1 == 1)) {
            return Some(true);
        }
    }
    Some(false)
}

/// Seeded families with `n ≤ 4` and at most 8 members.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Family> {
    let mut rng = Pcg64::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.random_range(1..=4usize);
            let size = rng.random_range(1..=8usize.min(1 << n));
            let bits: Vec<u32> = (0..size).map(|_| rng.next_u32() & ((1 << n) - 1)).collect();
            Family::from_bits(n, bits, None).unwrap()
        })
        .collect()
}

/// A random permutation of `0..n` and a random flip mask.
pub fn random_relabeling(rng: &mut Pcg64, n: usize) -> (Vec<usize>, u32) {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    (sigma, rng.next_u32() & ((1 << n) - 1))
}
