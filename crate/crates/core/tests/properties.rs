mod common;

use std::collections::HashSet;
use std::sync::Arc;

use compression_schemes::catalog::enumerate_candidates;
use compression_schemes::family::{
    automorphisms, c5, canonical_form, flip_values, is_containment_maximal, join, parse_fam,
    permute_base, restrict, sauer_shelah_bound, shatters, vc_dimension, write_fam, Family,
};
use compression_schemes::scheme::{
    keep_ones_scheme, keep_zeros_scheme, parse_decoder, permute_scheme, product_scheme,
    restrict_scheme, table_to_program, verify, write_decoder, Program, VerifyMode,
};
use compression_schemes::search::{decide_ucs, export_cnf, Decision, SearchOptions, DEFAULT_CNF_BUDGET};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_pcg::Pcg64;

fn family(max_n: usize, max_len: usize) -> impl Strategy<Value = Family> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..1u32 << n, 1..=max_len)
            .prop_map(move |bits| Family::from_bits(n, bits, None).unwrap())
    })
}

fn valid(s: &Program, f: &Family) -> bool {
    verify(s.as_ref(), f, VerifyMode::Exhaustive).unwrap().valid
}

fn found(f: &Family, k: usize) -> bool {
    decide_ucs(f, k, &SearchOptions::default()).unwrap().decision == Decision::Found
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_preserves_invariants(f in family(6, 20), seed in any::<u64>()) {
        let mut rng = Pcg64::seed_from_u64(seed);
        let (sigma, flip) = common::random_relabeling(&mut rng, f.base_size());
        let g = flip_values(&permute_base(&f, &sigma).unwrap(), flip).unwrap();
        prop_assert_eq!(vc_dimension(&g), vc_dimension(&f));
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&f).unwrap());
    }

    #[test]
    fn sauer_shelah_holds(f in family(7, 40)) {
        let d = vc_dimension(&f);
        prop_assert!(f.len() as u64 <= sauer_shelah_bound(f.base_size(), d).unwrap());
    }

    #[test]
    fn shattering_is_hereditary(f in family(5, 16), x in any::<u32>()) {
        let x = x & f.base_mask();
        if shatters(&f, x).unwrap() {
            for i in 0..f.base_size() {
                prop_assert!(shatters(&f, x & !(1 << i)).unwrap());
            }
        }
    }

    #[test]
    fn vc_of_join_adds(a in family(4, 8), b in family(4, 8)) {
        let j = join(&a, &b).unwrap();
        prop_assert_eq!(vc_dimension(&j), vc_dimension(&a) + vc_dimension(&b));
        prop_assert_eq!(j.len(), a.len() * b.len());
    }

    #[test]
    fn keeping_ones_or_zeros_always_works(f in family(5, 16)) {
        prop_assert!(valid(&(Arc::new(keep_ones_scheme(&f)) as Program), &f));
        prop_assert!(valid(&(Arc::new(keep_zeros_scheme(&f)) as Program), &f));
    }

    #[test]
    fn products_and_restrictions_stay_valid(a in family(3, 6), b in family(3, 6), keep in any::<u32>()) {
        let j = join(&a, &b).unwrap();
        let s = product_scheme(Arc::new(keep_ones_scheme(&a)), Arc::new(keep_zeros_scheme(&b))).unwrap();
        prop_assert!(s.size_bound() <= a.max_weight() + b.max_coweight());
        prop_assert!(valid(&s, &j));
        let keep = keep & j.base_mask();
        prop_assume!(keep != 0);
        let r = restrict_scheme(s, keep).unwrap();
        prop_assert!(valid(&r, &restrict(&j, keep).unwrap()));
    }

    #[test]
    fn search_matches_brute_force(f in family(3, 8), k in 0usize..3) {
        if let Some(expect) = common::brute_force_ucs(&f, k) {
            prop_assert_eq!(found(&f, k), expect);
        }
    }

    #[test]
    fn found_decoders_verify_and_round_trip(f in family(4, 10)) {
        let k = f.max_weight().min(f.max_coweight());
        let r = decide_ucs(&f, k, &SearchOptions::default()).unwrap();
        let d = r.unlabeled().expect("keeping ones or zeros fits in k").clone();
        prop_assert_eq!(parse_decoder(&write_decoder(&d)).unwrap(), d.clone());
        prop_assert!(verify(&table_to_program(d, &f).unwrap(), &f, VerifyMode::Exhaustive).unwrap().valid);
    }

    #[test]
    fn cnf_agrees_with_search(f in family(3, 8), k in 0usize..3) {
        let cnf = export_cnf(&f, k, None, DEFAULT_CNF_BUDGET).unwrap();
        prop_assert_eq!(cnf.solve().unwrap().is_some(), found(&f, k));
    }

    #[test]
    fn fam_round_trip(f in family(8, 30)) {
        prop_assert_eq!(parse_fam(&write_fam(&f)).unwrap(), f);
    }

    #[test]
    fn random_mode_counterexamples_are_genuine(a in family(4, 8), b in family(4, 8), seed in any::<u64>()) {
        prop_assume!(a.base_size() == b.base_size());
        let s: Program = Arc::new(keep_ones_scheme(&a));
        let report = verify(s.as_ref(), &b, VerifyMode::Random { samples: 200, seed }).unwrap();
        if let Some(cx) = &report.counterexample {
            prop_assert!(!report.valid);
            prop_assert!(cx.recheck(s.as_ref()));
        }
    }
}

#[test]
fn automorphisms_preserve_decoder_validity() {
    let f = c5();
    let d = decide_ucs(&f, 3, &SearchOptions::default()).unwrap().unlabeled().unwrap().clone();
    let base: Program = Arc::new(table_to_program(d, &f).unwrap());
    let group = automorphisms(&f).unwrap();
    assert_eq!(group.len(), 10);
    for sigma in group {
        assert_eq!(permute_base(&f, &sigma).unwrap(), f);
        assert!(valid(&permute_scheme(base.clone(), &sigma).unwrap(), &f));
    }
}

/// Every maximal family at `(n, d)`, found by trying all subsets of `{0,1}^n`.
fn brute_force_classes(n: usize, d: usize) -> HashSet<String> {
    let all = 1u64 << (1 << n);
    (1..all)
        .filter_map(|mask| {
            let bits = (0..1u32 << n).filter(|b| mask >> b & 1 == 1);
            let f = Family::from_bits(n, bits, None).unwrap();
            (vc_dimension(&f) == d && is_containment_maximal(&f, d).unwrap())
                .then(|| canonical_form(&f).unwrap().to_hex())
        })
        .collect()
}

#[test]
fn enumeration_matches_brute_force() {
    for (n, d) in [(2, 1), (3, 1), (3, 2), (4, 2)] {
        let listed: Vec<String> = enumerate_candidates(n, d, 10_000_000)
            .unwrap()
            .map(|f| canonical_form(&f).unwrap().to_hex())
            .collect();
        let unique: HashSet<String> = listed.iter().cloned().collect();
        assert_eq!(unique.len(), listed.len(), "duplicates at ({n}, {d})");
        assert_eq!(unique, brute_force_classes(n, d), "({n}, {d})");
    }
}
