mod common;

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::*;
use utlab::catalog::{self, small_catalog};
use utlab::set_orbits::{binomial, is_ij_homogeneous, is_k_homogeneous, orbits_on_ksets};
use utlab::ut::has_kut;

fn zero(s: &utlab::KSet) -> Vec<usize> {
    s.iter().map(|p| p - 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orbits_match_brute_force((n, gens) in group_strategy(7), k in 1..7usize) {
        prop_assume!(k <= n);
        let g = build(n, &gens);
        let expected: BTreeSet<BTreeSet<Vec<usize>>> =
            set_orbits(&elements(n, &gens), n, k).into_iter().collect();
        let orbits = orbits_on_ksets(&g, k).unwrap();
        let total: usize = orbits.iter().map(|o| o.size()).sum();
        prop_assert_eq!(total as u64, binomial(n, k).to_u64().unwrap());
        let got: BTreeSet<BTreeSet<Vec<usize>>> = orbits
            .iter()
            .map(|o| o.members.iter().map(zero).collect())
            .collect();
        prop_assert_eq!(got, expected);
        prop_assert_eq!(is_k_homogeneous(&g, k).unwrap(), orbits.len() == 1);
    }

    #[test]
    fn ij_homogeneity_matches_brute_force((n, gens) in group_strategy(6)) {
        let g = build(n, &gens);
        let elems = elements(n, &gens);
        for i in 1..=n {
            for j in i..=n {
                let v = is_ij_homogeneous(&g, i, j).unwrap();
                prop_assert_eq!(v.holds, ij_homogeneous(&elems, n, i, j), "({}, {})", i, j);
                if let Some((small, big)) = v.witness {
                    prop_assert_eq!((small.len(), big.len()), (i, j));
                    let (small, big) = (zero(&small), zero(&big));
                    prop_assert!(elems
                        .iter()
                        .all(|e| !small.iter().all(|x| big.contains(&e[*x]))));
                }
            }
        }
    }
}

#[test]
fn ij_failure_rules_out_ut() {
    for spec in small_catalog(12) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        for k in 1..n - 1 {
            if !is_ij_homogeneous(&g, k, k + 1).unwrap().holds {
                assert!(!has_kut(&g, k + 1).unwrap().holds(), "{} k={}", spec.id(), k + 1);
            }
        }
    }
}

#[test]
fn homogeneity_descends_below_half() {
    for spec in small_catalog(12) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        for k in 2..=n / 2 {
            if is_k_homogeneous(&g, k).unwrap() {
                assert!(is_k_homogeneous(&g, k - 1).unwrap(), "{} k={k}", spec.id());
            }
        }
    }
}

#[test]
fn ij_homogeneity_is_self_dual() {
    for spec in small_catalog(10) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        for i in 1..n {
            for j in i..n {
                assert_eq!(
                    is_ij_homogeneous(&g, i, j).unwrap().holds,
                    is_ij_homogeneous(&g, n - j, n - i).unwrap().holds,
                    "{} ({i},{j})",
                    spec.id()
                );
            }
        }
    }
}
