use std::collections::BTreeSet;

use proptest::prelude::*;

use utlab::catalog;
use utlab::num_theory::{
    agl_criterion, consecutive_qr_shortcut, is_prime, sieve_problem1, sixth_root_shortcut, subgroup_order,
};
use utlab::ut::{aux_graph, has_kut};
use utlab::KSet;

/// The subgroup of `GF(p)*` generated by `gens`, by repeated multiplication.
fn generated(p: u64, gens: &[u64]) -> BTreeSet<u64> {
    let mut set = BTreeSet::from([1u64]);
    loop {
        let next: BTreeSet<u64> = set
            .iter()
            .flat_map(|&x| gens.iter().map(move |&g| x * g % p))
            .chain(set.iter().copied())
            .collect();
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

fn primes(lo: u64, hi: u64) -> impl Iterator<Item = u64> {
    (lo..=hi).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
}

proptest! {
    #[test]
    fn subgroup_orders_divide_the_group_order(pi in 0usize..60, gens in prop::collection::vec(1u64..1000, 1..4)) {
        let p = primes(3, 300).nth(pi).unwrap();
        let gens: Vec<u64> = gens.into_iter().map(|g| g % (p - 1) + 1).collect();
        let order = subgroup_order(p, &gens).unwrap();
        prop_assert_eq!((p - 1) % order, 0);
        prop_assert_eq!(order as usize, generated(p, &gens).len());
    }
}

#[test]
fn primality_matches_trial_division() {
    let expected: Vec<u64> = primes(2, 5000).collect();
    let got: Vec<u64> = (0..=5000).filter(|&n| is_prime(n)).collect();
    assert_eq!(got, expected);
}

#[test]
fn shortcuts_only_report_proper_subgroups() {
    for p in primes(5, 2000) {
        for c in [sixth_root_shortcut(p), consecutive_qr_shortcut(p)].into_iter().flatten() {
            assert!(generated(p, &[p - 1, c, c - 1]).len() < (p - 1) as usize, "p={p} c={c}");
        }
    }
}

#[test]
fn congruence_corollaries() {
    for p in primes(5, 200) {
        let verdict = agl_criterion(p).unwrap().verdict;
        if p % 3 == 1 && p > 7 {
            assert!(!verdict, "p={p}");
        }
        if p % 4 == 1 && p > 5 {
            assert!(!verdict, "p={p}");
        }
    }
}

#[test]
fn criterion_matches_decider_and_components_are_cosets() {
    for p in primes(5, 23) {
        let report = agl_criterion(p).unwrap();
        let g = catalog::group(&format!("AGL(1,{p})")).unwrap();
        assert_eq!(report.verdict, has_kut(&g, 3).unwrap().holds(), "p={p}");
        // field element e is point e + 1
        let zero = KSet::new(&[1]).unwrap();
        for &c in &report.witnesses {
            let h = generated(p, &[p - 1, c, c - 1]);
            let graph = aux_graph(&g, &zero, c as usize + 1).unwrap();
            assert!(!graph.is_connected(), "p={p} c={c}");
            let component = graph
                .components()
                .into_iter()
                .find(|comp| comp.contains(&2))
                .unwrap();
            let expected: Vec<usize> = h.iter().map(|&x| x as usize + 1).collect();
            assert_eq!(component, expected, "p={p} c={c}");
        }
    }
}

#[test]
fn sieve_lists_primes_eleven_mod_twelve() {
    let rows = sieve_problem1(1000);
    let expected: Vec<u64> = primes(11, 1000).filter(|p| p % 12 == 11).collect();
    assert_eq!(rows.iter().map(|r| r.p).collect::<Vec<_>>(), expected);
    for r in rows {
        assert_eq!(r.verdict, agl_criterion(r.p).unwrap().verdict, "p={}", r.p);
        if let (Some(c), Some(o)) = (r.min_witness, r.witness_order) {
            assert_eq!(generated(r.p, &[r.p - 1, c, c - 1]).len() as u64, o);
        }
    }
}
