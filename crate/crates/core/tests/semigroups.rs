mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::*;
use utlab::catalog::{self, small_catalog};
use utlab::semigroup::{
    closure_with_group, is_regular_in, is_regular_semigroup, is_regular_semigroup_with_units,
    regular_for_all_rank_k, t_compose,
};
use utlab::{PermGroup, Transformation};

fn transformation(m: &[usize]) -> Transformation {
    Transformation::new(&m.iter().map(|x| x + 1).collect::<Vec<_>>()).unwrap()
}

fn zero(t: &Transformation) -> Map {
    t.images().into_iter().map(|x| x - 1).collect()
}

/// `⟨a, G⟩` by brute force, or `None` when it is too large.
fn closure(group: &PermGroup, a: &[usize], cap: usize) -> Option<Vec<Map>> {
    let mut gens: Vec<Map> = group.generators().iter().map(zero_based).collect();
    gens.push(a.to_vec());
    semigroup(&gens, cap)
}

fn map_strategy(n: usize) -> impl Strategy<Value = Map> {
    prop::collection::vec(0..n, n)
}

fn group_and_map(max_n: usize) -> impl Strategy<Value = (usize, Vec<Map>, Map)> {
    group_strategy(max_n).prop_flat_map(|(n, gens)| (Just(n), Just(gens), map_strategy(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regularity_matches_the_definition((n, gens, a) in group_and_map(6)) {
        let g = build(n, &gens);
        let Some(s) = closure(&g, &a, 60_000) else { return Ok(()) };
        let check = is_regular_in(&transformation(&a), &g).unwrap();
        prop_assert_eq!(check.regular, regular_in(&a, &s));
        if let Some(p) = check.witness {
            prop_assert!(g.contains(&p));
            let aga = compose(&compose(&a, &zero_based(&p)), &a);
            prop_assert_eq!(rank(&aga), rank(&a));
        }
    }

    #[test]
    fn regular_a_makes_its_rank_class_regular((n, gens, a) in group_and_map(6)) {
        let g = build(n, &gens);
        prop_assume!(is_regular_in(&transformation(&a), &g).unwrap().regular);
        let Some(s) = closure(&g, &a, 60_000) else { return Ok(()) };
        let r = rank(&a);
        for b in s.iter().filter(|b| rank(b) == r) {
            prop_assert!(regular_in(b, &s), "{:?}", b);
        }
    }

    #[test]
    fn regularity_is_invariant_under_units((n, gens, a) in group_and_map(7), picks in (0..5040usize, 0..5040usize)) {
        let g = build(n, &gens);
        let elems = elements(n, &gens);
        let (x, y) = (&elems[picks.0 % elems.len()], &elems[picks.1 % elems.len()]);
        let moved = compose(&compose(x, &a), y);
        prop_assert_eq!(
            is_regular_in(&transformation(&a), &g).unwrap().regular,
            is_regular_in(&transformation(&moved), &g).unwrap().regular
        );
    }

    #[test]
    fn rank_of_a_product_is_at_most_either_rank((a, b) in (1..12usize).prop_flat_map(|n| (map_strategy(n), map_strategy(n)))) {
        let ab = t_compose(&transformation(&a), &transformation(&b)).unwrap();
        prop_assert_eq!(zero(&ab), compose(&a, &b));
        prop_assert!(ab.rank() <= transformation(&a).rank().min(transformation(&b).rank()));
    }

    #[test]
    fn closure_and_semigroup_regularity_match_brute_force((n, gens, a) in group_and_map(5)) {
        let g = build(n, &gens);
        let Some(s) = closure(&g, &a, 20_000) else { return Ok(()) };
        let got = closure_with_group(&transformation(&a), &g, 20_000).unwrap();
        let got_set: HashSet<Map> = got.iter().map(zero).collect();
        prop_assert_eq!(got_set, s.iter().cloned().collect::<HashSet<_>>());
        let expected = s.iter().all(|b| regular_in(b, &s));
        prop_assert_eq!(is_regular_semigroup(&got).regular, expected);
        prop_assert_eq!(is_regular_semigroup_with_units(&got, &g).unwrap().regular, expected);
    }
}

/// Every rank-`k` map is regular in `⟨a, G⟩` exactly when `G` has the `k`-ut
/// property; checked over all maps for small catalog groups.
#[test]
fn all_rank_k_maps_regular_iff_ut() {
    for spec in small_catalog(6) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        let elems = group_elements(&g);
        let mut all_regular = vec![true; n + 1];
        let mut a = vec![0usize; n];
        loop {
            let r = rank(&a);
            if all_regular[r] && !is_regular_in(&transformation(&a), &g).unwrap().regular {
                all_regular[r] = false;
            }
            // next map in lexicographic order
            let mut i = n;
            while i > 0 && a[i - 1] == n - 1 {
                a[i - 1] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
            a[i - 1] += 1;
        }
        for k in 2..n {
            assert_eq!(all_regular[k], kut(&elems, n, k), "{} k={k}", spec.id());
            assert_eq!(all_regular[k], regular_for_all_rank_k(&g, k).unwrap(), "{} k={k}", spec.id());
        }
    }
}
