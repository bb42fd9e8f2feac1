mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use utlab::catalog::{self, small_catalog};
use utlab::set_orbits::{is_ij_homogeneous, SetOrbitIndex};
use utlab::ut::{
    aux_graph, bad_partition_search_3ut, bad_partition_sweep, has_kut, has_kut_with, orbit_apices,
    DeciderChoice, SearchOutcome, UtOptions, UtWitness,
};
use utlab::KSet;

/// No member of the brute-force orbit of the witness set is a section.
fn witness_holds_up(elems: &[Map], w: &UtWitness) -> bool {
    let rep: Vec<usize> = w.orbit_representative.iter().map(|p| p - 1).collect();
    let labels: Vec<usize> = w.partition.rgs().iter().map(|&x| x as usize).collect();
    elems
        .iter()
        .all(|g| !is_section(&labels, &image_of_set(g, &rep)))
}

fn opts(decider: DeciderChoice, prunes: bool) -> UtOptions {
    UtOptions {
        decider,
        prunes,
        ..UtOptions::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn verdicts_match_brute_force((n, gens) in group_strategy(7)) {
        let g = build(n, &gens);
        let elems = elements(n, &gens);
        for k in 2..n {
            let v = has_kut(&g, k).unwrap();
            prop_assert_eq!(v.holds(), kut(&elems, n, k), "k = {}", k);
            if let Some(w) = &v.witness {
                prop_assert!(witness_holds_up(&elems, w));
            }
        }
    }

    #[test]
    fn property_is_closed_upwards((n, gens) in group_strategy(7), seed in any::<u64>()) {
        // H is generated by G's generators and one more permutation
        let small = build(n, &gens);
        let mut bigger = gens.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p: Map = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, rng.gen_range(0..=i));
        }
        bigger.push(p);
        let big = build(n, &bigger);
        for k in 2..n {
            if has_kut(&small, k).unwrap().holds() {
                prop_assert!(has_kut(&big, k).unwrap().holds(), "k = {}", k);
            }
        }
    }
}

#[test]
fn deciders_agree_on_small_catalog() {
    for spec in small_catalog(12) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        for k in 2..=n.div_ceil(2) {
            let naive = has_kut_with(&g, k, &opts(DeciderChoice::Naive, false)).unwrap();
            let ext = has_kut_with(&g, k, &opts(DeciderChoice::Extension, false)).unwrap();
            let auto = has_kut(&g, k).unwrap();
            assert_eq!(naive.status, ext.status, "{} k={k}", spec.id());
            assert_eq!(naive.status, auto.status, "{} k={k}", spec.id());
        }
    }
}

#[test]
fn witnesses_survive_exhaustive_recheck() {
    for spec in small_catalog(9) {
        let g = catalog::build(&spec).unwrap();
        let elems = group_elements(&g);
        for k in 2..g.degree() {
            for choice in [DeciderChoice::Naive, DeciderChoice::Extension] {
                for prunes in [true, false] {
                    let v = has_kut_with(&g, k, &opts(choice, prunes)).unwrap();
                    if v.fails() {
                        let w = v.witness.as_ref().expect("failing verdicts carry witnesses");
                        assert!(witness_holds_up(&elems, w), "{} k={k}", spec.id());
                    }
                }
            }
        }
    }
}

#[test]
fn ut_descends_up_to_half() {
    for spec in small_catalog(12) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        for k in 3..=n.div_ceil(2) {
            if has_kut(&g, k).unwrap().holds() {
                assert!(has_kut(&g, k - 1).unwrap().holds(), "{} k={k}", spec.id());
            }
        }
    }
}

#[test]
fn ut_does_not_descend_near_the_top() {
    // every transitive group meets every (n-1)-partition, C6 is not 3-ut
    let g = catalog::group("C6").unwrap();
    assert!(has_kut(&g, 5).unwrap().holds());
    assert!(has_kut(&g, 4).unwrap().fails());
    assert!(has_kut(&g, 3).unwrap().fails());
}

#[test]
fn ut_is_closed_upwards_along_projective_towers() {
    let towers: &[&[&str]] = &[
        &["PSL(2,7)", "PGL(2,7)"],
        &["PSL(2,8)", "PGammaL(2,8)"],
        &["PSL(2,9)", "PGL(2,9)", "PGammaL(2,9)"],
        &["PSL(2,9)", "PSigmaL(2,9)", "PGammaL(2,9)"],
        &["PSL(2,11)", "PGL(2,11)"],
        &["AGL(1,8)", "AGammaL(1,8)"],
        &["ASL(2,3)", "AGL(2,3)"],
    ];
    for tower in towers {
        let groups: Vec<_> = tower.iter().map(|name| catalog::group(name).unwrap()).collect();
        for pair in groups.windows(2) {
            assert!(pair[1].contains_group(&pair[0]), "{tower:?}");
            for k in 2..pair[0].degree() {
                if has_kut(&pair[0], k).unwrap().holds() {
                    assert!(has_kut(&pair[1], k).unwrap().holds(), "{tower:?} k={k}");
                }
            }
        }
    }
}

#[test]
fn ut_needs_the_previous_level_homogeneity() {
    for spec in small_catalog(33) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        let top = if n <= 12 { n - 1 } else { 3 };
        for k in 2..=top {
            if has_kut(&g, k).unwrap().holds() {
                assert!(is_ij_homogeneous(&g, k - 1, k).unwrap().holds, "{} k={k}", spec.id());
            }
        }
    }
}

#[test]
fn two_ut_is_primitivity() {
    for spec in small_catalog(33) {
        let g = catalog::build(&spec).unwrap();
        if !g.is_transitive() {
            continue;
        }
        assert_eq!(has_kut(&g, 2).unwrap().holds(), g.is_primitive().unwrap(), "{}", spec.id());
        if g.degree() <= 8 {
            assert_eq!(is_primitive(&group_elements(&g), g.degree()), g.is_primitive().unwrap());
        }
    }
}

#[test]
fn ut_groups_have_connected_auxiliary_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in small_catalog(17) {
        let g = catalog::build(&spec).unwrap();
        let n = g.degree();
        for k in 3..=4.min(n - 2) {
            if !has_kut(&g, k).unwrap().holds() {
                continue;
            }
            for _ in 0..10 {
                let mut points: Vec<usize> = (1..=n).collect();
                for i in (1..n).rev() {
                    points.swap(i, rng.gen_range(0..=i));
                }
                let base = KSet::new(&points[..k - 2]).unwrap();
                let c = rng.gen_range(k..=n);
                let graph = aux_graph(&g, &base, c).unwrap();
                assert!(graph.is_connected(), "{} k={k} B={base} c={c}", spec.id());
            }
        }
    }
}

#[test]
fn aux_graph_edges_follow_the_definition() {
    let g = catalog::group("AGL(1,13)").unwrap();
    let elems = group_elements(&g);
    for c in [3, 5, 9] {
        let orbit: std::collections::HashSet<Vec<usize>> =
            elems.iter().map(|e| image_of_set(e, &[0, 1, c - 1])).collect();
        let graph = aux_graph(&g, &KSet::new(&[13]).unwrap(), c).unwrap();
        for x in 1..13 {
            for y in x + 1..13 {
                let mut s = vec![x - 1, y - 1, 12];
                s.sort_unstable();
                assert_eq!(graph.has_edge(x, y), orbit.contains(&s), "c={c} {{{x},{y}}}");
            }
        }
    }
}

#[test]
fn bad_partition_search_is_sound_on_affine_lines() {
    for p in [11, 13, 17, 19] {
        let g = catalog::group(&format!("AGL(1,{p})")).unwrap();
        let elems = group_elements(&g);
        let three_ut = has_kut(&g, 3).unwrap().holds();
        for c in orbit_apices(&g).unwrap() {
            let connected = aux_graph(&g, &KSet::new(&[p]).unwrap(), c).unwrap().is_connected();
            let result = bad_partition_search_3ut(&g, c, 2);
            if !connected {
                // the connectivity prune already settles this apex
                assert!(result.is_err() && !three_ut, "p={p} c={c}");
                continue;
            }
            for s in result.unwrap() {
                if let SearchOutcome::BadPartition { partition } = &s.outcome {
                    let w = UtWitness {
                        orbit_representative: KSet::new(&[1, 2, c]).unwrap(),
                        partition: partition.clone(),
                    };
                    assert!(witness_holds_up(&elems, &w), "p={p} c={c}: {partition}");
                    assert!(!three_ut);
                }
            }
        }
    }
}

#[test]
fn bad_partition_search_on_3ut_group_is_all_good() {
    for name in ["PGL(2,11)", "PSL(2,13)", "PGammaL(2,8)"] {
        let g = catalog::group(name).unwrap();
        assert!(has_kut(&g, 3).unwrap().holds());
        for report in bad_partition_sweep(&g).unwrap() {
            assert!(report.all_good(), "{name} apex {}", report.apex);
        }
    }
}

#[test]
fn stalled_propagation_is_closed_by_case_splitting() {
    let g = catalog::group("2^6:G2(2)@64").unwrap();
    let index = SetOrbitIndex::build(&g, 3).unwrap();
    let apices = orbit_apices(&g).unwrap();
    assert_eq!(apices.len(), index.num_orbits());
    let mut splits = 0;
    for &c in &apices {
        for s in bad_partition_search_3ut(&g, c, 2).unwrap() {
            assert!(s.outcome.is_good(), "apex {c} seed {}: {:?}", s.seed, s.outcome);
            if matches!(s.outcome, SearchOutcome::CaseSplit { .. }) {
                splits += 1;
            }
        }
    }
    assert!(splits > 0, "expected at least one seed to need case splitting");
}
