//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! library's algorithms; groups are expanded to their element lists and every
//! question is answered by exhaustive search.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use proptest::prelude::*;
use utlab::{PermGroup, Permutation};

/// A permutation or map as a 0-based image table.
pub type Map = Vec<usize>;

/// All elements of the group generated by `gens` (0-based tables).
pub fn elements(n: usize, gens: &[Map]) -> Vec<Map> {
    let id: Map = (0..n).collect();
    let mut seen: HashSet<Map> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Map = x.iter().map(|&i| g[i]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    out
}

pub fn group_elements(group: &PermGroup) -> Vec<Map> {
    let gens: Vec<Map> = group.generators().iter().map(zero_based).collect();
    elements(group.degree(), &gens)
}

pub fn zero_based(p: &Permutation) -> Map {
    p.images().into_iter().map(|x| x - 1).collect()
}

pub fn from_zero_based(m: &[usize]) -> Permutation {
    let one: Vec<usize> = m.iter().map(|x| x + 1).collect();
    Permutation::from_images(&one).unwrap()
}

/// Every `k`-subset of `0..n`, as sorted vectors.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn image_of_set(g: &[usize], s: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = s.iter().map(|&x| g[x]).collect();
    t.sort_unstable();
    t
}

/// The orbits of the group on `k`-sets.
pub fn set_orbits(elems: &[Map], n: usize, k: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let mut done: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    for s in subsets(n, k) {
        if done.contains(&s) {
            continue;
        }
        let orbit: BTreeSet<Vec<usize>> = elems.iter().map(|g| image_of_set(g, &s)).collect();
        done.extend(orbit.iter().cloned());
        out.push(orbit);
    }
    out
}

/// Every partition of `0..n` into exactly `k` blocks, as block labels.
pub fn partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, n: usize, k: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        if k - used > n - i {
            return;
        }
        for b in 0..=used.min(k - 1) {
            cur.push(b);
            rec(i + 1, n, k, used.max(b + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// A `k`-set is a section of a `k`-partition when its labels are distinct.
pub fn is_section(labels: &[usize], set: &[usize]) -> bool {
    let seen: HashSet<usize> = set.iter().map(|&x| labels[x]).collect();
    seen.len() == set.len() && set.len() == labels.iter().collect::<HashSet<_>>().len()
}

/// Does every orbit on `k`-sets contain a section of every `k`-partition?
pub fn kut(elems: &[Map], n: usize, k: usize) -> bool {
    let orbits = set_orbits(elems, n, k);
    partitions(n, k)
        .iter()
        .all(|p| orbits.iter().all(|o| o.iter().any(|s| is_section(p, s))))
}

/// Can every `i`-set be mapped into every `j`-set?
pub fn ij_homogeneous(elems: &[Map], n: usize, i: usize, j: usize) -> bool {
    let bigs = subsets(n, j);
    subsets(n, i).iter().all(|s| {
        bigs.iter().all(|b| {
            elems
                .iter()
                .any(|g| s.iter().all(|&x| b.binary_search(&g[x]).is_ok()))
        })
    })
}

pub fn is_transitive(elems: &[Map], n: usize) -> bool {
    let orbit: HashSet<usize> = elems.iter().map(|g| g[0]).collect();
    orbit.len() == n
}

/// A transitive group is primitive when no set through point 0 of size
/// strictly between 1 and `n` is a block.
pub fn is_primitive(elems: &[Map], n: usize) -> bool {
    for size in 2..n {
        if !n.is_multiple_of(size) {
            continue;
        }
        for rest in subsets(n - 1, size - 1) {
            let block: Vec<usize> = std::iter::once(0).chain(rest.iter().map(|x| x + 1)).collect();
            let is_block = elems.iter().all(|g| {
                let img = image_of_set(g, &block);
                img == block || img.iter().all(|x| block.binary_search(x).is_err())
            });
            if is_block {
                return false;
            }
        }
    }
    true
}

/// `a` then `b`.
pub fn compose(a: &[usize], b: &[usize]) -> Map {
    a.iter().map(|&i| b[i]).collect()
}

pub fn rank(a: &[usize]) -> usize {
    a.iter().collect::<HashSet<_>>().len()
}

/// The semigroup generated by the given maps, or `None` past `cap` elements.
pub fn semigroup(gens: &[Map], cap: usize) -> Option<Vec<Map>> {
    let mut seen: HashSet<Map> = gens.iter().cloned().collect();
    let mut queue: VecDeque<Map> = gens.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// Is `a` regular in the semigroup `s`: some `x` in `s` with `a x a = a`?
pub fn regular_in(a: &[usize], s: &[Map]) -> bool {
    s.iter().any(|x| compose(&compose(a, x), a) == a)
}

/// A random permutation of `0..n` as a 0-based table.
pub fn perm_strategy(n: usize) -> impl Strategy<Value = Map> {
    Just((0..n).collect::<Map>()).prop_shuffle()
}

/// A group on `n` points, `4 <= n <= max_n`, generated by one to three random
/// permutations.
pub fn group_strategy(max_n: usize) -> impl Strategy<Value = (usize, Vec<Map>)> {
    (4..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..=3)))
}

pub fn build(n: usize, gens: &[Map]) -> PermGroup {
    PermGroup::new(n, gens.iter().map(|g| from_zero_based(g)).collect()).unwrap()
}
