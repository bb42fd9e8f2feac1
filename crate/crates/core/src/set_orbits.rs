//! Orbits of a permutation group on `k`-subsets, and the `k`-homogeneity and
//! `(i,j)`-homogeneity deciders built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{invalid, Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Default cap on the number of sets any orbit computation may touch.
pub const DEFAULT_SET_CAP: u64 = 10_000_000;

/// A nonempty set of 1-based points, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSet {
    points: SmallVec<[u16; 8]>,
}

impl KSet {
    /// Builds a set from 1-based points in any order; duplicates and `0` are rejected.
    pub fn new(points: &[usize]) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("a k-set must be nonempty"));
        }
        let mut v: SmallVec<[u16; 8]> = SmallVec::with_capacity(points.len());
        for &p in points {
            if p == 0 || p > u16::MAX as usize {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: crate::perm::MAX_DEGREE,
                });
            }
            v.push(p as u16);
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid(format!("repeated point in {points:?}")));
        }
        Ok(KSet { points: v })
    }

    /// `{1..k}`.
    pub fn initial(k: usize) -> Self {
        KSet {
            points: (1..=k as u16).collect(),
        }
    }

    /// From sorted, distinct 0-based points.
    pub(crate) fn from_sorted0(points: &[u16]) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        KSet {
            points: points.iter().map(|&x| x + 1).collect(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.points.iter().map(|&p| p as usize)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max_point(&self) -> usize {
        self.points.last().map_or(0, |&p| p as usize)
    }

    pub fn contains(&self, p: usize) -> bool {
        self.points.binary_search(&(p as u16)).is_ok()
    }

    pub fn is_subset_of(&self, other: &KSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    /// Image under `g`, re-sorted.
    pub fn image(&self, g: &Permutation) -> KSet {
        let mut v: SmallVec<[u16; 8]> = self.points.iter().map(|&p| g.raw()[p as usize - 1] + 1).collect();
        v.sort_unstable();
        KSet { points: v }
    }

    /// 0-based sorted points.
    pub(crate) fn zero_based(&self) -> SmallVec<[u16; 8]> {
        self.points.iter().map(|&p| p - 1).collect()
    }

    /// Complement in `{1..n}`; `None` when the set is all of `{1..n}`.
    pub fn complement(&self, n: usize) -> Option<KSet> {
        let pts: Vec<usize> = (1..=n).filter(|&p| !self.contains(p)).collect();
        if pts.is_empty() {
            None
        } else {
            Some(KSet::new(&pts).expect("complement is a valid set"))
        }
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KSet{self}")
    }
}

impl FromStr for KSet {
    type Err = Error;

    /// Accepts `1,2,3` or `{1,2,3}`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let pts = body
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("bad point `{}`", p.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        KSet::new(&pts)
    }
}

impl Serialize for KSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.points.iter())
    }
}

impl<'de> Deserialize<'de> for KSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        KSet::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient in `u64`, saturating at `u64::MAX`.
pub fn binomial_u64(n: usize, k: usize) -> u64 {
    u64::try_from(binomial(n, k)).unwrap_or(u64::MAX)
}

/// Colex ranking of the `k`-subsets of `{0..n-1}`.
#[derive(Clone, Debug)]
pub struct Colex {
    n: usize,
    k: usize,
    // table[m][r] = C(m, r) for m <= n, r <= k
    table: Vec<Vec<u64>>,
}

impl Colex {
    pub fn new(n: usize, k: usize) -> Self {
        let mut table = vec![vec![0u64; k + 1]; n + 1];
        for m in 0..=n {
            table[m][0] = 1;
            for r in 1..=k.min(m) {
                table[m][r] = table[m - 1][r - 1].saturating_add(if r < m {
                    table[m - 1][r]
                } else {
                    0
                });
            }
        }
        Colex { n, k, table }
    }

    pub fn total(&self) -> u64 {
        self.table[self.n][self.k]
    }

    /// Rank of sorted distinct 0-based points.
    #[inline]
    pub fn rank(&self, s: &[u16]) -> usize {
        s.iter()
            .enumerate()
            .map(|(i, &x)| self.table[x as usize][i + 1] as usize)
            .sum()
    }

    /// Inverse of [`rank`](Self::rank).
    pub fn unrank(&self, mut r: usize, out: &mut [u16]) {
        let mut m = self.n;
        for i in (0..self.k).rev() {
            // largest m with C(m, i+1) <= r
            m -= 1;
            while self.table[m][i + 1] as usize > r {
                m -= 1;
            }
            out[i] = m as u16;
            r -= self.table[m][i + 1] as usize;
        }
    }
}

/// Orbit labels for every `k`-set of `{1..n}`.
///
/// Orbits are numbered in order of their lexicographically least member.
#[derive(Clone, Debug)]
pub struct SetOrbitIndex {
    n: usize,
    k: usize,
    colex: Colex,
    labels: Vec<u32>,
    reps: Vec<KSet>,
    sizes: Vec<u64>,
}

impl SetOrbitIndex {
    pub fn build(group: &PermGroup, k: usize) -> Result<Self> {
        Self::build_with_cap(group, k, DEFAULT_SET_CAP)
    }

    pub fn build_with_cap(group: &PermGroup, k: usize, cap: u64) -> Result<Self> {
        let n = group.degree();
        if k == 0 || k > n {
            return Err(invalid(format!("k = {k} must lie in 1..={n}")));
        }
        let total = binomial_u64(n, k);
        if total > cap {
            return Err(Error::CapExceeded {
                what: "k-set orbit index",
                cap,
                reached: total,
            });
        }
        let colex = Colex::new(n, k);
        let gens: Vec<&Permutation> = group.moving_generators().collect();
        const UNSET: u32 = u32::MAX;
        let mut labels = vec![UNSET; total as usize];
        let mut reps: Vec<SmallVec<[u16; 8]>> = Vec::new();
        let mut sizes = Vec::new();
        let mut queue: Vec<usize> = Vec::new();
        let mut cur = vec![0u16; k];
        let mut img = vec![0u16; k];
        for start in 0..total as usize {
            if labels[start] != UNSET {
                continue;
            }
            let id = reps.len() as u32;
            labels[start] = id;
            queue.clear();
            queue.push(start);
            colex.unrank(start, &mut cur);
            let mut best: SmallVec<[u16; 8]> = SmallVec::from_slice(&cur);
            let mut head = 0;
            while head < queue.len() {
                let r = queue[head];
                head += 1;
                colex.unrank(r, &mut cur);
                if cur[..] < best[..] {
                    best = SmallVec::from_slice(&cur);
                }
                for g in &gens {
                    for (dst, &x) in img.iter_mut().zip(cur.iter()) {
                        *dst = g.raw()[x as usize];
                    }
                    img.sort_unstable();
                    let s = colex.rank(&img);
                    if labels[s] == UNSET {
                        labels[s] = id;
                        queue.push(s);
                    }
                }
            }
            reps.push(best);
            sizes.push(queue.len() as u64);
        }
        // relabel by lexicographic order of representatives
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by(|&a, &b| reps[a].cmp(&reps[b]));
        let mut new_id = vec![0u32; reps.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new as u32;
        }
        for l in labels.iter_mut() {
            *l = new_id[*l as usize];
        }
        let reps = order.iter().map(|&o| KSet::from_sorted0(&reps[o])).collect();
        let sizes = order.iter().map(|&o| sizes[o]).collect();
        Ok(SetOrbitIndex {
            n,
            k,
            colex,
            labels,
            reps,
            sizes,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_orbits(&self) -> usize {
        self.reps.len()
    }

    /// Lexicographically least member of each orbit.
    pub fn representatives(&self) -> &[KSet] {
        &self.reps
    }

    pub fn orbit_sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Orbit id of a `k`-set.
    pub fn label_of(&self, s: &KSet) -> usize {
        self.labels[self.colex.rank(&s.zero_based())] as usize
    }

    /// Orbit id of sorted 0-based points.
    #[inline]
    pub fn label_of_sorted0(&self, s: &[u16]) -> usize {
        self.labels[self.colex.rank(s)] as usize
    }

    pub fn colex(&self) -> &Colex {
        &self.colex
    }

    /// All members of orbit `id`, in lexicographic order.
    pub fn members(&self, id: usize) -> Vec<KSet> {
        let mut buf = vec![0u16; self.k];
        let mut out: Vec<KSet> = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l as usize == id)
            .map(|(r, _)| {
                self.colex.unrank(r, &mut buf);
                KSet::from_sorted0(&buf)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Members of orbit `id` as sorted 0-based point arrays, in colex order.
    pub fn members_raw(&self, id: usize) -> Vec<SmallVec<[u16; 8]>> {
        let mut buf = vec![0u16; self.k];
        self.labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l as usize == id)
            .map(|(r, _)| {
                self.colex.unrank(r, &mut buf);
                SmallVec::from_slice(&buf)
            })
            .collect()
    }

    pub fn orbits(&self) -> Vec<KSetOrbit> {
        (0..self.num_orbits())
            .map(|id| KSetOrbit {
                representative: self.reps[id].clone(),
                members: self.members(id),
            })
            .collect()
    }
}

/// One orbit of a group on `k`-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSetOrbit {
    pub representative: KSet,
    /// Members in lexicographic order; the first is the representative.
    pub members: Vec<KSet>,
}

impl KSetOrbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, s: &KSet) -> bool {
        self.members.binary_search(s).is_ok()
    }
}

/// Breadth-first orbit of a single set.
pub fn orbit_of_set(group: &PermGroup, s: &KSet) -> Result<KSetOrbit> {
    orbit_of_set_with_cap(group, s, DEFAULT_SET_CAP)
}

pub fn orbit_of_set_with_cap(group: &PermGroup, s: &KSet, cap: u64) -> Result<KSetOrbit> {
    if s.max_point() > group.degree() {
        return Err(Error::PointOutOfRange {
            point: s.max_point(),
            degree: group.degree(),
        });
    }
    let mut seen: FxHashSet<KSet> = FxHashSet::default();
    seen.insert(s.clone());
    let mut queue = vec![s.clone()];
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        for g in group.moving_generators() {
            let img = cur.image(g);
            if !seen.contains(&img) {
                if seen.len() as u64 >= cap {
                    return Err(Error::CapExceeded {
                        what: "set orbit",
                        cap,
                        reached: seen.len() as u64 + 1,
                    });
                }
                seen.insert(img.clone());
                queue.push(img);
            }
        }
    }
    queue.sort_unstable();
    Ok(KSetOrbit {
        representative: queue[0].clone(),
        members: queue,
    })
}

/// Every orbit on `k`-sets, ordered by representative.
pub fn orbits_on_ksets(group: &PermGroup, k: usize) -> Result<Vec<KSetOrbit>> {
    Ok(SetOrbitIndex::build(group, k)?.orbits())
}

/// Is the group transitive on `k`-sets?
pub fn is_k_homogeneous(group: &PermGroup, k: usize) -> Result<bool> {
    let n = group.degree();
    if k == 0 || k > n {
        return Err(invalid(format!("k = {k} must lie in 1..={n}")));
    }
    let kk = if 2 * k > n { n - k } else { k };
    if kk == 0 {
        return Ok(true);
    }
    let orbit = orbit_of_set(group, &KSet::initial(kk))?;
    Ok(orbit.size() as u64 == binomial_u64(n, kk))
}

/// Outcome of an `(i,j)`-homogeneity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IjVerdict {
    pub holds: bool,
    /// On failure: an `i`-set `I` and a `j`-set `J` such that no image of `I`
    /// lies inside `J`.
    pub witness: Option<(KSet, KSet)>,
}

/// Decides whether every `i`-set can be mapped into every `j`-set.
pub fn is_ij_homogeneous(group: &PermGroup, i: usize, j: usize) -> Result<IjVerdict> {
    let n = group.degree();
    if i == 0 || i > j || j > n {
        return Err(invalid(format!("need 1 <= i <= j <= n, got i={i}, j={j}, n={n}")));
    }
    if j == n {
        // every i-set lies inside {1..n}
        return Ok(IjVerdict {
            holds: true,
            witness: None,
        });
    }
    // (i,j) and (n-j,n-i) are equivalent: work on the side with fewer sets.
    let direct_cost = binomial(n, i).max(binomial(n, j));
    let dual_cost = binomial(n, n - j).max(binomial(n, n - i));
    if dual_cost < direct_cost && n - j >= 1 {
        let dual = ij_direct(group, n - j, n - i)?;
        return Ok(match dual {
            None => IjVerdict {
                holds: true,
                witness: None,
            },
            Some((a, b)) => IjVerdict {
                holds: false,
                // no g with a g ⊆ b  ⇔  no h with (b^c) h ⊆ a^c
                witness: Some((
                    b.complement(n).expect("proper subset"),
                    a.complement(n).expect("proper subset"),
                )),
            },
        });
    }
    Ok(match ij_direct(group, i, j)? {
        None => IjVerdict {
            holds: true,
            witness: None,
        },
        Some(w) => IjVerdict {
            holds: false,
            witness: Some(w),
        },
    })
}

fn ij_direct(group: &PermGroup, i: usize, j: usize) -> Result<Option<(KSet, KSet)>> {
    let small = SetOrbitIndex::build(group, i)?;
    let big = SetOrbitIndex::build(group, j)?;
    let m = small.num_orbits();
    let mut covered = vec![false; m];
    let mut sub = vec![0u16; i];
    for rep in big.representatives() {
        covered.iter_mut().for_each(|c| *c = false);
        let pts = rep.zero_based();
        let mut hit = 0;
        for_each_subset(&pts, i, &mut sub, &mut |s| {
            let l = small.label_of_sorted0(s);
            if !covered[l] {
                covered[l] = true;
                hit += 1;
            }
            hit < m
        });
        if hit < m {
            let missing = covered.iter().position(|&c| !c).expect("uncovered orbit");
            return Ok(Some((small.representatives()[missing].clone(), rep.clone())));
        }
    }
    Ok(None)
}

/// Calls `f` on every `r`-subset of the sorted slice `pts` (in lex order)
/// until it returns `false`.
pub(crate) fn for_each_subset(
    pts: &[u16],
    r: usize,
    buf: &mut [u16],
    f: &mut dyn FnMut(&[u16]) -> bool,
) {
    let m = pts.len();
    if r > m {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        for (b, &x) in buf.iter_mut().zip(idx.iter()) {
            *b = pts[x];
        }
        if !f(&buf[..r]) {
            return;
        }
        let mut t = r;
        loop {
            if t == 0 {
                return;
            }
            t -= 1;
            if idx[t] != t + m - r {
                break;
            }
            if t == 0 {
                return;
            }
        }
        idx[t] += 1;
        for u in t + 1..r {
            idx[u] = idx[u - 1] + 1;
        }
    }
}

/// The necessary condition `|G|·k ≥ C(n,k)` for `(k,k+1)`-homogeneity.
pub fn order_bound_pass(group: &PermGroup, k: usize) -> bool {
    group.order() * BigUint::from(k) >= binomial(group.degree(), k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(
            n,
            gens.iter()
                .map(|g| Permutation::parse_cycles(n, g).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn symmetric(n: usize) -> PermGroup {
        let cycle: Vec<usize> = (1..=n).collect();
        PermGroup::new(
            n,
            vec![
                Permutation::from_cycles(n, &[vec![1, 2]]).unwrap(),
                Permutation::from_cycles(n, &[cycle]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn colex_round_trip() {
        let c = Colex::new(9, 4);
        assert_eq!(c.total(), 126);
        let mut buf = [0u16; 4];
        for r in 0..126 {
            c.unrank(r, &mut buf);
            assert!(buf.windows(2).all(|w| w[0] < w[1]));
            assert_eq!(c.rank(&buf), r);
        }
    }

    #[test]
    fn orbit_of_pairs() {
        let s4 = symmetric(4);
        assert_eq!(orbit_of_set(&s4, &KSet::initial(2)).unwrap().size(), 6);
        let c5 = group(5, &["(1,2,3,4,5)"]);
        let o = orbit_of_set(&c5, &KSet::initial(2)).unwrap();
        let expect: Vec<KSet> = [[1, 2], [1, 5], [2, 3], [3, 4], [4, 5]]
            .iter()
            .map(|p| KSet::new(p).unwrap())
            .collect();
        assert_eq!(o.members, expect);
    }

    #[test]
    fn orbits_partition_all_sets() {
        let c7 = group(7, &["(1,2,3,4,5,6,7)"]);
        for k in 1..=7 {
            let orbits = orbits_on_ksets(&c7, k).unwrap();
            let total: usize = orbits.iter().map(|o| o.size()).sum();
            assert_eq!(total as u64, binomial_u64(7, k));
            let reps: Vec<_> = orbits.iter().map(|o| o.representative.clone()).collect();
            let mut sorted = reps.clone();
            sorted.sort();
            assert_eq!(reps, sorted);
            for o in &orbits {
                assert_eq!(o.members[0], o.representative);
            }
        }
        assert_eq!(orbits_on_ksets(&symmetric(6), 3).unwrap().len(), 1);
    }

    #[test]
    fn homogeneity() {
        assert!(is_k_homogeneous(&symmetric(5), 3).unwrap());
        let c5 = group(5, &["(1,2,3,4,5)"]);
        assert!(!is_k_homogeneous(&c5, 2).unwrap());
        assert!(is_ij_homogeneous(&c5, 2, 3).unwrap().holds);
        let v = is_ij_homogeneous(&c5, 2, 2).unwrap();
        assert!(!v.holds);
        let (i, j) = v.witness.unwrap();
        let o = orbit_of_set(&c5, &i).unwrap();
        assert!(!o.members.iter().any(|m| m.is_subset_of(&j)));
    }

    #[test]
    fn order_bound_examples() {
        // x -> x+1 and x -> 2x on GF(11), labelled 1..11
        let shift: Vec<usize> = (0..11).map(|x| (x + 1) % 11 + 1).collect();
        let mul: Vec<usize> = (0..11).map(|x| (2 * x) % 11 + 1).collect();
        let agl = PermGroup::new(
            11,
            vec![
                Permutation::from_images(&shift).unwrap(),
                Permutation::from_images(&mul).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(agl.order_u64(), Some(110));
        assert!(order_bound_pass(&agl, 4));
        assert!(order_bound_pass(&symmetric(7), 3));
    }

    #[test]
    fn subset_enumeration() {
        let pts = [0u16, 2, 5, 7, 9];
        let mut buf = [0u16; 3];
        let mut seen = Vec::new();
        for_each_subset(&pts, 3, &mut buf, &mut |s| {
            seen.push(s.to_vec());
            true
        });
        assert_eq!(seen.len(), 10);
        assert_eq!(seen[0], vec![0, 2, 5]);
        assert_eq!(seen[9], vec![5, 7, 9]);
        let mut one = Vec::new();
        for_each_subset(&pts, 5, &mut [0u16; 5], &mut |s| {
            one.push(s.to_vec());
            true
        });
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn kset_parse_and_display() {
        let s: KSet = "{3,1,2}".parse().unwrap();
        assert_eq!(s.to_string(), "{1,2,3}");
        assert!("1,1".parse::<KSet>().is_err());
        assert_eq!(s.complement(5).unwrap().to_string(), "{4,5}");
    }
}
