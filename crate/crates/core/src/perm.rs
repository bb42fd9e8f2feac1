//! Permutations and permutation groups given by generators.
//!
//! Points are 1-based in every public signature. Permutations act on the
//! right: `p.then(&q)` maps `i` to `q(p(i))`, so a product of generators reads
//! left to right like the word it came from.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;
use rustc_hash::FxHashSet;

use crate::error::{invalid, Error, Result};
use crate::partitions::SetPartition;

/// Largest supported degree.
pub const MAX_DEGREE: usize = 512;

/// A bijection of `{1..n}` stored as an image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    // 0-based images
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree out of range");
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images (`images[i-1]` is the image of `i`).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::PointOutOfRange {
                    point: img,
                    degree: n,
                });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::NotABijection(format!("{img} appears twice")));
            }
            out.push((img - 1) as u16);
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint cycles of 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        check_degree(degree)?;
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut touched[p - 1], true) {
                    return Err(Error::NotABijection(format!(
                        "point {p} occurs in more than one cycle position"
                    )));
                }
            }
            for (idx, &p) in cycle.iter().enumerate() {
                let next = cycle[(idx + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u16;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses cycle notation such as `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| invalid(format!("expected `(` in `{text}`")))?;
            let close = open
                .find(')')
                .ok_or_else(|| invalid(format!("unclosed cycle in `{text}`")))?;
            let body = open[..close].trim();
            if !body.is_empty() {
                let cycle = body
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .map_err(|_| invalid(format!("bad point `{}` in `{text}`", s.trim())))
                    })
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(degree, &cycles)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    #[inline]
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// 0-based image lookup.
    #[inline]
    pub(crate) fn img0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    #[inline]
    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    /// Same as [`compose`](Self::compose) without the degree check.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.img0(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.img0(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Element order (lcm of cycle lengths).
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer_lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Points moved, 1-based.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&i| self.img0(i) != i)
            .map(|i| i + 1)
            .collect()
    }
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

pub(crate) fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        Err(Error::BadDegree {
            degree: n,
            max: MAX_DEGREE,
        })
    } else {
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// A level of the stabilizer chain: base point, coset representatives
/// indexed by orbit point, and the generators added at this level.
#[derive(Clone, Debug)]
struct Level {
    reps: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
    gens: Vec<Permutation>,
}

/// Stabilizer chain with base `1, 2, 3, …` in that order.
///
/// Level `i` holds representatives of the cosets of the pointwise
/// stabilizer of `1..=i` inside the pointwise stabilizer of `1..i`.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

enum Task {
    Add(usize, Permutation),
    Reduce(usize, Permutation),
}

impl StabChain {
    /// Builds the chain with Knuth's sift-and-extend scheme, processed from a
    /// work stack instead of recursion.
    fn build(degree: usize, gens: &[Permutation]) -> StabChain {
        let levels = (0..degree)
            .map(|k| {
                let mut reps = vec![None; degree];
                reps[k] = Some(Permutation::identity(degree));
                Level {
                    reps,
                    orbit: vec![k],
                    gens: Vec::new(),
                }
            })
            .collect();
        let mut chain = StabChain { degree, levels };
        let mut stack: Vec<Task> = gens
            .iter()
            .rev()
            .filter(|g| !g.is_identity())
            .map(|g| Task::Add(0, g.clone()))
            .collect();
        while let Some(task) = stack.pop() {
            match task {
                Task::Add(k, p) => {
                    if k >= degree || chain.sift_from(k, &p).is_identity() {
                        continue;
                    }
                    let level = &mut chain.levels[k];
                    level.gens.push(p.clone());
                    for &j in level.orbit.iter() {
                        let sigma = level.reps[j].as_ref().expect("orbit rep");
                        stack.push(Task::Reduce(k, sigma.then(&p)));
                    }
                }
                Task::Reduce(k, p) => {
                    let j = p.img0(k);
                    let level = &mut chain.levels[k];
                    match &level.reps[j] {
                        Some(sigma) => {
                            let reduced = p.then(&sigma.inverse());
                            if !reduced.is_identity() {
                                stack.push(Task::Add(k + 1, reduced));
                            }
                        }
                        None => {
                            for tau in level.gens.iter() {
                                stack.push(Task::Reduce(k, p.then(tau)));
                            }
                            level.reps[j] = Some(p);
                            level.orbit.push(j);
                        }
                    }
                }
            }
        }
        for level in chain.levels.iter_mut() {
            level.orbit.sort_unstable();
        }
        chain
    }

    /// Sifts `p` through levels `k..`; returns the residue.
    fn sift_from(&self, k: usize, p: &Permutation) -> Permutation {
        let mut cur = p.clone();
        for (offset, level) in self.levels[k..].iter().enumerate() {
            let base = k + offset;
            let j = cur.img0(base);
            match &level.reps[j] {
                Some(sigma) => {
                    if j != base {
                        cur = cur.then(&sigma.inverse());
                    }
                }
                None => return cur,
            }
        }
        cur
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Orbit sizes of the base points, level by level.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift_from(0, p).is_identity()
    }

    /// Uniformly random element: one coset representative per level, multiplied
    /// from the deepest level up.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let j = level.orbit[rng.gen_range(0..level.orbit.len())];
            acc = acc.then(level.reps[j].as_ref().unwrap());
        }
        acc
    }

    /// Generators of the pointwise stabilizer of `1..=m` (strong generators
    /// living at levels `m..`).
    pub fn stabilizer_generators(&self, m: usize) -> Vec<Permutation> {
        self.levels[m.min(self.degree)..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }
}

/// A permutation group of degree `n` given by generators.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

/// A block system of a transitive group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub blocks: SetPartition,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks.blocks()[0].len()
    }

    /// True when every generator maps every block onto a block.
    pub fn is_invariant_under(&self, group: &PermGroup) -> bool {
        group.generators().iter().all(|g| {
            self.blocks
                .blocks()
                .iter()
                .all(|b| {
                    let target = self.blocks.block_index_of(g.image(b[0] as usize));
                    b.iter()
                        .all(|&x| self.blocks.block_index_of(g.image(x as usize)) == target)
                })
        })
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        check_degree(degree)?;
        if generators.is_empty() {
            return Err(Error::NoGenerators);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Self::new(degree, vec![Permutation::identity(degree)])
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Generators that are not the identity.
    pub(crate) fn moving_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.generators.iter().filter(|g| !g.is_identity())
    }

    pub fn stab_chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators))
    }

    pub fn order(&self) -> BigUint {
        self.stab_chain().order()
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().to_u64()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.stab_chain().contains(p)
    }

    /// Is every generator of `other` an element of `self`?
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.degree == self.degree && other.generators.iter().all(|g| self.contains(g))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.stab_chain().random_element(rng)
    }

    /// Orbit of the 1-based point `p`, sorted.
    pub fn orbit_of_point(&self, p: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut queue = vec![p - 1];
        seen[p - 1] = true;
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for g in self.moving_generators() {
                let y = g.img0(x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        let mut out: Vec<usize> = queue.into_iter().map(|x| x + 1).collect();
        out.sort_unstable();
        out
    }

    /// All point orbits, ordered by least element.
    pub fn orbits_on_points(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 1..=self.degree {
            if seen[p - 1] {
                continue;
            }
            let orbit = self.orbit_of_point(p);
            for &x in &orbit {
                seen[x - 1] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit_of_point(1).len() == self.degree
    }

    /// Largest `t` such that the group is `t`-transitive (0 when intransitive).
    pub fn transitivity_degree(&self) -> usize {
        let lens = self.stab_chain().orbit_lengths();
        let n = self.degree;
        lens.iter()
            .enumerate()
            .take_while(|&(i, &len)| len == n - i)
            .count()
    }

    /// A nontrivial block system, or `None` when the group is primitive.
    ///
    /// For each `β = 2..n` the finest block system with `1` and `β` in the same
    /// block is computed by union–find closure under the generators; the first
    /// nontrivial one is returned.
    pub fn block_system(&self) -> Result<Option<BlockSystem>> {
        if !self.is_transitive() {
            return Err(Error::Intransitive);
        }
        let n = self.degree;
        for beta in 1..n {
            let mut uf = UnionFind::new(n);
            let mut pending = vec![(0usize, beta)];
            uf.union(0, beta);
            while let Some((a, b)) = pending.pop() {
                for g in self.moving_generators() {
                    let (ga, gb) = (g.img0(a), g.img0(b));
                    if uf.union(ga, gb) {
                        pending.push((ga, gb));
                    }
                }
            }
            if uf.size(0) < n {
                let blocks = uf.classes();
                let blocks = SetPartition::from_blocks_0(n, blocks);
                return Ok(Some(BlockSystem { blocks }));
            }
        }
        Ok(None)
    }

    /// Primitivity of a transitive group.
    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.block_system()?.is_none())
    }

    /// Every element, by breadth-first closure over the generators.
    /// Intended as an independent check on the stabilizer chain.
    pub fn elements_by_closure(&self, cap: usize) -> Result<Vec<Permutation>> {
        let id = Permutation::identity(self.degree);
        let mut seen: FxHashSet<Permutation> = FxHashSet::default();
        seen.insert(id.clone());
        let mut queue = vec![id];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i].clone();
            i += 1;
            for g in self.moving_generators() {
                let y = x.then(g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::CapExceeded {
                            what: "element closure",
                            cap: cap as u64,
                            reached: seen.len() as u64,
                        });
                    }
                    queue.push(y);
                }
            }
        }
        Ok(queue)
    }

    /// Normal closure of `subset` in this group.
    pub fn normal_closure(&self, subset: &[Permutation]) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = subset.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return PermGroup::trivial(self.degree);
        }
        loop {
            let current = PermGroup::new(self.degree, gens.clone())?;
            let mut added = None;
            'search: for h in gens.iter() {
                for g in self.moving_generators() {
                    let conj = g.inverse().then(h).then(g);
                    if !current.contains(&conj) {
                        added = Some(conj);
                        break 'search;
                    }
                }
            }
            match added {
                Some(c) => gens.push(c),
                None => return Ok(current),
            }
        }
    }

    /// Derived subgroup, as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let gens: Vec<&Permutation> = self.moving_generators().collect();
        let mut comms = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in gens.iter().skip(i + 1) {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }
}

/// Disjoint-set forest with union by size and path halving.
#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    /// Classes as sorted 0-based lists, ordered by least element.
    pub fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, text: &str) -> Permutation {
        Permutation::parse_cycles(n, text).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|g| cyc(n, g)).collect()).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        let id = Permutation::identity(3);
        let c = cyc(3, "(1,2,3)");
        assert_eq!(id.compose(&c).unwrap(), c);
        assert_eq!(c.compose(&c).unwrap(), cyc(3, "(1,3,2)"));
        // 1 -> 2 -> 3, 2 -> 1 -> 1, 3 -> 3 -> 2
        assert_eq!(
            cyc(3, "(1,2)").compose(&cyc(3, "(2,3)")).unwrap().images(),
            vec![3, 1, 2]
        );
    }

    #[test]
    fn compose_rejects_mixed_degrees() {
        let err = Permutation::identity(3)
            .compose(&Permutation::identity(4))
            .unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn s3_cayley_table_matches_pointwise_definition() {
        let elems: Vec<Permutation> = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ]
        .iter()
        .map(|im| Permutation::from_images(im).unwrap())
        .collect();
        for p in &elems {
            for q in &elems {
                let pq = p.compose(q).unwrap();
                for i in 1..=3 {
                    assert_eq!(pq.image(i), q.image(p.image(i)));
                }
                assert!(elems.contains(&pq));
            }
        }
    }

    #[test]
    fn parse_and_display_cycles() {
        let p = cyc(6, "(1,4)(2,5,3)");
        assert_eq!(p.to_string(), "(1,4)(2,5,3)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p.order(), 6);
        assert!(Permutation::parse_cycles(3, "(1,4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1,2)(2,3)").is_err());
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(group(5, &["(1,2,3,4,5)"]).order_u64(), Some(5));
        assert_eq!(group(5, &["(1,2)", "(1,2,3,4,5)"]).order_u64(), Some(120));
        assert_eq!(group(7, &["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)", "(2,4,3,7,5,6)"]).order_u64(), Some(42));
        assert_eq!(PermGroup::trivial(4).unwrap().order_u64(), Some(1));
    }

    #[test]
    fn chain_order_matches_closure_for_m11() {
        let m11 = group(11, &["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"]);
        assert_eq!(m11.order_u64(), Some(7920));
        assert_eq!(m11.elements_by_closure(10_000).unwrap().len(), 7920);
        assert_eq!(m11.transitivity_degree(), 4);
    }

    #[test]
    fn transitivity() {
        let triv = PermGroup::trivial(3).unwrap();
        assert!(!triv.is_transitive());
        assert_eq!(triv.orbits_on_points().len(), 3);
        assert!(group(5, &["(1,2,3,4,5)"]).is_transitive());
        let g = group(4, &["(1,2)"]);
        assert!(!g.is_transitive());
        assert_eq!(g.orbits_on_points(), vec![vec![1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn primitivity() {
        let c6 = group(6, &["(1,2,3,4,5,6)"]);
        let bs = c6.block_system().unwrap().unwrap();
        assert_eq!(bs.blocks.to_string(), "1,3,5|2,4,6");
        assert!(bs.is_invariant_under(&c6));
        assert!(group(5, &["(1,2,3,4,5)"]).is_primitive().unwrap());
        let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
        let bs = d8.block_system().unwrap().unwrap();
        assert_eq!(bs.block_size(), 2);
        assert!(bs.is_invariant_under(&d8));
        assert_eq!(
            group(4, &["(1,2)"]).is_primitive().unwrap_err(),
            Error::Intransitive
        );
    }

    #[test]
    fn membership_and_derived_subgroup() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        assert!(s4.contains(&cyc(4, "(1,3)")));
        let a4 = s4.derived_subgroup().unwrap();
        assert_eq!(a4.order_u64(), Some(12));
        assert!(!a4.contains(&cyc(4, "(1,2)")));
        assert!(a4.contains(&cyc(4, "(1,2)(3,4)")));
    }
}
