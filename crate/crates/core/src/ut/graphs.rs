//! Auxiliary graphs on the points outside a fixed set, built from one orbit on
//! `(t+1)`-sets, and the fixpoint search for bad 3-partitions that uses them.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partitions::SetPartition;
use crate::perm::{PermGroup, UnionFind};
use crate::set_orbits::{orbit_of_set, KSet, SetOrbitIndex};

/// A simple graph on `{1..n}` minus a removed set, with the apex of the orbit
/// it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxGraph {
    base: KSet,
    apex: usize,
    removed: Vec<bool>,
    // sorted neighbour lists, 0-based
    adj: Vec<Vec<u16>>,
}

impl AuxGraph {
    fn from_pairs(n: usize, base: KSet, apex: usize, pairs: impl Iterator<Item = (u16, u16)>) -> Self {
        let mut removed = vec![false; n];
        for p in base.iter() {
            removed[p - 1] = true;
        }
        let mut adj = vec![Vec::new(); n];
        for (x, y) in pairs {
            debug_assert!(!removed[x as usize] && !removed[y as usize]);
            adj[x as usize].push(y);
            adj[y as usize].push(x);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        AuxGraph {
            base,
            apex,
            removed,
            adj,
        }
    }

    pub fn degree(&self) -> usize {
        self.adj.len()
    }

    /// The removed points (`B` for `G(B,c)`, `C` for `Γ(C,c)`).
    pub fn base(&self) -> &KSet {
        &self.base
    }

    pub fn apex(&self) -> usize {
        self.apex
    }

    /// Vertices, 1-based and ascending.
    pub fn vertices(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&p| !self.removed[p - 1]).collect()
    }

    /// Edges `(x, y)` with `x < y`, 1-based, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, list) in self.adj.iter().enumerate() {
            for &y in list {
                if (y as usize) > x {
                    out.push((x + 1, y as usize + 1));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        x >= 1
            && y >= 1
            && x <= self.degree()
            && y <= self.degree()
            && self.adj[x - 1].binary_search(&(y as u16 - 1)).is_ok()
    }

    /// Neighbours of `x`, 1-based.
    pub fn neighbours(&self, x: usize) -> Vec<usize> {
        self.adj[x - 1].iter().map(|&y| y as usize + 1).collect()
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut uf = UnionFind::new(n);
        for (x, list) in self.adj.iter().enumerate() {
            for &y in list {
                uf.union(x, y as usize);
            }
        }
        uf.classes()
            .into_iter()
            .filter(|c| !self.removed[c[0]])
            .map(|c| c.into_iter().map(|x| x + 1).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Breadth-first distances from the vertex `source`, indexed by point − 1;
    /// `None` for removed or unreachable points.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        bfs(&self.adj, &[source as u16 - 1])
            .into_iter()
            .map(|d| (d != usize::MAX).then_some(d))
            .collect()
    }
}

fn bfs(adj: &[Vec<u16>], sources: &[u16]) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s as usize] == usize::MAX {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
    }
    while let Some(x) = queue.pop_front() {
        let dx = dist[x as usize];
        for &y in &adj[x as usize] {
            if dist[y as usize] == usize::MAX {
                dist[y as usize] = dx + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

fn pair_without<'a>(m: &'a [u16], skip: &'a [u16]) -> impl Iterator<Item = u16> + 'a {
    m.iter().copied().filter(move |x| !skip.contains(x))
}

/// `G(B,c)`: pairs `{x,y}` outside `B` with `{x,y} ∪ B` in the orbit of
/// `{1,…,t,c}`, where `t = |B| + 1`.
pub fn aux_graph(group: &PermGroup, base: &KSet, c: usize) -> Result<AuxGraph> {
    let n = group.degree();
    let t = base.len() + 1;
    if c <= t || c > n {
        return Err(invalid(format!("apex {c} must lie in {}..={n}", t + 1)));
    }
    if base.max_point() > n {
        return Err(Error::PointOutOfRange {
            point: base.max_point(),
            degree: n,
        });
    }
    let mut seed: Vec<usize> = (1..=t).collect();
    seed.push(c);
    let orbit = orbit_of_set(group, &KSet::new(&seed)?)?;
    let b0 = base.zero_based();
    let pairs = orbit.members.iter().filter_map(|m| {
        if !base.is_subset_of(m) {
            return None;
        }
        let z = m.zero_based();
        let mut rest = pair_without(&z, &b0);
        Some((rest.next()?, rest.next()?))
    });
    let pairs: Vec<(u16, u16)> = pairs.collect();
    Ok(AuxGraph::from_pairs(n, base.clone(), c, pairs.into_iter()))
}

/// `G(B,c)` for the orbit with id `orbit` of an index on `(|B|+2)`-sets.
pub(crate) fn aux_graph_of_orbit(index: &SetOrbitIndex, orbit: usize, base: &KSet) -> AuxGraph {
    let n = index.degree();
    let b0 = base.zero_based();
    let apex = index.representatives()[orbit].max_point();
    let pairs: Vec<(u16, u16)> = index
        .members_raw(orbit)
        .into_iter()
        .filter(|m| b0.iter().all(|b| m.contains(b)))
        .map(|m| {
            let mut rest = pair_without(&m, &b0);
            (rest.next().unwrap(), rest.next().unwrap())
        })
        .collect();
    AuxGraph::from_pairs(n, base.clone(), apex, pairs.into_iter())
}

// Members of the orbit of {1,2,c}, with every member listed under each of its
// points as the pair of the other two.
struct Triples {
    n: usize,
    through: Vec<Vec<(u16, u16)>>,
}

impl Triples {
    fn new(group: &PermGroup, c: usize) -> Result<Self> {
        let n = group.degree();
        if c <= 2 || c > n {
            return Err(invalid(format!("apex {c} must lie in 3..={n}")));
        }
        let orbit = orbit_of_set(group, &KSet::new(&[1, 2, c])?)?;
        let mut through = vec![Vec::new(); n];
        for m in &orbit.members {
            let z = m.zero_based();
            let (a, b, d) = (z[0], z[1], z[2]);
            through[a as usize].push((b, d));
            through[b as usize].push((a, d));
            through[d as usize].push((a, b));
        }
        Ok(Triples { n, through })
    }

    fn graph(&self, removed: &[bool]) -> Vec<Vec<u16>> {
        let mut adj = vec![Vec::new(); self.n];
        for (b, pairs) in self.through.iter().enumerate() {
            if !removed[b] {
                continue;
            }
            for &(x, y) in pairs {
                if !removed[x as usize] && !removed[y as usize] {
                    adj[x as usize].push(y);
                    adj[y as usize].push(x);
                }
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }
}

/// `Γ(C,c)`: the union over `b ∈ C` of `G(b,c)`, restricted to pairs outside
/// `C`.
pub fn gamma_graph(group: &PermGroup, set: &KSet, c: usize) -> Result<AuxGraph> {
    let n = group.degree();
    if set.is_empty() {
        return Err(invalid("C must be nonempty"));
    }
    if set.max_point() > n {
        return Err(Error::PointOutOfRange {
            point: set.max_point(),
            degree: n,
        });
    }
    let triples = Triples::new(group, c)?;
    let mut removed = vec![false; n];
    for p in set.iter() {
        removed[p - 1] = true;
    }
    let adj = triples.graph(&removed);
    let pairs = adj
        .iter()
        .enumerate()
        .flat_map(|(x, l)| l.iter().filter(move |&&y| y as usize > x).map(move |&y| (x as u16, y)));
    Ok(AuxGraph::from_pairs(n, set.clone(), c, pairs))
}

/// How one seed of the bad-partition search ended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// `A` and `A'` became joined in `Γ(C,c)`: no bad partition extends the
    /// seed.
    Connected { iterations: usize },
    /// Some point was forced into two places: no bad partition extends the
    /// seed.
    Contradiction { iterations: usize },
    /// The rules stalled; splitting on undecided points closed every branch.
    CaseSplit { splits: usize, iterations: usize },
    /// Every point was placed and the partition `(A, C, A')` has no section.
    BadPartition { partition: SetPartition },
    /// The case-split budget ran out before the seed was settled.
    Exhausted { iterations: usize, placed: usize },
}

impl SearchOutcome {
    /// True when the seed is settled with no bad partition.
    pub fn is_good(&self) -> bool {
        matches!(
            self,
            SearchOutcome::Connected { .. }
                | SearchOutcome::Contradiction { .. }
                | SearchOutcome::CaseSplit { .. }
        )
    }
}

/// Result for one seed `y` at distance `d` from point 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedReport {
    pub seed: usize,
    pub outcome: SearchOutcome,
}

const A: u8 = 1;
const AP: u8 = 2;
const C: u8 = 4;
// in A ∪ A', side not yet known
const U: u8 = 8;
const NOT_A: u8 = 16;
const NOT_AP: u8 = 32;

/// Runs the fixpoint search for bad 3-partitions `(A, C, A')` with `1 ∈ A`,
/// `n ∈ C`, and every seed `y ∈ A'` at distance `d` from 1 in `G(n,c)`.
pub fn bad_partition_search_3ut(group: &PermGroup, c: usize, d: usize) -> Result<Vec<SeedReport>> {
    let triples = Triples::new(group, c)?;
    let n = group.degree();
    let last = n - 1;
    let mut removed = vec![false; n];
    removed[last] = true;
    let g_nc = triples.graph(&removed);
    let from_one = bfs(&g_nc, &[0]);
    if (0..last).any(|x| from_one[x] == usize::MAX) {
        return Err(invalid(format!("G({n},{c}) is disconnected")));
    }
    if d < 2 {
        return Err(invalid("the distance must be at least 2"));
    }
    let seeds: Vec<u16> = (0..last as u16).filter(|&y| from_one[y as usize] == d).collect();
    Ok(seeds
        .into_iter()
        .map(|y| SeedReport {
            seed: y as usize + 1,
            outcome: Search {
                triples: &triples,
                g_nc: &g_nc,
                d,
                state: vec![0; n],
            }
            .run(y, &from_one),
        })
        .collect())
}

struct Search<'a> {
    triples: &'a Triples,
    g_nc: &'a [Vec<u16>],
    d: usize,
    state: Vec<u8>,
}

impl Search<'_> {
    fn conflict(&self) -> bool {
        self.state.iter().any(|&s| {
            (s & A != 0 && s & AP != 0)
                || (s & (U | A | AP) != 0 && s & C != 0)
                || (s & A != 0 && s & NOT_A != 0)
                || (s & AP != 0 && s & NOT_AP != 0)
        })
    }

    fn mark(&mut self, x: usize, bits: u8) -> bool {
        let before = self.state[x];
        self.state[x] |= bits;
        self.state[x] != before
    }

    fn in_u(&self, x: u16) -> bool {
        self.state[x as usize] & U != 0
    }

    // Γ(C,c) restricted to U, as a union-find over all points
    fn gamma_on_u(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.state.len());
        for (b, pairs) in self.triples.through.iter().enumerate() {
            if self.state[b] & C == 0 {
                continue;
            }
            for &(x, y) in pairs {
                if self.in_u(x) && self.in_u(y) {
                    uf.union(x as usize, y as usize);
                }
            }
        }
        uf
    }

    fn joined(&self, uf: &mut UnionFind) -> bool {
        let roots: Vec<usize> = (0..self.state.len())
            .filter(|&x| self.state[x] & A != 0)
            .map(|x| uf.find(x))
            .collect();
        (0..self.state.len())
            .filter(|&x| self.state[x] & AP != 0)
            .any(|x| roots.contains(&uf.find(x)))
    }

    fn side(&self, bit: u8) -> Vec<u16> {
        (0..self.state.len() as u16)
            .filter(|&x| self.state[x as usize] & bit != 0)
            .collect()
    }

    fn run(mut self, y: u16, from_one: &[usize]) -> SearchOutcome {
        let n = self.state.len();
        let last = n - 1;
        self.state[0] = A | U;
        self.state[y as usize] = AP | U;
        self.state[last] = C;
        // (1) x with {1,y,x} in the orbit cannot lie in C
        for &(p, q) in &self.triples.through[0] {
            if p == y {
                self.mark(q as usize, U);
            } else if q == y {
                self.mark(p as usize, U);
            }
        }
        // (2) interior points of shortest 1–y paths lie in C
        let from_y = bfs(self.g_nc, &[y]);
        for x in 0..last {
            if x != 0
                && x != y as usize
                && from_one[x].saturating_add(from_y[x]) == self.d
            {
                self.mark(x, C);
            }
        }
        let mut stats = Stats {
            iterations: 0,
            splits: 0,
            budget: SPLIT_BUDGET,
            root: None,
        };
        match self.settle(&mut stats) {
            Leaf::Good if stats.splits == 0 => match stats.root {
                Some(Step::Connected) => SearchOutcome::Connected {
                    iterations: stats.iterations,
                },
                _ => SearchOutcome::Contradiction {
                    iterations: stats.iterations,
                },
            },
            Leaf::Good => SearchOutcome::CaseSplit {
                splits: stats.splits,
                iterations: stats.iterations,
            },
            Leaf::Bad(partition) => SearchOutcome::BadPartition { partition },
            Leaf::Exhausted(placed) => SearchOutcome::Exhausted {
                iterations: stats.iterations,
                placed,
            },
        }
    }

    fn placed(&self) -> usize {
        self.state.iter().filter(|&&s| s & (A | AP | C) != 0).count()
    }

    /// Propagation to a fixpoint, then a case split on an undecided point
    /// whose branches must all close.
    fn settle(&mut self, stats: &mut Stats) -> Leaf {
        let step = self.propagate(&mut stats.iterations);
        if stats.root.is_none() {
            stats.root = Some(step.clone());
        }
        match step {
            Step::Connected | Step::Contradiction => return Leaf::Good,
            Step::Bad(p) => return Leaf::Bad(p),
            Step::Stalled => {}
        }
        if stats.budget == 0 {
            return Leaf::Exhausted(self.placed());
        }
        stats.budget -= 1;
        stats.splits += 1;
        let (x, options) = (0..self.state.len())
            .filter(|&x| self.state[x] & (A | AP | C) == 0)
            .map(|x| (x, self.options(x)))
            .min_by_key(|(_, o)| o.len())
            .expect("a stalled search has an undecided point");
        for bits in options {
            let mut child = Search {
                triples: self.triples,
                g_nc: self.g_nc,
                d: self.d,
                state: self.state.clone(),
            };
            child.mark(x, bits);
            match child.settle(stats) {
                Leaf::Good => {}
                other => return other,
            }
        }
        Leaf::Good
    }

    fn options(&self, x: usize) -> Vec<u8> {
        let s = self.state[x];
        let mut out = Vec::with_capacity(3);
        if s & NOT_A == 0 {
            out.push(A | U);
        }
        if s & NOT_AP == 0 {
            out.push(AP | U);
        }
        if s & U == 0 {
            out.push(C);
        }
        out
    }

    /// Steps (3)–(8) repeated until nothing changes.
    fn propagate(&mut self, iterations: &mut usize) -> Step {
        let n = self.state.len();
        let last = n - 1;
        for _ in 0..4 * n + 16 {
            *iterations += 1;
            if self.conflict() {
                return Step::Contradiction;
            }
            // (3) A and A' joined in Γ(C,c) on A ∪ A'
            let mut uf = self.gamma_on_u();
            if self.joined(&mut uf) {
                return Step::Connected;
            }
            let mut changed = false;
            // points joined to a placed point inside U share its side
            for side in [A, AP] {
                let roots: Vec<usize> = self.side(side).iter().map(|&x| uf.find(x as usize)).collect();
                for x in 0..n {
                    if self.state[x] & U != 0 && roots.contains(&uf.find(x)) {
                        changed |= self.mark(x, side);
                    }
                }
            }
            // (4) x whose move to C would join A and A' lies in A ∪ A'
            let free: Vec<usize> = (0..n).filter(|&x| self.state[x] & (U | C) == 0).collect();
            let mut forced = Vec::new();
            for &x in &free {
                let mut trial = uf.clone();
                for &(p, q) in &self.triples.through[x] {
                    if self.in_u(p) && self.in_u(q) {
                        trial.union(p as usize, q as usize);
                    }
                }
                if self.joined(&mut trial) {
                    forced.push(x);
                }
            }
            for x in forced {
                changed |= self.mark(x, U);
            }
            // (5) points near A cannot be in A', points near A' cannot be in A
            let near_a = bfs(self.g_nc, &self.side(A));
            let near_ap = bfs(self.g_nc, &self.side(AP));
            for x in 0..last {
                if near_a[x] < self.d {
                    changed |= self.mark(x, NOT_AP);
                }
                if near_ap[x] < self.d {
                    changed |= self.mark(x, NOT_A);
                }
            }
            // a Γ(C,c) edge from a placed point rules out the other side
            for (b, pairs) in self.triples.through.iter().enumerate() {
                if self.state[b] & C == 0 {
                    continue;
                }
                for &(p, q) in pairs {
                    for (u, v) in [(p as usize, q as usize), (q as usize, p as usize)] {
                        if self.state[u] & A != 0 {
                            changed |= self.mark(v, NOT_AP);
                        }
                        if self.state[u] & AP != 0 {
                            changed |= self.mark(v, NOT_A);
                        }
                    }
                }
            }
            // (6)–(8) settle points with two known constraints
            for x in 0..n {
                let s = self.state[x];
                if s & U != 0 && s & NOT_AP != 0 {
                    changed |= self.mark(x, A);
                }
                if s & U != 0 && s & NOT_A != 0 {
                    changed |= self.mark(x, AP);
                }
                if s & NOT_A != 0 && s & NOT_AP != 0 {
                    changed |= self.mark(x, C);
                }
            }
            if self.conflict() {
                return Step::Contradiction;
            }
            if self.placed() == n {
                let mut uf = self.gamma_on_u();
                if self.joined(&mut uf) {
                    return Step::Connected;
                }
                let labels: Vec<u8> = self.state.iter().map(|&s| s & (A | AP | C)).collect();
                return Step::Bad(SetPartition::from_labels(&labels));
            }
            if !changed {
                return Step::Stalled;
            }
        }
        Step::Stalled
    }
}

/// Case splits allowed per seed before the search reports exhaustion.
const SPLIT_BUDGET: usize = 100_000;

#[derive(Clone)]
enum Step {
    Connected,
    Contradiction,
    Bad(SetPartition),
    Stalled,
}

enum Leaf {
    Good,
    Bad(SetPartition),
    Exhausted(usize),
}

struct Stats {
    iterations: usize,
    splits: usize,
    budget: usize,
    root: Option<Step>,
}

/// The search at one apex `c`, over every distance from 2 up to the
/// eccentricity of point 1 in `G(n,c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexReport {
    pub apex: usize,
    /// `(d, reports)` for each distance.
    pub by_distance: Vec<(usize, Vec<SeedReport>)>,
}

impl ApexReport {
    pub fn all_good(&self) -> bool {
        self.by_distance
            .iter()
            .all(|(_, r)| r.iter().all(|s| s.outcome.is_good()))
    }

    pub fn seed_count(&self) -> usize {
        self.by_distance.iter().map(|(_, r)| r.len()).sum()
    }
}

/// Apices `c` of the orbits on 3-sets: for each orbit, the least `c` with
/// `{1,2,c}` in it. Requires the group to be 2-homogeneous.
pub fn orbit_apices(group: &PermGroup) -> Result<Vec<usize>> {
    let n = group.degree();
    if n < 4 {
        return Err(invalid("need at least 4 points"));
    }
    let index = SetOrbitIndex::build(group, 3)?;
    let mut apex = vec![None; index.num_orbits()];
    for c in 3..=n {
        let l = index.label_of(&KSet::new(&[1, 2, c])?);
        apex[l].get_or_insert(c);
    }
    apex.into_iter()
        .map(|a| a.ok_or_else(|| invalid("an orbit on 3-sets misses {1,2}: not 2-homogeneous")))
        .collect()
}

/// Runs [`bad_partition_search_3ut`] at every orbit apex and distance.
pub fn bad_partition_sweep(group: &PermGroup) -> Result<Vec<ApexReport>> {
    let n = group.degree();
    orbit_apices(group)?
        .into_iter()
        .map(|c| {
            let g = aux_graph(group, &KSet::new(&[n])?, c)?;
            let ecc = g
                .distances_from(1)
                .into_iter()
                .flatten()
                .max()
                .unwrap_or(0);
            let by_distance = (2..=ecc)
                .map(|d| Ok((d, bad_partition_search_3ut(group, c, d)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(ApexReport { apex: c, by_distance })
        })
        .collect()
}
