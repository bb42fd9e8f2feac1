//! Deciders for the `k`-universal transversal property: every orbit of the
//! group on `k`-sets contains a section of every partition into `k` blocks.
//!
//! [`has_kut`] runs cheap necessary conditions first, each of which either
//! settles the question with a checkable witness or passes, and then falls
//! back on a complete decider: exhaustive enumeration of `k`-partitions when
//! there are few enough, breadth-first subpartition extension otherwise.

pub mod extension;
pub mod graphs;
mod oracle;
pub mod two_graph;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partitions::{singleton_tail_partition, stirling2, RgsCursor, SetPartition, SubPartition};
use crate::perm::{PermGroup, UnionFind};
use crate::set_orbits::{
    binomial_u64, is_ij_homogeneous, is_k_homogeneous, order_bound_pass, orbit_of_set_with_cap,
    KSet, SetOrbitIndex, DEFAULT_SET_CAP,
};

pub use extension::{extend_from_seed, ExtensionOutcome, DEFAULT_FRONTIER_CAP};
pub use graphs::{
    aux_graph, bad_partition_search_3ut, bad_partition_sweep, gamma_graph, orbit_apices,
    ApexReport, AuxGraph, SearchOutcome, SeedReport,
};
pub use oracle::SectionOracle;
pub use two_graph::{two_graph_check, TwoGraphReport};

/// Whether the property holds, fails, or could not be settled within budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UtStatus {
    Holds,
    Fails,
    Undecided,
}

/// Which test settled a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UtMethod {
    /// The group is `k`-homogeneous: one orbit, all `k`-sets.
    KHomogeneous,
    /// `k = 2`: connectivity of every orbital graph.
    OrbitalGraphs,
    /// `|G|·(k−1) < C(n,k−1)`, so the group is not `(k−1,k)`-homogeneous.
    OrderBound,
    /// Failure of `(k−1,k)`-homogeneity.
    IjHomogeneity,
    /// A disconnected graph `G(B,c)`.
    Connectivity,
    /// Enumeration of all `k`-partitions.
    Naive,
    /// Breadth-first subpartition extension.
    Extension,
    /// Regular two-graph certificates for every orbit (`k = 3`).
    TwoGraph,
    /// No method finished within its budget.
    Budget,
}

/// A `k`-set orbit (by representative) and a `k`-partition with no section in
/// that orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UtWitness {
    pub orbit_representative: KSet,
    pub partition: SetPartition,
}

/// One run of the extension decider.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionRun {
    pub orbit_representative: KSet,
    pub seed: String,
    pub holds: bool,
    /// Frontier size after each placed point.
    pub profile: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UtVerdict {
    pub k: usize,
    pub status: UtStatus,
    pub method: UtMethod,
    pub witness: Option<UtWitness>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extension_runs: Vec<ExtensionRun>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl UtVerdict {
    fn new(k: usize, status: UtStatus, method: UtMethod) -> Self {
        UtVerdict {
            k,
            status,
            method,
            witness: None,
            extension_runs: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn holds_by(k: usize, method: UtMethod) -> Self {
        Self::new(k, UtStatus::Holds, method)
    }

    fn fails_by(k: usize, method: UtMethod, orbit_representative: KSet, partition: SetPartition) -> Self {
        UtVerdict {
            witness: Some(UtWitness {
                orbit_representative,
                partition,
            }),
            ..Self::new(k, UtStatus::Fails, method)
        }
    }

    pub fn holds(&self) -> bool {
        self.status == UtStatus::Holds
    }

    pub fn fails(&self) -> bool {
        self.status == UtStatus::Fails
    }
}

/// Which complete decider to use once the prunes pass.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeciderChoice {
    /// Enumeration when `S(n,k)` is at most `naive_auto_limit`, else extension.
    #[default]
    Auto,
    Naive,
    Extension,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UtOptions {
    pub decider: DeciderChoice,
    /// Largest `S(n,k)` for which `Auto` picks enumeration.
    pub naive_auto_limit: u64,
    /// Largest `S(n,k)` enumeration will ever attempt.
    pub naive_budget: u64,
    pub frontier_cap: usize,
    /// Cap on the number of `k`-sets indexed.
    pub set_cap: u64,
    /// Run the necessary-condition prunes before the complete decider.
    pub prunes: bool,
    /// For `k = 3`, try regular two-graph certificates for each orbit.
    pub two_graph: bool,
    /// Seed for any sampling.
    pub seed: u64,
}

impl Default for UtOptions {
    fn default() -> Self {
        UtOptions {
            decider: DeciderChoice::Auto,
            naive_auto_limit: 2_000_000,
            naive_budget: 100_000_000,
            frontier_cap: DEFAULT_FRONTIER_CAP,
            set_cap: DEFAULT_SET_CAP,
            prunes: true,
            two_graph: false,
            seed: 0,
        }
    }
}

fn check_k(group: &PermGroup, k: usize) -> Result<()> {
    let n = group.degree();
    if k < 2 || k >= n {
        return Err(invalid(format!("need 2 <= k < n = {n}, got k = {k}")));
    }
    if k > 64 {
        return Err(invalid("k above 64 is not supported"));
    }
    Ok(())
}

/// True iff no member of the orbit of the witness set is a section of the
/// witness partition. Uses a fresh orbit computation, independent of the
/// deciders.
pub fn verify_witness(group: &PermGroup, k: usize, witness: &UtWitness) -> Result<bool> {
    let n = group.degree();
    if witness.partition.degree() != n
        || witness.partition.num_blocks() != k
        || witness.orbit_representative.len() != k
    {
        return Ok(false);
    }
    let orbit = orbit_of_set_with_cap(group, &witness.orbit_representative, u64::MAX)?;
    Ok(!orbit.members.iter().any(|m| witness.partition.is_section(m)))
}

fn checked(group: &PermGroup, verdict: UtVerdict) -> Result<UtVerdict> {
    if let Some(w) = &verdict.witness {
        if !verify_witness(group, verdict.k, w)? {
            return Err(Error::Internal(format!(
                "witness {} / {} failed re-check",
                w.orbit_representative, w.partition
            )));
        }
    }
    Ok(verdict)
}

/// Decides the `k`-ut property with default options.
pub fn has_kut(group: &PermGroup, k: usize) -> Result<UtVerdict> {
    has_kut_with(group, k, &UtOptions::default())
}

/// Decides the `k`-ut property. Budget overruns give
/// [`UtStatus::Undecided`], never a guess.
pub fn has_kut_with(group: &PermGroup, k: usize, opts: &UtOptions) -> Result<UtVerdict> {
    check_k(group, k)?;
    let n = group.degree();
    let mut notes = Vec::new();
    if opts.prunes {
        if let Some(v) = prunes(group, k, &mut notes)? {
            return checked(group, UtVerdict { notes, ..v });
        }
        if 2 * k > n + 1 {
            notes.push("k exceeds (n+1)/2 but the group is not k-homogeneous".into());
        }
    }
    let oracle = match SetOrbitIndex::build_with_cap(group, k, opts.set_cap) {
        Ok(index) => SectionOracle::from_index(index),
        Err(e @ Error::CapExceeded { .. }) => return Ok(undecided(k, notes, e)),
        Err(e) => return Err(e),
    };
    let mut v = full_decision(group, &oracle, opts)?;
    notes.append(&mut v.notes);
    v.notes = notes;
    checked(group, v)
}

fn undecided(k: usize, notes: Vec<String>, why: Error) -> UtVerdict {
    let mut v = UtVerdict::new(k, UtStatus::Undecided, UtMethod::Budget);
    v.notes = notes;
    v.notes.push(format!("undecided: {why}"));
    v
}

fn prunes(group: &PermGroup, k: usize, notes: &mut Vec<String>) -> Result<Option<UtVerdict>> {
    if is_k_homogeneous(group, k)? {
        return Ok(Some(UtVerdict::holds_by(k, UtMethod::KHomogeneous)));
    }
    if k == 2 {
        return orbital_graphs(group).map(Some);
    }
    // the order bound is a theorem only for n >= 2(k-1)+1
    let bound_fails = group.degree() > 2 * k - 2 && !order_bound_pass(group, k - 1);
    let ij = is_ij_homogeneous(group, k - 1, k)?;
    if let Some((i, j)) = ij.witness {
        // a k-set in the orbit of J containing I would put I inside J
        let orbit = orbit_of_set_with_cap(group, &j, u64::MAX)?;
        let method = if bound_fails {
            UtMethod::OrderBound
        } else {
            UtMethod::IjHomogeneity
        };
        return Ok(Some(UtVerdict::fails_by(
            k,
            method,
            orbit.representative,
            singleton_tail_partition(&i, group.degree())?,
        )));
    }
    if bound_fails {
        return Err(Error::Internal(
            "order bound fails but (k-1,k)-homogeneity holds".into(),
        ));
    }
    if let Some(v) = connectivity_prune(group, k)? {
        return Ok(Some(v));
    }
    notes.push(format!("(k-1,k)-homogeneous; every G(B,c) with |B| = {} connected", k - 2));
    Ok(None)
}

/// `k = 2`: the orbit of a pair meets every 2-partition iff its graph is
/// connected.
fn orbital_graphs(group: &PermGroup) -> Result<UtVerdict> {
    let n = group.degree();
    let index = SetOrbitIndex::build(group, 2)?;
    for orbit in 0..index.num_orbits() {
        let mut uf = UnionFind::new(n);
        for m in index.members_raw(orbit) {
            uf.union(m[0] as usize, m[1] as usize);
        }
        if uf.size(0) < n {
            let root = uf.find(0);
            let labels: Vec<bool> = (0..n).map(|x| uf.find(x) == root).collect();
            return Ok(UtVerdict::fails_by(
                2,
                UtMethod::OrbitalGraphs,
                index.representatives()[orbit].clone(),
                SetPartition::from_labels(&labels),
            ));
        }
    }
    Ok(UtVerdict::holds_by(2, UtMethod::OrbitalGraphs))
}

/// Looks for a disconnected `G(B,c)` with `|B| = k−2`, trying `B` = the last
/// `k−2` points first and then one `B` per orbit on `(k−2)`-sets, against
/// every orbit on `k`-sets. A component `D` gives the witness partition
/// `({b_1},…,{b_(k−2)}, D, rest)`.
pub fn connectivity_prune(group: &PermGroup, k: usize) -> Result<Option<UtVerdict>> {
    check_k(group, k)?;
    if k < 3 {
        return Err(invalid("the connectivity prune needs k >= 3"));
    }
    let n = group.degree();
    let index = SetOrbitIndex::build(group, k)?;
    let small = SetOrbitIndex::build(group, k - 2)?;
    let last: Vec<usize> = (n - k + 3..=n).collect();
    let mut bases = vec![KSet::new(&last)?];
    bases.extend(small.representatives().iter().cloned());
    for base in &bases {
        for orbit in 0..index.num_orbits() {
            let g = graphs::aux_graph_of_orbit(&index, orbit, base);
            let comps = g.components();
            if comps.len() > 1 {
                let mut labels = vec![0usize; n];
                for (i, p) in base.iter().enumerate() {
                    labels[p - 1] = 2 + i;
                }
                for &p in &comps[0] {
                    labels[p - 1] = 1;
                }
                return Ok(Some(UtVerdict::fails_by(
                    k,
                    UtMethod::Connectivity,
                    index.representatives()[orbit].clone(),
                    SetPartition::from_labels(&labels),
                )));
            }
        }
    }
    Ok(None)
}

fn stirling_u64(n: usize, k: usize) -> u64 {
    stirling2(n, k).to_u64().unwrap_or(u64::MAX)
}

fn full_decision(group: &PermGroup, oracle: &SectionOracle, opts: &UtOptions) -> Result<UtVerdict> {
    let n = oracle.degree();
    let k = oracle.k();
    let partitions = stirling_u64(n, k);
    let naive = match opts.decider {
        DeciderChoice::Naive => true,
        DeciderChoice::Extension => false,
        DeciderChoice::Auto => partitions <= opts.naive_auto_limit,
    };
    if naive {
        if partitions > opts.naive_budget {
            return Ok(undecided(
                k,
                Vec::new(),
                Error::CapExceeded {
                    what: "k-partition enumeration",
                    cap: opts.naive_budget,
                    reached: partitions,
                },
            ));
        }
        let all: Vec<usize> = (0..oracle.num_orbits()).collect();
        return Ok(match naive_scan(oracle, &all) {
            None => UtVerdict::holds_by(k, UtMethod::Naive),
            Some((orbit, p)) => UtVerdict::fails_by(
                k,
                UtMethod::Naive,
                oracle.index().representatives()[orbit].clone(),
                p,
            ),
        });
    }
    extension_decision(group, oracle, opts)
}

/// First `(orbit, partition)` among `orbits` with no section, scanning every
/// `k`-partition.
fn naive_scan(oracle: &SectionOracle, orbits: &[usize]) -> Option<(usize, SetPartition)> {
    let n = oracle.degree();
    let k = oracle.k();
    let total = binomial_u64(n, k) as usize;
    let index = oracle.index();
    let mut cursor = RgsCursor::new(n, k);
    let mut blocks: Vec<Vec<u16>> = vec![Vec::new(); k];
    let mut covered = vec![false; oracle.num_orbits()];
    let mut pick = vec![0usize; k];
    let mut set = Vec::with_capacity(k);
    while let Some(rgs) = cursor.next_rgs() {
        for b in blocks.iter_mut() {
            b.clear();
        }
        for (x, &b) in rgs.iter().enumerate() {
            blocks[b as usize].push(x as u16);
        }
        let product = blocks
            .iter()
            .try_fold(1usize, |acc, b| acc.checked_mul(b.len()))
            .unwrap_or(usize::MAX);
        if product <= total {
            // mark every orbit met by some section
            for &o in orbits {
                covered[o] = false;
            }
            let mut missing = orbits.len();
            pick.iter_mut().for_each(|p| *p = 0);
            'sections: loop {
                set.clear();
                set.extend(pick.iter().zip(&blocks).map(|(&i, b)| b[i]));
                set.sort_unstable();
                let l = index.label_of_sorted0(&set);
                if orbits.contains(&l) && !std::mem::replace(&mut covered[l], true) {
                    missing -= 1;
                    if missing == 0 {
                        break;
                    }
                }
                let mut t = 0;
                loop {
                    if t == k {
                        break 'sections;
                    }
                    pick[t] += 1;
                    if pick[t] < blocks[t].len() {
                        break;
                    }
                    pick[t] = 0;
                    t += 1;
                }
            }
            if missing > 0 {
                let o = *orbits.iter().find(|&&o| !covered[o]).expect("an uncovered orbit");
                return Some((o, SetPartition::from_rgs(rgs)));
            }
        } else {
            for &o in orbits {
                if oracle.find_section(o, rgs, &blocks).is_none() {
                    return Some((o, SetPartition::from_rgs(rgs)));
                }
            }
        }
    }
    None
}

enum OrbitOutcome {
    Universal,
    Witness(SetPartition),
    Undecided(Error),
}

/// Runs the extension decider on `orbit` from each seed; stops at the first
/// surviving partition.
fn extend_orbit(
    oracle: &SectionOracle,
    orbit: usize,
    seeds: &[usize],
    opts: &UtOptions,
    runs: &mut Vec<ExtensionRun>,
) -> Result<OrbitOutcome> {
    let n = oracle.degree();
    let reps = oracle.index().representatives();
    for &s in seeds {
        let seed = SubPartition::singletons(n, &reps[s])?;
        match extend_from_seed(oracle, orbit, &seed, opts.frontier_cap) {
            Ok(out) => {
                runs.push(ExtensionRun {
                    orbit_representative: reps[orbit].clone(),
                    seed: seed.to_string(),
                    holds: out.holds,
                    profile: out.profile,
                });
                if let Some(w) = out.witness {
                    return Ok(OrbitOutcome::Witness(w));
                }
            }
            Err(e @ Error::CapExceeded { .. }) => return Ok(OrbitOutcome::Undecided(e)),
            Err(e) => return Err(e),
        }
    }
    Ok(OrbitOutcome::Universal)
}

/// Every partition has a section in some orbit, so its orbit-mates can be
/// moved to make that section a representative: seeding with the
/// representatives of the other orbits covers every partition. Once an orbit
/// is known to meet every partition, its representative alone suffices.
fn extension_decision(group: &PermGroup, oracle: &SectionOracle, opts: &UtOptions) -> Result<UtVerdict> {
    let k = oracle.k();
    let m = oracle.num_orbits();
    let reps = oracle.index().representatives();
    let mut runs = Vec::new();
    let mut notes = Vec::new();
    let mut universal: Option<usize> = None;
    let mut certified = vec![false; m];
    if opts.two_graph && k == 3 {
        for (o, c) in certified.iter_mut().enumerate() {
            if let Some(r) = two_graph::two_graph_check_in(group, oracle.index(), o, opts.seed)? {
                notes.push(format!(
                    "orbit of {}: regular two-graph, lambda = {}, certified = {}",
                    reps[o], r.lambda, r.certified
                ));
                *c = r.certified;
                if r.certified {
                    universal.get_or_insert(o);
                }
            }
        }
        if certified.iter().all(|&c| c) {
            let mut v = UtVerdict::holds_by(k, UtMethod::TwoGraph);
            v.notes = notes;
            return Ok(v);
        }
    }
    // larger orbits first: they are the likeliest to meet everything
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&o| std::cmp::Reverse(oracle.index().orbit_sizes()[o]));
    let mut pending: Option<Error> = None;
    for o in order {
        if certified[o] {
            continue;
        }
        let seeds: Vec<usize> = match universal {
            Some(u) if u != o => vec![u],
            _ => (0..m).filter(|&s| s != o).collect(),
        };
        match extend_orbit(oracle, o, &seeds, opts, &mut runs)? {
            OrbitOutcome::Universal => {
                universal.get_or_insert(o);
            }
            OrbitOutcome::Witness(p) => {
                let mut v = UtVerdict::fails_by(k, UtMethod::Extension, reps[o].clone(), p);
                v.extension_runs = runs;
                v.notes = notes;
                return Ok(v);
            }
            OrbitOutcome::Undecided(e) => {
                pending.get_or_insert(e);
            }
        }
    }
    let mut v = match pending {
        Some(e) => undecided(k, Vec::new(), e),
        None => UtVerdict::holds_by(k, UtMethod::Extension),
    };
    notes.append(&mut v.notes);
    v.notes = notes;
    v.extension_runs = runs;
    Ok(v)
}

/// Decides the `k`-ut property by enumerating every `k`-partition against
/// every orbit. Fails with `CapExceeded` when `S(n,k)` is above
/// `naive_budget`.
pub fn has_kut_naive(group: &PermGroup, k: usize, naive_budget: u64) -> Result<UtVerdict> {
    check_k(group, k)?;
    let partitions = stirling_u64(group.degree(), k);
    if partitions > naive_budget {
        return Err(Error::CapExceeded {
            what: "k-partition enumeration",
            cap: naive_budget,
            reached: partitions,
        });
    }
    let oracle = SectionOracle::new(group, k)?;
    let opts = UtOptions {
        decider: DeciderChoice::Naive,
        naive_budget,
        ..UtOptions::default()
    };
    checked(group, full_decision(group, &oracle, &opts)?)
}

/// Runs the extension decider for the orbit of `orbit` from `seed`; the
/// verdict covers only partitions in which the seed blocks lie in distinct
/// blocks.
pub fn subpartition_extension_decider(
    group: &PermGroup,
    orbit: &KSet,
    seed: &SubPartition,
    frontier_cap: usize,
) -> Result<UtVerdict> {
    let k = orbit.len();
    check_k(group, k)?;
    let oracle = SectionOracle::new(group, k)?;
    let o = oracle.index().label_of(orbit);
    let rep = oracle.index().representatives()[o].clone();
    let out = extend_from_seed(&oracle, o, seed, frontier_cap)?;
    let run = ExtensionRun {
        orbit_representative: rep.clone(),
        seed: seed.to_string(),
        holds: out.holds,
        profile: out.profile,
    };
    let mut v = match out.witness {
        Some(p) => UtVerdict::fails_by(k, UtMethod::Extension, rep, p),
        None => UtVerdict::holds_by(k, UtMethod::Extension),
    };
    v.extension_runs.push(run);
    checked(group, v)
}

/// Outcome of the weak `k`-ut test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakUtVerdict {
    pub k: usize,
    pub status: UtStatus,
    /// Lexicographically least representative of an orbit meeting every
    /// `k`-partition.
    pub representative: Option<KSet>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Whether some single `k`-set orbit contains a section of every
/// `k`-partition.
pub fn has_weak_kut(group: &PermGroup, k: usize) -> Result<WeakUtVerdict> {
    has_weak_kut_with(group, k, &UtOptions::default())
}

pub fn has_weak_kut_with(group: &PermGroup, k: usize, opts: &UtOptions) -> Result<WeakUtVerdict> {
    check_k(group, k)?;
    let oracle = SectionOracle::from_index(SetOrbitIndex::build_with_cap(group, k, opts.set_cap)?);
    let n = oracle.degree();
    let m = oracle.num_orbits();
    let partitions = stirling_u64(n, k);
    let naive = match opts.decider {
        DeciderChoice::Naive => true,
        DeciderChoice::Extension => false,
        DeciderChoice::Auto => partitions <= opts.naive_auto_limit,
    };
    let mut notes = Vec::new();
    let mut open = false;
    for o in 0..m {
        let outcome = if naive {
            if partitions > opts.naive_budget {
                OrbitOutcome::Undecided(Error::CapExceeded {
                    what: "k-partition enumeration",
                    cap: opts.naive_budget,
                    reached: partitions,
                })
            } else {
                match naive_scan(&oracle, &[o]) {
                    None => OrbitOutcome::Universal,
                    Some((_, p)) => OrbitOutcome::Witness(p),
                }
            }
        } else {
            let seeds: Vec<usize> = (0..m).filter(|&s| s != o).collect();
            extend_orbit(&oracle, o, &seeds, opts, &mut Vec::new())?
        };
        let rep = &oracle.index().representatives()[o];
        match outcome {
            OrbitOutcome::Universal => {
                return Ok(WeakUtVerdict {
                    k,
                    status: UtStatus::Holds,
                    representative: Some(rep.clone()),
                    notes,
                })
            }
            OrbitOutcome::Witness(p) => notes.push(format!("orbit of {rep} misses {p}")),
            OrbitOutcome::Undecided(e) => {
                open = true;
                notes.push(format!("orbit of {rep} undecided: {e}"));
            }
        }
    }
    Ok(WeakUtVerdict {
        k,
        status: if open { UtStatus::Undecided } else { UtStatus::Fails },
        representative: None,
        notes,
    })
}

/// Number of `k`-partitions of `{1..n}`.
pub fn partition_count(n: usize, k: usize) -> BigUint {
    stirling2(n, k)
}

#[cfg(test)]
mod tests;
