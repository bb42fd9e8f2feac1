//! Transformations of `{1..n}`, semigroups generated by them, and regularity.
//!
//! A transformation `a` is regular in `⟨a, G⟩` iff some `g ∈ G` has
//! `rank(a·g·a) = rank(a)`, i.e. iff the orbit of `image(a)` under `G`
//! contains a section of `kernel(a)`. Everything here uses that reduction
//! rather than enumerating the group.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::partitions::{RgsCursor, SetPartition};
use crate::perm::{check_degree, PermGroup, Permutation, UnionFind};
use crate::set_orbits::{is_ij_homogeneous, KSet, SetOrbitIndex, DEFAULT_SET_CAP};
use crate::ut::{has_kut, UtStatus};

/// A map from `{1..n}` to itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    // 0-based images
    images: Box<[u16]>,
}

impl Transformation {
    /// From 1-based images: `images[i-1]` is the image of `i`.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            out.push((x - 1) as u16);
        }
        Ok(Transformation {
            images: out.into_boxed_slice(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from(&Permutation::identity(n))
    }

    /// The map sending every point to `c`.
    pub fn constant(n: usize, c: usize) -> Result<Self> {
        Self::new(&vec![c; n])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn apply(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    /// The image set.
    pub fn image(&self) -> KSet {
        let mut seen = vec![false; self.degree()];
        for &x in self.images.iter() {
            seen[x as usize] = true;
        }
        let pts: Vec<u16> = (0..self.degree() as u16).filter(|&x| seen[x as usize]).collect();
        KSet::from_sorted0(&pts)
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// The partition into fibres.
    pub fn kernel(&self) -> SetPartition {
        SetPartition::from_labels(&self.images)
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    /// All kernel classes but at most one are singletons.
    pub fn is_quasi_permutation(&self) -> bool {
        self.kernel().has_single_nontrivial_block()
    }

    /// `self` followed by `other`: `i ↦ other(self(i))`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        debug_assert_eq!(self.degree(), other.degree());
        Transformation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// `self` followed by the permutation `g`.
    pub fn then_perm(&self, g: &Permutation) -> Transformation {
        Transformation {
            images: self.images.iter().map(|&x| g.img0(x as usize) as u16).collect(),
        }
    }

    /// The permutation `g` followed by `self`.
    pub fn after_perm(&self, g: &Permutation) -> Transformation {
        Transformation {
            images: g.raw().iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    /// A transformation with the given kernel and image, sending the blocks
    /// (in canonical order) to the image points in increasing order.
    pub fn with_kernel_and_image(kernel: &SetPartition, image: &KSet) -> Result<Self> {
        if kernel.num_blocks() != image.len() || image.max_point() > kernel.degree() {
            return Err(invalid("kernel and image sizes differ"));
        }
        let targets = image.to_vec();
        let images: Vec<usize> = (1..=kernel.degree())
            .map(|p| targets[kernel.block_index_of(p)])
            .collect();
        Self::new(&images)
    }
}

impl From<&Permutation> for Transformation {
    fn from(p: &Permutation) -> Self {
        Transformation {
            images: p.raw().into(),
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Transformation({self})")
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Parses a comma-separated image list such as `1,4,5,2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("bad image `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&images)
    }
}

impl Serialize for Transformation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `i ↦ b(a(i))`.
pub fn t_compose(a: &Transformation, b: &Transformation) -> Result<Transformation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(a.then(b))
}

/// Outcome of [`is_regular_in`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCheck {
    pub regular: bool,
    /// On success, some `g` with `rank(a·g·a) = rank(a)`.
    pub witness: Option<Permutation>,
}

/// Is `a` regular in `⟨a, G⟩`? Searches the orbit of `image(a)` for a section
/// of `kernel(a)` and recovers `g` from the search tree.
pub fn is_regular_in(a: &Transformation, group: &PermGroup) -> Result<RegularityCheck> {
    is_regular_in_with_cap(a, group, DEFAULT_SET_CAP)
}

pub fn is_regular_in_with_cap(a: &Transformation, group: &PermGroup, cap: u64) -> Result<RegularityCheck> {
    let n = group.degree();
    if a.degree() != n {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: n,
        });
    }
    let kernel = a.kernel();
    let start = a.image();
    let gens = group.generators();
    // (set, parent index, generator index)
    let mut nodes: Vec<(KSet, usize, usize)> = vec![(start.clone(), usize::MAX, usize::MAX)];
    let mut seen: FxHashSet<KSet> = FxHashSet::default();
    seen.insert(start);
    let mut head = 0;
    let found = loop {
        if head == nodes.len() {
            break None;
        }
        if kernel.is_section(&nodes[head].0) {
            break Some(head);
        }
        let cur = nodes[head].0.clone();
        for (gi, g) in gens.iter().enumerate() {
            let img = cur.image(g);
            if seen.insert(img.clone()) {
                if seen.len() as u64 > cap {
                    return Err(Error::CapExceeded {
                        what: "image orbit",
                        cap,
                        reached: seen.len() as u64,
                    });
                }
                nodes.push((img, head, gi));
            }
        }
        head += 1;
    };
    let Some(mut at) = found else {
        return Ok(RegularityCheck {
            regular: false,
            witness: None,
        });
    };
    let mut word = Vec::new();
    while nodes[at].1 != usize::MAX {
        word.push(nodes[at].2);
        at = nodes[at].1;
    }
    let g = word
        .iter()
        .rev()
        .fold(Permutation::identity(n), |acc, &gi| acc.then(&gens[gi]));
    debug_assert_eq!(a.then_perm(&g).then(a).rank(), a.rank());
    Ok(RegularityCheck {
        regular: true,
        witness: Some(g),
    })
}

/// Closure of `gens` under composition: every product of generators.
/// Fails when more than `cap` elements appear.
pub fn semigroup_closure(gens: &[Transformation], cap: usize) -> Result<Vec<Transformation>> {
    let Some(first) = gens.first() else {
        return Err(invalid("need at least one generator"));
    };
    if let Some(g) = gens.iter().find(|g| g.degree() != first.degree()) {
        return Err(Error::DegreeMismatch {
            left: first.degree(),
            right: g.degree(),
        });
    }
    let n = first.degree();
    let mut out: Vec<Transformation> = if n <= 16 {
        // images packed four bits per point
        let pack = |t: &Transformation| t.raw().iter().rev().fold(0u64, |acc, &x| acc << 4 | x as u64);
        let packed: Vec<u64> = gens.iter().map(pack).collect();
        let compose = |&x: &u64, &g: &u64| {
            (0..n).fold(0u64, |acc, i| {
                let xi = (x >> (4 * i)) & 15;
                acc | ((g >> (4 * xi)) & 15) << (4 * i)
            })
        };
        closure_by(&packed, cap, compose)?
            .into_iter()
            .map(|code| Transformation {
                images: (0..n).map(|i| ((code >> (4 * i)) & 15) as u16).collect(),
            })
            .collect()
    } else {
        closure_by(gens, cap, Transformation::then)?
    };
    out.sort_unstable();
    Ok(out)
}

/// Breadth-first closure under right multiplication by the generators.
fn closure_by<T, F>(gens: &[T], cap: usize, compose: F) -> Result<Vec<T>>
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let mut seen: FxHashSet<T> = FxHashSet::default();
    let mut queue: Vec<T> = Vec::new();
    for g in gens {
        if seen.insert(g.clone()) {
            queue.push(g.clone());
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let cur = queue[head].clone();
        head += 1;
        // right multiplication by generators already reaches every word
        for g in gens {
            let next = compose(&cur, g);
            if !seen.contains(&next) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "semigroup closure",
                        cap: cap as u64,
                        reached: seen.len() as u64 + 1,
                    });
                }
                seen.insert(next.clone());
                queue.push(next);
            }
        }
    }
    Ok(queue)
}

/// Outcome of [`is_regular_semigroup`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupRegularity {
    pub regular: bool,
    /// The least element (in image-list order) with no `c` such that
    /// `b·c·b = b`.
    pub witness: Option<Transformation>,
    /// Elements examined.
    pub checked: usize,
}

// bcb = b  iff  c sends every v in image(b) into the fibre of b over v
fn inverse_exists(b: &Transformation, restrictions: &[Vec<u16>], img: &[u16]) -> bool {
    let braw = b.raw();
    restrictions
        .iter()
        .any(|r| r.iter().zip(img).all(|(&cv, &v)| braw[cv as usize] == v))
}

fn restrictions_to(elements: &[Transformation], img: &[u16]) -> Vec<Vec<u16>> {
    let set: FxHashSet<Vec<u16>> = elements
        .iter()
        .map(|c| img.iter().map(|&v| c.raw()[v as usize]).collect())
        .collect();
    let mut out: Vec<Vec<u16>> = set.into_iter().collect();
    out.sort_unstable();
    out
}

fn first_irregular(elements: &[Transformation], candidates: &[usize]) -> Option<usize> {
    let mut by_image: FxHashMap<Vec<u16>, Vec<usize>> = FxHashMap::default();
    for &i in candidates {
        let img: Vec<u16> = elements[i].image().zero_based().to_vec();
        by_image.entry(img).or_default().push(i);
    }
    let mut groups: Vec<(Vec<u16>, Vec<usize>)> = by_image.into_iter().collect();
    groups.sort_unstable();
    groups
        .par_iter()
        .filter_map(|(img, members)| {
            let restrictions = restrictions_to(elements, img);
            members
                .iter()
                .copied()
                .find(|&i| !inverse_exists(&elements[i], &restrictions, img))
        })
        .min()
}

/// Is every element `b` of the (closed) set regular, i.e. `b·c·b = b` for
/// some `c` in the set? Elements are grouped by image, so each candidate `c`
/// is only compared on that image.
pub fn is_regular_semigroup(elements: &[Transformation]) -> SemigroupRegularity {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let all: Vec<usize> = (0..sorted.len()).collect();
    let bad = first_irregular(&sorted, &all);
    SemigroupRegularity {
        regular: bad.is_none(),
        witness: bad.map(|i| sorted[i].clone()),
        checked: sorted.len(),
    }
}

/// Same answer as [`is_regular_semigroup`] for a set containing the group
/// `G`: regularity is constant on the classes `{g·b·h}`, so one element per
/// class is examined (the least, so the witness is the same).
pub fn is_regular_semigroup_with_units(elements: &[Transformation], group: &PermGroup) -> Result<SemigroupRegularity> {
    let mut sorted = elements.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let position: FxHashMap<&Transformation, usize> =
        sorted.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut classes = UnionFind::new(sorted.len());
    for (i, b) in sorted.iter().enumerate() {
        for g in group.generators() {
            for next in [b.then_perm(g), b.after_perm(g)] {
                let j = *position
                    .get(&next)
                    .ok_or_else(|| invalid("element set is not closed under the group"))?;
                classes.union(i, j);
            }
        }
    }
    // least element of each class (classes() lists members ascending)
    let reps: Vec<usize> = classes.classes().into_iter().map(|c| c[0]).collect();
    let bad = first_irregular(&sorted, &reps);
    Ok(SemigroupRegularity {
        regular: bad.is_none(),
        witness: bad.map(|i| sorted[i].clone()),
        checked: reps.len(),
    })
}

/// Is every rank-`k` transformation regular in `⟨a, G⟩`? Equivalent to the
/// `k`-ut property, and decided that way.
pub fn regular_for_all_rank_k(group: &PermGroup, k: usize) -> Result<bool> {
    let v = has_kut(group, k)?;
    match v.status {
        UtStatus::Holds => Ok(true),
        UtStatus::Fails => Ok(false),
        UtStatus::Undecided => Err(Error::Undecided(v.notes.join("; "))),
    }
}

/// Result of a direct check over transformation representatives.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectRegularity {
    pub regular: bool,
    /// A map that is not regular in `⟨a, G⟩`.
    pub witness: Option<Transformation>,
    /// Number of (kernel, image) representative pairs tested.
    pub maps_checked: usize,
}

/// One partition per orbit of `G` on `k`-partitions of `{1..n}`.
fn partition_orbit_reps(group: &PermGroup, k: usize) -> Vec<SetPartition> {
    let n = group.degree();
    let mut all: Vec<Vec<u16>> = Vec::new();
    let mut cursor = RgsCursor::new(n, k);
    while let Some(r) = cursor.next_rgs() {
        all.push(r.to_vec());
    }
    let index: FxHashMap<&[u16], usize> = all.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect();
    let mut uf = UnionFind::new(all.len());
    let parts: Vec<SetPartition> = all.iter().map(|r| SetPartition::from_rgs(r)).collect();
    for (i, p) in parts.iter().enumerate() {
        for g in group.generators() {
            let j = index[p.image(g).rgs()];
            uf.union(i, j);
        }
    }
    uf.classes().into_iter().map(|c| parts[c[0]].clone()).collect()
}

/// Direct check of [`regular_for_all_rank_k`]: every (kernel orbit, image
/// orbit) pair of rank-`k` maps is tested with [`is_regular_in`].
pub fn regular_for_all_rank_k_direct(group: &PermGroup, k: usize) -> Result<DirectRegularity> {
    let n = group.degree();
    if k < 1 || k > n {
        return Err(invalid(format!("rank {k} must lie in 1..={n}")));
    }
    let kernels = partition_orbit_reps(group, k);
    let images = SetOrbitIndex::build(group, k)?.representatives().to_vec();
    direct_over(group, &kernels, &images)
}

fn direct_over(group: &PermGroup, kernels: &[SetPartition], images: &[KSet]) -> Result<DirectRegularity> {
    let mut checked = 0;
    for kernel in kernels {
        for image in images {
            let a = Transformation::with_kernel_and_image(kernel, image)?;
            checked += 1;
            if !is_regular_in(&a, group)?.regular {
                return Ok(DirectRegularity {
                    regular: false,
                    witness: Some(a),
                    maps_checked: checked,
                });
            }
        }
    }
    Ok(DirectRegularity {
        regular: true,
        witness: None,
        maps_checked: checked,
    })
}

/// Is every rank-`k` quasi-permutation regular in `⟨a, G⟩`? Equivalent to
/// `(n−k, n−k+1)`-homogeneity, and decided that way.
pub fn quasi_regularity_classifier(group: &PermGroup, k: usize) -> Result<bool> {
    let n = group.degree();
    if k < 2 || k >= n {
        return Err(invalid(format!("need 1 < k < n = {n}, got k = {k}")));
    }
    Ok(is_ij_homogeneous(group, n - k, n - k + 1)?.holds)
}

/// Direct check of [`quasi_regularity_classifier`]: the nontrivial kernel
/// class runs over orbit representatives of `(n−k+1)`-sets, the image over
/// orbit representatives of `k`-sets.
pub fn quasi_regularity_direct(group: &PermGroup, k: usize) -> Result<DirectRegularity> {
    let n = group.degree();
    if k < 2 || k >= n {
        return Err(invalid(format!("need 1 < k < n = {n}, got k = {k}")));
    }
    let heads = SetOrbitIndex::build(group, n - k + 1)?;
    let kernels: Vec<SetPartition> = heads
        .representatives()
        .iter()
        .map(|h| {
            let labels: Vec<usize> = (1..=n).map(|p| if h.contains(p) { 0 } else { p }).collect();
            SetPartition::from_labels(&labels)
        })
        .collect();
    let images = SetOrbitIndex::build(group, k)?.representatives().to_vec();
    direct_over(group, &kernels, &images)
}

/// `⟨a, G⟩` as a list of elements: the group generators together with `a`.
pub fn closure_with_group(a: &Transformation, group: &PermGroup, cap: usize) -> Result<Vec<Transformation>> {
    let mut gens: Vec<Transformation> = group.generators().iter().map(Transformation::from).collect();
    gens.push(a.clone());
    semigroup_closure(&gens, cap)
}

/// Brute-force regularity of `a` inside an explicit element list.
pub fn is_regular_element_in(a: &Transformation, elements: &[Transformation]) -> bool {
    let img = a.image().zero_based().to_vec();
    let restrictions = restrictions_to(elements, &img);
    inverse_exists(a, &restrictions, &img)
}
