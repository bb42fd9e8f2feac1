//! Set partitions of `{1..n}`: canonical form, enumeration by restricted
//! growth strings, and sections (transversals).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::perm::{check_degree, Permutation};
use crate::set_orbits::KSet;

/// A partition of `{1..n}` into nonempty blocks.
///
/// Canonical form: each block sorted, blocks ordered by their least element.
/// Two partitions are equal iff their canonical forms are.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    blocks: Vec<Vec<u16>>,
    // block index of point p stored at p-1
    block_of: Vec<u16>,
}

impl SetPartition {
    /// Validates and canonicalizes a list of 1-based blocks.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        check_degree(n)?;
        let mut seen = vec![false; n];
        for b in &blocks {
            if b.is_empty() {
                return Err(invalid("partition blocks must be nonempty"));
            }
            for &p in b {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, degree: n });
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(invalid(format!("point {p} lies in two blocks")));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(invalid(format!("point {} is not covered", missing + 1)));
        }
        Ok(Self::from_blocks_0(
            n,
            blocks
                .into_iter()
                .map(|b| b.into_iter().map(|p| p - 1).collect())
                .collect(),
        ))
    }

    /// Builds from 0-based blocks that are already known to partition `0..n`.
    pub(crate) fn from_blocks_0(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        let mut block_of = vec![0u16; n];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i as u16;
            }
        }
        Self::from_labels(&block_of)
    }

    /// Builds from any block labelling of the points (`labels[p-1]` is the
    /// label of point `p`); labels only need to be equal within a block.
    pub fn from_labels<T: Copy + Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut ids: rustc_hash::FxHashMap<T, u16> = Default::default();
        let mut blocks: Vec<Vec<u16>> = Vec::new();
        let mut block_of = Vec::with_capacity(labels.len());
        for (x, &l) in labels.iter().enumerate() {
            let next = blocks.len() as u16;
            let id = *ids.entry(l).or_insert(next);
            if id == next {
                blocks.push(Vec::new());
            }
            blocks[id as usize].push(x as u16 + 1);
            block_of.push(id);
        }
        SetPartition { blocks, block_of }
    }

    /// Builds from a restricted growth string (0-based block ids, first
    /// occurrences in increasing order).
    pub fn from_rgs(rgs: &[u16]) -> Self {
        Self::from_labels(rgs)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.block_of.len()
    }

    #[inline]
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks in canonical order, 1-based points.
    pub fn blocks(&self) -> &[Vec<u16>] {
        &self.blocks
    }

    /// Index (in canonical order) of the block holding the 1-based point `p`.
    #[inline]
    pub fn block_index_of(&self, p: usize) -> usize {
        self.block_of[p - 1] as usize
    }

    /// The restricted growth string: block index of each point.
    pub fn rgs(&self) -> &[u16] {
        &self.block_of
    }

    /// Sizes of blocks, in canonical order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Number of sections: the product of block sizes.
    pub fn section_count(&self) -> BigUint {
        self.blocks
            .iter()
            .fold(BigUint::one(), |acc, b| acc * BigUint::from(b.len()))
    }

    /// True iff `s` meets every block exactly once.
    pub fn is_section(&self, s: &KSet) -> bool {
        if s.len() != self.num_blocks() || s.max_point() > self.degree() {
            return false;
        }
        let mut hit = vec![false; self.num_blocks()];
        s.iter()
            .all(|p| !std::mem::replace(&mut hit[self.block_index_of(p)], true))
    }

    /// Image of the partition under `g`.
    pub fn image(&self, g: &Permutation) -> SetPartition {
        let mut labels = vec![0u16; self.degree()];
        for (x, &b) in self.block_of.iter().enumerate() {
            labels[g.img0(x)] = b;
        }
        Self::from_labels(&labels)
    }

    /// True when every block has at most one point, except possibly one.
    pub fn has_single_nontrivial_block(&self) -> bool {
        self.blocks.iter().filter(|b| b.len() > 1).count() <= 1
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, p) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `1,2|3,4`; the degree is the largest point.
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(|b| {
                b.split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| invalid(format!("bad point `{}`", p.trim())))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().flatten().copied().max().unwrap_or(0);
        SetPartition::new(n, blocks)
    }
}

impl serde::Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for SetPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Disjoint blocks that need not cover `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubPartition {
    degree: usize,
    blocks: Vec<Vec<u16>>,
}

impl SubPartition {
    pub fn new(degree: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        check_degree(degree)?;
        let mut seen = vec![false; degree];
        let mut out = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return Err(invalid("subpartition blocks must be nonempty"));
            }
            let mut block = Vec::with_capacity(b.len());
            for p in b {
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut seen[p - 1], true) {
                    return Err(invalid(format!("point {p} lies in two blocks")));
                }
                block.push(p as u16);
            }
            out.push(block);
        }
        Ok(SubPartition {
            degree,
            blocks: out,
        })
    }

    /// One singleton block per point of `s`.
    pub fn singletons(degree: usize, s: &KSet) -> Result<Self> {
        Self::new(degree, s.iter().map(|p| vec![p]).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<u16>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn support_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }
}

impl fmt::Display for SubPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", strs.join("|"))
    }
}

/// Partition with every head a singleton block and everything else one block.
pub fn singleton_tail_partition(heads: &KSet, n: usize) -> Result<SetPartition> {
    if heads.max_point() > n {
        return Err(Error::PointOutOfRange {
            point: heads.max_point(),
            degree: n,
        });
    }
    if heads.len() >= n {
        return Err(invalid("heads must leave at least one point for the tail"));
    }
    let mut labels = vec![u16::MAX; n];
    for (i, p) in heads.iter().enumerate() {
        labels[p - 1] = i as u16;
    }
    Ok(SetPartition::from_labels(&labels))
}

/// Partition with `inside` as singletons, `block \ inside` as one part and the
/// rest of the points as another.
pub fn steiner_bad_partition(
    block: &[usize],
    inside: &KSet,
    n: usize,
    k: usize,
) -> Result<SetPartition> {
    if k < 3 || inside.len() != k - 2 {
        return Err(invalid(format!(
            "need exactly k-2 = {} inside points, got {}",
            k.saturating_sub(2),
            inside.len()
        )));
    }
    let mut in_block = vec![false; n + 1];
    for &p in block {
        if p == 0 || p > n {
            return Err(Error::PointOutOfRange { point: p, degree: n });
        }
        in_block[p] = true;
    }
    if !inside.iter().all(|p| p <= n && in_block[p]) {
        return Err(invalid("inside points must lie in the block"));
    }
    if block.len() <= inside.len() || block.len() >= n {
        return Err(invalid(
            "block must strictly contain the inside points and miss some point",
        ));
    }
    let mut labels = vec![0u32; n];
    for p in 1..=n {
        labels[p - 1] = if in_block[p] { 1 } else { 2 };
    }
    for (i, p) in inside.iter().enumerate() {
        labels[p - 1] = 3 + i as u32;
    }
    Ok(SetPartition::from_labels(&labels))
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = &row[j] * BigUint::from(j) + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row[k].clone()
}

/// Restricted growth strings of length `n` with exactly `k` distinct values,
/// in lexicographic order.
#[derive(Clone, Debug)]
pub struct RgsCursor {
    a: Vec<u16>,
    k: u16,
    started: bool,
    done: bool,
}

impl RgsCursor {
    pub fn new(n: usize, k: usize) -> Self {
        let done = k == 0 || k > n || n == 0;
        let mut c = RgsCursor {
            a: vec![0; n],
            k: k as u16,
            started: false,
            done,
        };
        if !done {
            c.fill_from(1, 0);
        }
        c
    }

    /// Fills positions `start..` minimally given the prefix maximum `max`.
    fn fill_from(&mut self, start: usize, mut max: u16) {
        let n = self.a.len();
        for j in start..n {
            // after placing 0 at j there are n-j-1 positions left
            if (max as usize + 1) + (n - j - 1) >= self.k as usize {
                self.a[j] = 0;
            } else {
                max += 1;
                self.a[j] = max;
            }
        }
    }

    /// Advances to the next string; returns the current one or `None` at the end.
    pub fn next_rgs(&mut self) -> Option<&[u16]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.a);
        }
        let n = self.a.len();
        let mut prefix_max = vec![0u16; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.a[i - 1]);
        }
        for i in (1..n).rev() {
            let m = prefix_max[i];
            let v = self.a[i] + 1;
            if v > m + 1 || v >= self.k {
                continue;
            }
            let new_max = m.max(v);
            if (new_max as usize + 1) + (n - 1 - i) < self.k as usize {
                continue;
            }
            self.a[i] = v;
            self.fill_from(i + 1, new_max);
            return Some(&self.a);
        }
        self.done = true;
        None
    }
}

/// Every partition of `{1..n}` into exactly `k` blocks, each exactly once.
pub struct KPartitions {
    cursor: RgsCursor,
}

impl Iterator for KPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        self.cursor.next_rgs().map(SetPartition::from_rgs)
    }
}

/// Streams the `k`-partitions of `{1..n}` in restricted-growth-string order.
pub fn enumerate_kpartitions(n: usize, k: usize) -> KPartitions {
    KPartitions {
        cursor: RgsCursor::new(n, k),
    }
}
