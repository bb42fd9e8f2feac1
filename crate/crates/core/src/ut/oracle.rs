//! Section queries against a fixed orbit on `k`-sets.

use smallvec::SmallVec;

use crate::error::Result;
use crate::perm::PermGroup;
use crate::set_orbits::SetOrbitIndex;

/// Marker for a point not yet assigned to a block.
pub(crate) const UNPLACED: u16 = u16::MAX;

/// An orbit index on `k`-sets together with the member lists of each orbit,
/// answering "does orbit `O` contain a section of this (sub)partition?".
#[derive(Clone, Debug)]
pub struct SectionOracle {
    index: SetOrbitIndex,
    // members of each orbit as sorted 0-based points, flattened with stride k
    members: Vec<Vec<u16>>,
}

impl SectionOracle {
    pub fn new(group: &PermGroup, k: usize) -> Result<Self> {
        Ok(Self::from_index(SetOrbitIndex::build(group, k)?))
    }

    pub fn from_index(index: SetOrbitIndex) -> Self {
        let members = (0..index.num_orbits())
            .map(|o| index.members_raw(o).into_iter().flatten().collect())
            .collect();
        SectionOracle { index, members }
    }

    pub fn index(&self) -> &SetOrbitIndex {
        &self.index
    }

    pub fn k(&self) -> usize {
        self.index.k()
    }

    pub fn degree(&self) -> usize {
        self.index.degree()
    }

    pub fn num_orbits(&self) -> usize {
        self.index.num_orbits()
    }

    /// Members of an orbit, each a sorted slice of `k` 0-based points.
    pub(crate) fn members(&self, orbit: usize) -> impl Iterator<Item = &[u16]> {
        self.members[orbit].chunks_exact(self.k())
    }

    pub(crate) fn orbit_len(&self, orbit: usize) -> usize {
        self.members[orbit].len() / self.k()
    }

    /// A section of the partial assignment `block_of` (0-based block ids,
    /// [`UNPLACED`] allowed) inside `orbit`, if any. `blocks` lists the placed
    /// points of each of the `k` blocks.
    ///
    /// Chooses the cheaper of scanning the orbit and scanning the product of
    /// the blocks.
    pub(crate) fn find_section(
        &self,
        orbit: usize,
        block_of: &[u16],
        blocks: &[Vec<u16>],
    ) -> Option<SmallVec<[u16; 8]>> {
        let k = self.k();
        debug_assert_eq!(blocks.len(), k);
        let product = blocks
            .iter()
            .try_fold(1usize, |acc, b| acc.checked_mul(b.len()))
            .unwrap_or(usize::MAX);
        if product == 0 {
            return None;
        }
        if product < self.orbit_len(orbit) {
            let mut pick = vec![0usize; k];
            let mut set: SmallVec<[u16; 8]> = SmallVec::with_capacity(k);
            loop {
                set.clear();
                set.extend(pick.iter().zip(blocks).map(|(&i, b)| b[i]));
                set.sort_unstable();
                if self.index.label_of_sorted0(&set) == orbit {
                    return Some(set);
                }
                // odometer
                let mut t = 0;
                loop {
                    if t == k {
                        return None;
                    }
                    pick[t] += 1;
                    if pick[t] < blocks[t].len() {
                        break;
                    }
                    pick[t] = 0;
                    t += 1;
                }
            }
        } else {
            let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
            self.members(orbit)
                .find(|m| {
                    let mut mask = 0u64;
                    for &x in m.iter() {
                        let b = block_of[x as usize];
                        if b == UNPLACED {
                            return false;
                        }
                        mask |= 1 << b;
                    }
                    mask == full
                })
                .map(SmallVec::from_slice)
        }
    }
}
