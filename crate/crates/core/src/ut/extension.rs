//! Breadth-first subpartition extension.
//!
//! Starting from a seed with `k` blocks, the smallest unplaced point is added
//! to each block in turn. A node is discarded as soon as the orbit contains a
//! section of it, because every completion then has that section too. If the
//! frontier dies out, every partition extending the seed has a section in the
//! orbit; a node that survives until all points are placed is a partition
//! without one.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::oracle::{SectionOracle, UNPLACED};
use crate::error::{invalid, Error, Result};
use crate::partitions::{SetPartition, SubPartition};

/// Default cap on the number of frontier nodes.
pub const DEFAULT_FRONTIER_CAP: usize = 10_000_000;

/// Result of one extension run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionOutcome {
    /// Every partition extending the seed has a section in the orbit.
    pub holds: bool,
    /// A partition extending the seed with no section in the orbit.
    pub witness: Option<SetPartition>,
    /// Frontier size after each placed point.
    pub profile: Vec<usize>,
}

struct Plan {
    n: usize,
    k: usize,
    seed_of: Vec<u16>,
    // points to place, ascending
    order: Vec<u16>,
    // for order[d]: other points of orbit members through order[d] whose
    // remaining points are all placed by then, flattened with stride k-1
    through: Vec<Vec<u16>>,
}

impl Plan {
    fn new(oracle: &SectionOracle, orbit: usize, seed: &SubPartition) -> Result<Plan> {
        let n = oracle.degree();
        let k = oracle.k();
        if seed.degree() != n || seed.num_blocks() != k {
            return Err(invalid(format!(
                "seed must have exactly {k} blocks on {n} points"
            )));
        }
        if k > 255 {
            return Err(invalid("extension supports at most 255 blocks"));
        }
        let mut seed_of = vec![UNPLACED; n];
        for (b, block) in seed.blocks().iter().enumerate() {
            for &p in block {
                seed_of[p as usize - 1] = b as u16;
            }
        }
        let order: Vec<u16> = (0..n as u16).filter(|&x| seed_of[x as usize] == UNPLACED).collect();
        // step at which each point becomes placed (seed points: 0)
        let mut placed_at = vec![0usize; n];
        for (d, &x) in order.iter().enumerate() {
            placed_at[x as usize] = d + 1;
        }
        let mut through = vec![Vec::new(); order.len()];
        for m in oracle.members(orbit) {
            let last = m.iter().map(|&x| placed_at[x as usize]).max().unwrap_or(0);
            if last == 0 {
                continue;
            }
            let p = order[last - 1];
            if m.iter().filter(|&&x| placed_at[x as usize] == last).count() != 1 {
                continue;
            }
            through[last - 1].extend(m.iter().filter(|&&x| x != p));
        }
        Ok(Plan {
            n,
            k,
            seed_of,
            order,
            through,
        })
    }

    fn assignment(&self, node: &[u8]) -> Vec<u16> {
        let mut block_of = self.seed_of.clone();
        for (&x, &b) in self.order.iter().zip(node) {
            block_of[x as usize] = b as u16;
        }
        block_of
    }

    /// Blocks into which `order[depth]` can go without creating a section.
    fn allowed(&self, oracle: &SectionOracle, orbit: usize, node: &[u8]) -> Vec<u8> {
        let depth = node.len();
        let p = self.order[depth];
        let block_of = self.assignment(node);
        let k = self.k;
        let full: u64 = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let others = &self.through[depth];
        let member_cost = others.len() / (k - 1).max(1);
        let mut sizes = vec![0usize; k];
        for &b in block_of.iter() {
            if b != UNPLACED {
                sizes[b as usize] += 1;
            }
        }
        let product_cost: usize = (0..k)
            .map(|b| {
                sizes
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != b)
                    .try_fold(1usize, |acc, (_, &s)| acc.checked_mul(s))
                    .unwrap_or(usize::MAX)
            })
            .fold(0usize, |a, c| a.saturating_add(c));
        let mut killed = 0u64;
        if k == 1 {
            killed = full;
        } else if product_cost < member_cost {
            let mut blocks: Vec<Vec<u16>> = vec![Vec::new(); k];
            for (x, &b) in block_of.iter().enumerate() {
                if b != UNPLACED {
                    blocks[b as usize].push(x as u16);
                }
            }
            let mut assign = block_of.clone();
            for b in 0..k {
                assign[p as usize] = b as u16;
                blocks[b].push(p);
                // only sections through p are new: restrict block b to {p}
                let saved = std::mem::replace(&mut blocks[b], vec![p]);
                if oracle.find_section(orbit, &assign, &blocks).is_some() {
                    killed |= 1 << b;
                }
                blocks[b] = saved;
                blocks[b].pop();
            }
        } else {
            for m in others.chunks_exact(k - 1) {
                let mut mask = 0u64;
                let mut ok = true;
                for &x in m {
                    let bit = 1u64 << block_of[x as usize];
                    if mask & bit != 0 {
                        ok = false;
                        break;
                    }
                    mask |= bit;
                }
                if ok {
                    killed |= full & !mask;
                    if killed == full {
                        break;
                    }
                }
            }
        }
        (0..k as u8).filter(|&b| killed & (1 << b) == 0).collect()
    }
}

/// Runs the extension from `seed` against orbit `orbit` of the oracle.
pub fn extend_from_seed(
    oracle: &SectionOracle,
    orbit: usize,
    seed: &SubPartition,
    frontier_cap: usize,
) -> Result<ExtensionOutcome> {
    let plan = Plan::new(oracle, orbit, seed)?;
    // the seed itself may already have a section
    let block_of = plan.assignment(&[]);
    let mut blocks: Vec<Vec<u16>> = vec![Vec::new(); plan.k];
    for (x, &b) in block_of.iter().enumerate() {
        if b != UNPLACED {
            blocks[b as usize].push(x as u16);
        }
    }
    if oracle.find_section(orbit, &block_of, &blocks).is_some() {
        return Ok(ExtensionOutcome {
            holds: true,
            witness: None,
            profile: Vec::new(),
        });
    }
    let mut frontier: Vec<u8> = Vec::new();
    let mut count = 1usize;
    let mut profile = Vec::with_capacity(plan.order.len());
    for depth in 0..plan.order.len() {
        let chunk = 256usize;
        let nodes: Vec<&[u8]> = if depth == 0 {
            vec![&[][..]; 1]
        } else {
            frontier.chunks_exact(depth).collect()
        };
        let children: Vec<Vec<u8>> = nodes
            .par_chunks(chunk)
            .map(|batch| {
                let mut out = Vec::new();
                for node in batch {
                    for b in plan.allowed(oracle, orbit, node) {
                        out.extend_from_slice(node);
                        out.push(b);
                    }
                }
                out
            })
            .collect();
        let next: Vec<u8> = children.concat();
        count = next.len() / (depth + 1);
        profile.push(count);
        if count > frontier_cap {
            return Err(Error::CapExceeded {
                what: "extension frontier",
                cap: frontier_cap as u64,
                reached: count as u64,
            });
        }
        frontier = next;
        if count == 0 {
            return Ok(ExtensionOutcome {
                holds: true,
                witness: None,
                profile,
            });
        }
    }
    debug_assert!(count > 0);
    let depth = plan.order.len();
    let first: &[u8] = if depth == 0 { &[] } else { &frontier[..depth] };
    let labels = plan.assignment(first);
    if labels.contains(&UNPLACED) {
        return Err(invalid("seed leaves a block empty"));
    }
    debug_assert_eq!(labels.len(), plan.n);
    Ok(ExtensionOutcome {
        holds: false,
        witness: Some(SetPartition::from_labels(&labels)),
        profile,
    })
}
