//! Regular two-graph test for an orbit on 3-sets, and the counting argument
//! that turns it into a proof that the orbit meets every 3-partition.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::perm::{PermGroup, UnionFind};
use crate::set_orbits::{binomial_u64, KSet, SetOrbitIndex};

/// Above this many 4-sets the parity condition is sampled.
pub const EXHAUSTIVE_QUADRUPLES: u64 = 50_000_000;
/// Number of random 4-sets checked when sampling.
pub const PARITY_SAMPLES: usize = 100_000;

/// Outcome of [`two_graph_check`] for an orbit that is a regular two-graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGraphReport {
    pub representative: KSet,
    /// Number of orbit members through any two points.
    pub lambda: usize,
    /// Whether every 4-set was checked for even parity (else sampled).
    pub parity_exhaustive: bool,
    /// Number of 4-sets checked.
    pub quadruples_checked: u64,
    /// For every point `x`, the pairs completing `x` to a member form a
    /// connected graph on the other points.
    pub descendants_connected: bool,
    /// The orbit contains a section of every 3-partition.
    pub certified: bool,
}

/// Checks whether the orbit of the 3-set `rep` is a regular two-graph and, if
/// so, whether the counting bounds certify that it meets every 3-partition.
/// Returns `None` when the orbit is not a regular two-graph.
pub fn two_graph_check(group: &PermGroup, rep: &KSet, seed: u64) -> Result<Option<TwoGraphReport>> {
    if rep.len() != 3 {
        return Err(invalid("a two-graph lives on 3-sets"));
    }
    let index = SetOrbitIndex::build(group, 3)?;
    let orbit = index.label_of(rep);
    two_graph_check_in(group, &index, orbit, seed)
}

pub(crate) fn two_graph_check_in(
    group: &PermGroup,
    index: &SetOrbitIndex,
    orbit: usize,
    seed: u64,
) -> Result<Option<TwoGraphReport>> {
    let n = index.degree();
    if index.k() != 3 || n < 4 {
        return Err(invalid("need an index on 3-sets with at least 4 points"));
    }
    let members = index.members_raw(orbit);
    let mut pair_count = vec![0u32; n * n];
    for m in &members {
        let (a, b, c) = (m[0] as usize, m[1] as usize, m[2] as usize);
        pair_count[a * n + b] += 1;
        pair_count[a * n + c] += 1;
        pair_count[b * n + c] += 1;
    }
    let lambda = pair_count[1] as usize;
    for x in 0..n {
        for y in x + 1..n {
            if pair_count[x * n + y] as usize != lambda {
                return Ok(None);
            }
        }
    }

    let inside = |s: [u16; 3]| index.label_of_sorted0(&s) == orbit;
    let even = |q: [u16; 4]| {
        let [a, b, c, d] = q;
        let count = [[a, b, c], [a, b, d], [a, c, d], [b, c, d]]
            .into_iter()
            .filter(|&s| inside(s))
            .count();
        count % 2 == 0
    };
    let total = binomial_u64(n, 4);
    let parity_exhaustive = total <= EXHAUSTIVE_QUADRUPLES;
    let quadruples_checked;
    if parity_exhaustive {
        let n = n as u16;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        if !even([a, b, c, d]) {
                            return Ok(None);
                        }
                    }
                }
            }
        }
        quadruples_checked = total;
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..PARITY_SAMPLES {
            let mut q = [0u16; 4];
            loop {
                for x in q.iter_mut() {
                    *x = rng.gen_range(0..n as u16);
                }
                q.sort_unstable();
                if q.windows(2).all(|w| w[0] < w[1]) {
                    break;
                }
            }
            if !even(q) {
                return Ok(None);
            }
        }
        quadruples_checked = PARITY_SAMPLES as u64;
    }

    // a singleton part {x} avoids the orbit iff the graph of pairs completing
    // x to a member is disconnected
    let mut descendants_connected = true;
    for point_orbit in group.orbits_on_points() {
        let x = point_orbit[0] - 1;
        let mut uf = UnionFind::new(n);
        let mut merges = 0;
        for m in &members {
            if let Some(pos) = m.iter().position(|&p| p as usize == x) {
                let (p, q) = match pos {
                    0 => (m[1], m[2]),
                    1 => (m[0], m[2]),
                    _ => (m[0], m[1]),
                };
                if uf.union(p as usize, q as usize) {
                    merges += 1;
                }
            }
        }
        if merges != n - 2 {
            descendants_connected = false;
            break;
        }
    }

    // with smallest part X, |X| ≥ 2: either λ ≥ n − |X| or λ ≤ |X| − 2
    let third = (n / 3) as i64;
    let lam = lambda as i64;
    let bounds_fail = third - 2 < lam && lam < n as i64 - third;
    Ok(Some(TwoGraphReport {
        representative: index.representatives()[orbit].clone(),
        lambda,
        parity_exhaustive,
        quadruples_checked,
        descendants_connected,
        certified: bounds_fail && descendants_connected,
    }))
}
