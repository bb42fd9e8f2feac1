//! Multiplicative subgroups of GF(p)* and the ⟨−1, c, c−1⟩ criterion for the
//! 3-universal transversal property of AGL(1,p).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Deterministic trial-division primality test (inputs are desk-scale).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        Err(Error::NotPrime(p))
    } else {
        Ok(())
    }
}

/// Elements of the subgroup of GF(p)* generated by `gens`, sorted.
pub fn subgroup_elements(p: u64, gens: &[u64]) -> Result<Vec<u64>> {
    check_odd_prime(p)?;
    if gens.is_empty() {
        return Err(invalid("need at least one generator"));
    }
    for &g in gens {
        if g % p == 0 {
            return Err(invalid(format!("{g} is not a unit mod {p}")));
        }
    }
    let mut member = vec![false; p as usize];
    member[1] = true;
    let mut elems = vec![1u64];
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head];
        head += 1;
        for &g in gens {
            let y = x * (g % p) % p;
            if !member[y as usize] {
                member[y as usize] = true;
                elems.push(y);
            }
        }
    }
    elems.sort_unstable();
    Ok(elems)
}

/// Order of the subgroup of GF(p)* generated by `gens`.
pub fn subgroup_order(p: u64, gens: &[u64]) -> Result<u64> {
    Ok(subgroup_elements(p, gens)?.len() as u64)
}

/// The criterion table for one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AglReport {
    pub p: u64,
    /// `(c, |⟨−1, c, c−1⟩|)` for `c = 2..p−1`.
    pub orders: Vec<(u64, u64)>,
    /// True iff every order equals `p − 1`.
    pub verdict: bool,
    /// The `c` whose subgroup is proper.
    pub witnesses: Vec<u64>,
}

fn h_order(p: u64, c: u64) -> u64 {
    subgroup_order(p, &[p - 1, c, c - 1]).expect("valid arguments")
}

/// Full criterion table for AGL(1,p), `p ≥ 5`.
pub fn agl_criterion(p: u64) -> Result<AglReport> {
    check_odd_prime(p)?;
    if p < 5 {
        return Err(invalid("the criterion needs p >= 5"));
    }
    let orders: Vec<(u64, u64)> = (2..p).map(|c| (c, h_order(p, c))).collect();
    let witnesses: Vec<u64> = orders
        .iter()
        .filter(|&&(_, o)| o < p - 1)
        .map(|&(c, _)| c)
        .collect();
    Ok(AglReport {
        p,
        verdict: witnesses.is_empty(),
        orders,
        witnesses,
    })
}

/// Verdict only: stops at the first `c` with a proper subgroup, returning it
/// together with that subgroup's order.
pub fn agl_criterion_fast(p: u64) -> Result<(bool, Option<(u64, u64)>)> {
    check_odd_prime(p)?;
    if p < 5 {
        return Err(invalid("the criterion needs p >= 5"));
    }
    for c in 2..p {
        let o = h_order(p, c);
        if o < p - 1 {
            return Ok((false, Some((c, o))));
        }
    }
    Ok((true, None))
}

/// A primitive sixth root of unity (the least root of `c² − c + 1`) when
/// `p ≡ 1 (mod 3)` and `p > 7`.
pub fn sixth_root_shortcut(p: u64) -> Option<u64> {
    if !is_prime(p) || p % 3 != 1 || p <= 7 {
        return None;
    }
    (2..p).find(|&c| (c * c + 1) % p == c % p)
}

/// The larger element of the first pair of consecutive nonzero quadratic
/// residues when `p ≡ 1 (mod 4)` and `p > 5`.
pub fn consecutive_qr_shortcut(p: u64) -> Option<u64> {
    if !is_prime(p) || p % 4 != 1 || p <= 5 {
        return None;
    }
    let mut residue = vec![false; p as usize];
    for x in 1..p {
        residue[(x * x % p) as usize] = true;
    }
    (2..p).find(|&c| residue[c as usize] && residue[c as usize - 1])
}

/// One row of the sieve over primes `p ≡ 11 (mod 12)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveRow {
    pub p: u64,
    pub verdict: bool,
    pub min_witness: Option<u64>,
    /// Order of `⟨−1, c, c−1⟩` for the minimal witness.
    pub witness_order: Option<u64>,
}

/// Runs the criterion for every prime `p ≡ 11 (mod 12)` up to `limit`.
pub fn sieve_problem1(limit: u64) -> Vec<SieveRow> {
    let primes: Vec<u64> = (11..=limit)
        .step_by(12)
        .filter(|&p| is_prime(p))
        .collect();
    primes
        .par_iter()
        .map(|&p| {
            let (verdict, w) = agl_criterion_fast(p).expect("odd prime");
            SieveRow {
                p,
                verdict,
                min_witness: w.map(|(c, _)| c),
                witness_order: w.map(|(_, o)| o),
            }
        })
        .collect()
}

impl SieveRow {
    /// Tab-separated `p verdict min_witness order`, `-` for absent values.
    pub fn to_tsv(&self) -> String {
        let opt = |x: Option<u64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
        format!(
            "{}\t{}\t{}\t{}",
            self.p,
            self.verdict,
            opt(self.min_witness),
            opt(self.witness_order)
        )
    }
}
