//! Shared fixtures for the benchmarks.

use utlab::catalog;
use utlab::{PermGroup, Transformation};

/// A catalog group, panicking on unknown names.
pub fn fixture(name: &str) -> PermGroup {
    catalog::group(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A rank-`k` quasi-permutation of degree `n`: points `1..=n-k+1` collapse to 1,
/// the rest are fixed.
pub fn quasi_permutation(n: usize, k: usize) -> Transformation {
    let images: Vec<usize> = (1..=n).map(|p| if p <= n - k + 1 { 1 } else { p }).collect();
    Transformation::new(&images).expect("valid images")
}
