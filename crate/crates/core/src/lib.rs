//! Deciders for homogeneity, the universal transversal property and
//! regularity of semigroups generated by a transformation and a permutation
//! group.

pub mod catalog;
pub mod error;
pub mod harness;
pub mod num_theory;
pub mod partitions;
pub mod perm;
pub mod semigroup;
pub mod set_orbits;
pub mod ut;

pub use error::{Error, Result};
pub use partitions::{SetPartition, SubPartition};
pub use perm::{BlockSystem, PermGroup, Permutation};
pub use semigroup::Transformation;
pub use set_orbits::{KSet, KSetOrbit};
