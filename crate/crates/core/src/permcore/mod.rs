//! Permutations, stabilizer chains and the group algorithms built on them.

pub mod backtrack;
pub mod chain;
pub mod coset;
pub mod group;
pub mod orbit;
pub mod perm;
pub mod subgroups;

pub use chain::{Chain, ChainBuilder};
pub use group::{Group, Subgroup};
pub use perm::Perm;
