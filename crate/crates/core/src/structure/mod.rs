//! Invariants of permutation groups: conjugacy classes, structure
//! signatures, transitivity, primitivity and metacyclic subgroups.

pub mod classes;
pub mod expr;
pub mod metacyclic;
pub mod signature;
pub mod profile;
pub mod twogen;
