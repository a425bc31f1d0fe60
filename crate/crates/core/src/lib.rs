//! Computational checks of factorizations of finite permutation groups.

pub mod error;
pub mod atlas;
pub mod factorization;
pub mod numtheory;
pub mod permcore;
pub mod structure;
pub mod syntax;
pub mod verifier;

pub use error::{Error, Result};
pub use permcore::{Group, Perm, Subgroup};
