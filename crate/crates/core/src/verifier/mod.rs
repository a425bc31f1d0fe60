//! Claims, recipes and the suite runner.

pub mod claim;
pub mod discover;
pub mod recipe;
pub mod suite;

pub use claim::{load_claims, parse_claims, run_claim, Claim, Report, Status};
pub use suite::{run_suite, SuiteOptions, Summary};
