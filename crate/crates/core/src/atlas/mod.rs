//! Group constructors.

pub mod field;
pub mod linear;
pub mod mathieu;
pub mod groups;
pub mod spec;
