//! Nested families of binary completely regular codes of covering radius 3
//! built from GF(2^m) = GF(2^u)[α], their extensions of covering radius 4,
//! their coset graphs, and exact computational checks of their properties.

pub mod bits;
pub mod cli;
pub mod codes;
pub mod error;
pub mod field;
pub mod graphs;
pub mod regularity;
pub mod report;
pub mod transitivity;

pub use error::{Error, Result};
