//! Permutational word representations of trees, paths, even cycles and book
//! graphs, with exhaustive oracles that certify the resulting
//! permutation-representation numbers on small inputs.

pub mod acceptance;
pub mod bookgraph;
pub mod error;
pub mod graphcore;
pub mod oracle;
pub mod pathcycle;
pub mod treebuilder;

pub use error::{Error, Result};
