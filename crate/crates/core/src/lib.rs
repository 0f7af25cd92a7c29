//! Graph lineages, graded graphs and their skeletal products, with a
//! skeletal multigrid solver built on the same product structure.

pub mod eigen;
pub mod error;
pub mod graph;
pub mod lineage;
pub mod manifest;
pub mod mtx;
pub mod multigrid;
pub mod skeletal;
pub mod sparse;

pub use error::{Error, Result};
pub use graph::Graph;
pub use lineage::GradedGraph;
pub use sparse::{CsrMatrix, Permutation, SparseMatrix};
