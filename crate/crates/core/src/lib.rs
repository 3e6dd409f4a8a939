//! Treedepth of trees and graphs of bounded treewidth: vertex rankings,
//! subcubic subtree extraction, treedepth decompositions built from tree
//! decompositions, and the lifting argument that turns deep decompositions
//! into deep subtrees.

pub mod approx;
pub mod decomposition;
pub mod error;
pub mod extract;
pub mod extremal;
pub mod generate;
pub mod golden;
pub mod graph;
pub mod obstruction;
pub mod oracle;
pub mod ranking;
pub mod selftest;

pub use error::{Error, Result};
pub use golden::{GoldenValue, RingScalar, PHI};
pub use graph::{Graph, RootedTree, Subtree, TreeDecomposition, TreedepthDecomposition};
pub use ranking::{schaffer_rank, RankList, Ranking};

/// Exact Z[φ] values with machine coefficients; enough for every in-memory tree.
pub type Golden = GoldenValue<i128>;
/// Exact Z[φ] values with unbounded coefficients.
pub type BigGolden = GoldenValue<num_bigint::BigInt>;
