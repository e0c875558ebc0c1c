//! Uniform random generation of ordered trees with a prescribed multiset of
//! node outdegrees.
//!
//! A tree is represented by its prefix code: the outdegrees of its nodes
//! listed in preorder. [`sample_tree`] shuffles the requested degrees and
//! rotates the result into the unique well-formed position, which selects
//! every tree with equal probability in linear time. The [`oracle`] module
//! provides exhaustive enumeration and exact counts to check that claim.

pub mod cli;
pub mod codec;
pub mod degree;
pub mod error;
pub mod oracle;
pub mod random;
pub mod sampler;
pub mod stats;

pub use codec::{
    decode_prefix, encode_prefix, render_expression, to_dot, to_json, to_sexpr, ExpressionStyle,
    OperatorAlphabet, TreeNode,
};
pub use degree::{
    charge, decompose, is_constructible, is_well_formed, prefix_charges, Charge, DegreeMultiset,
    DegreeSequence, SegmentDecomposition,
};
pub use error::{Error, Result};
pub use oracle::{catalan, count_trees, enumerate_trees, TreeCount};
pub use random::{RandomSource, SeededRandom};
pub use sampler::{find_rotation_point, fisher_yates_shuffle, rotate, sample_tree, ScanState};
pub use stats::{uniformity_report, FrequencyReport};
