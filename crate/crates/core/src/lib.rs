//! Generalized Catalan numbers `C(n,k) = binomial(kn, n-1) / n` and the four
//! families they count: non-crossing (n,k) star diagrams, `(n-1)`-subset
//! codes modulo the n-to-1 decoding map, full k-ary trees with `n` internal
//! nodes, and dissections of an `(n(k-1)+2)`-gon into `(k+1)`-gons.
//!
//! The bijections between the families are explicit and invertible. Every
//! family also has its own enumerator, and [`verify`] checks that they agree.

pub mod counting;
pub mod diagrams;
pub mod dissections;
pub mod error;
pub mod io;
pub mod render;
pub mod sampling;
pub mod trees;
pub mod validation;
pub mod verify;

pub use counting::{binomial, catalan_nk, check_convolution, gould_a, BigCount, ConvolutionReport};
pub use diagrams::{
    canonical_code, enumerate_diagrams, for_each_diagram, psi, theta, theta_fibers, validate_diagram, Diagram, Label,
    SubsetCode,
};
pub use dissections::{
    dissection_to_tree, enumerate_dissections, for_each_dissection, tree_to_dissection, validate_dissection,
    Dissection, Vertex,
};
pub use error::{Error, Result};
pub use io::{decode, encode, Kind, Located, Object};
pub use render::{render, RenderOptions};
pub use sampling::{sample_diagram, Sampler, SamplerConfig};
pub use trees::{
    diagram_to_tree, diagram_to_tree_at, enumerate_trees, for_each_tree, tree_to_diagram, validate_tree, FullKAryTree,
    OrderedTree, Word,
};
pub use validation::ValidationReport;
pub use verify::{verify_point, VerifyReport};

/// Default upper bound on the number of objects an enumeration may produce.
pub const DEFAULT_CAP: u64 = 1_000_000;
