//! Canonical orderings of 3-connected planar graphs and the spanning trees
//! read from them: the parent-edge 3-tree, the dual canonical ordering, and a
//! spanning 5-tree whose co-tree is also a 5-tree.

pub mod connectivity;
pub mod dot;
pub mod dual;
pub mod dual_order;
pub mod embedding;
pub mod generate;
pub mod order;
pub mod pipeline;
pub mod report;
pub mod trees;
pub mod verify;

pub use dual::{dual, DualGraph};
pub use embedding::{Dart, EdgeId, FaceId, GraphError, GraphJson, PlanarGraph, Roots, Vertex};
pub use order::{compute_canonical_ordering, validate_canonical_ordering, CanonicalOrdering};
pub use pipeline::{five_tree, Pipeline};
pub use report::ValidationReport;
