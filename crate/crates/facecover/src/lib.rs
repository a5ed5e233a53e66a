//! Dominating face-hitting vertex partitions of plane graphs.

pub mod augment;
pub mod cover;
pub mod decompose;
pub mod error;
pub mod matching;
pub mod oracle;
pub mod planegraph;

pub use augment::{
    augment_ears, triangulate_all_anchored, triangulate_anchored, Augmentation,
    AugmentedTriangulation, EarSnapshot,
};
pub use cover::{
    cover, cover_biconnected, cover_biconnected_nobigons, cover_triangulated, partition,
    BipartiteCover, PartitionMode, VertexPartition,
};
pub use error::{Error, Result};
pub use matching::{
    avoiding_matching, matching_oracle, perfect_matching_cubic, Matching, MatchingEngine,
};
pub use planegraph::{darts_of, edge_of, twin, DartId, EdgeId, FaceId, PlaneGraph, VertexId};
