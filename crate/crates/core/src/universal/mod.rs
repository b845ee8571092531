//! Finite truncations of the universal graph, generated eagerly or one face
//! at a time, with hierarchical addresses, diameters, slices and pieces.

mod address;
mod region;
mod truncation;

use thiserror::Error;

pub use address::{AddressParseError, FaceId, GAddress, Root};
pub use region::{Cut, LocalGraph, Region, Side, SliceRef, SubgraphView};
pub use truncation::{census, Census, Expansion, ExpansionDelta, FaceRecord, Truncation, DEFAULT_VERTEX_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UniversalError {
    #[error("projected vertex count {projected} exceeds cap {cap}")]
    TooLarge { projected: u128, cap: usize },
    #[error("face {0} is already expanded")]
    AlreadyExpanded(FaceId),
    #[error("face {0} is not present in this truncation")]
    UnknownFace(FaceId),
    #[error("face {0} is not expanded")]
    NotExpanded(FaceId),
    #[error("diameter ends must be distinct")]
    EqualEnds,
    #[error("boundary index {0} out of range")]
    BadIndex(usize),
    #[error("slice depth must be at least 1")]
    ZeroDepth,
}
