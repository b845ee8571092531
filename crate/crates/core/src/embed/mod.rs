//! Inductive construction of a minor model of a sub-cubic 2-connected plane
//! graph inside a lazily grown truncation of the universal graph.

mod model;
mod router;
mod state;

use thiserror::Error;

use crate::ears::{EarError, EdgeOrder};
use crate::reduce::ReduceError;
use crate::universal::{FaceId, UniversalError, DEFAULT_VERTEX_CAP};

pub use model::{embed, embed_any, Embedding, HostLevelMap, MinorModel};
pub use state::{ActiveFace, Embedder, StepRecord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("input is not sub-cubic")]
    NotSubcubic,
    #[error("input is not 2-connected")]
    NotTwoConnected,
    #[error(transparent)]
    Ears(#[from] EarError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Universal(#[from] UniversalError),
    #[error("routing towards {face} still infeasible at level cap {cap}")]
    DepthCapExceeded { face: FaceId, cap: usize },
    #[error("cyclic order violated: {0}")]
    InternalOrderViolation(String),
    #[error("ear face {0:?} is not an active face")]
    UnknownFace(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbedOptions {
    /// Extra levels below the target face level that routing may expand.
    pub max_extra_depth: usize,
    /// Expansion rounds allowed per routing call.
    pub max_rounds: usize,
    pub edge_order: EdgeOrder,
    pub vertex_cap: usize,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions {
            max_extra_depth: 12,
            max_rounds: 1000,
            edge_order: EdgeOrder::Lexicographic,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}
