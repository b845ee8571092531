//! Independent checks of minor models and probes of slice connectivity.
//!
//! Nothing here calls into the embedder. The universal host is rebuilt from
//! addresses alone.

mod brute;
mod host;
mod inflated;
mod probe;

use thiserror::Error;

use crate::universal::UniversalError;

pub use brute::{brute_force_minor, BruteCaps};
pub use host::{AddressHost, AdjacencyHost, HostGraph};
pub use inflated::{check_inflated_copy, check_model, Condition, Report, Verdict};
pub use probe::{slice_connectivity_probe, DepthReport, ProbeReport};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("address {0} is not a vertex of the host")]
    DanglingAddress(String),
    #[error("{what} has {size} vertices, cap is {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("malformed host: {0}")]
    MalformedHost(String),
    #[error(transparent)]
    Universal(#[from] UniversalError),
}
