//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Structural problem in a dendrite description (cycle, disconnection,
    /// bad edge data). The message names the offending edge or vertex.
    #[error("invalid dendrite: {0}")]
    InvalidDendrite(String),

    /// A point spec that does not lie on the dendrite at hand.
    #[error("point not on dendrite: {0}")]
    PointNotOnDendrite(String),

    /// Precondition violation on an operation argument.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters that are self-consistent but unusable (e.g. a grid too
    /// coarse for the requested resolution).
    #[error("configuration error: {0}")]
    Config(String),

    /// The gap-support hypothesis failed; names the offending index pair.
    #[error("gap condition violated: nonzero entries at n={n} and m={m} are closer than k={k}")]
    GapViolation { n: u64, m: u64, k: u64 },

    /// A run that completed but could not produce the requested object
    /// (orbit never entered a slot interior, ambiguous recognizability, ...).
    #[error("diagnostic: {0}")]
    Diagnostic(String),

    #[error("i/o format error: {0}")]
    Format(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
