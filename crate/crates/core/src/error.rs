use thiserror::Error;

use crate::gain::GainReport;
use crate::paratile::MvReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is not full-dimensional: affine hull has dimension {affine_dim} in R^{ambient_dim}")]
    NotFullDimensional { affine_dim: isize, ambient_dim: usize },

    #[error("{0} is not a sublattice of the enclosing lattice")]
    NotSublattice(&'static str),

    #[error("lattice is rank-deficient (rank {rank} in R^{ambient_dim})")]
    RankDeficient { rank: usize, ambient_dim: usize },

    #[error("not a parallelohedron:\n{0}")]
    NotParallelohedron(Box<MvReport>),

    #[error("partition is not a split: {0}")]
    InvalidPartition(String),

    #[error("red edge {0} -- {1} crosses the partition")]
    RedEdgeCrossing(usize, usize),

    #[error("sublattices of the partition do not form a direct sum of the tiling lattice")]
    DirectSumFailure,

    #[error("gain assignment is not an increment function:\n{0}")]
    InvalidGain(Box<GainReport>),

    #[error("cell {0} is missing a value")]
    MissingCell(String),

    #[error("patch is disconnected")]
    DisconnectedPatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A check that holds for every parallelohedron failed: either the input
    /// slipped past verification or there is a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
