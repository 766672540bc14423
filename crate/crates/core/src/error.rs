use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type {letter}{rank}: {reason}")]
    InvalidType {
        letter: String,
        rank: usize,
        reason: &'static str,
    },

    #[error("weight {weight:?} has length {got}, expected rank {expected}")]
    RankMismatch {
        weight: Vec<i64>,
        got: usize,
        expected: usize,
    },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("{beta:?} is neither a root nor the negative of simple root {index}")]
    NotARoot { beta: Vec<i64>, index: usize },

    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("points `{0}` and `{1}` lie in the same orbit")]
    DuplicateOrbit(String, String),

    #[error("invalid orbit space: {0}")]
    InvalidOrbitSpace(String),

    #[error("weight bound {bound} is smaller than the largest input coordinate {max}")]
    BoundTooSmall { bound: i64, max: i64 },

    #[error("zero coordinate: not a point of the torus")]
    ZeroCoordinate,

    #[error("margaux inputs {0} and {1} canonicalize to the same orbit")]
    SameMargauxOrbit(usize, usize),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
