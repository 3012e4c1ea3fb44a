use thiserror::Error;

use crate::weight::Weight;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown root system `{0}`")]
    UnknownSystem(String),

    #[error("rank {rank} out of range for family {family} (supported {min}..={max})")]
    RankOutOfRange {
        family: char,
        rank: usize,
        min: usize,
        max: usize,
    },

    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(Weight),

    #[error("orbit of {weight} has more than {cap} elements (memory cap)")]
    MemoryCap { weight: Weight, cap: usize },

    #[error("resonance at nu = {nu}: state {label} couples to {lower} with equal eigenvalue")]
    Resonance {
        nu: String,
        label: Box<Weight>,
        lower: Box<Weight>,
    },

    #[error("operator entry {0} is not assembled")]
    MissingEntry(String),

    #[error("expected an integral value, found {0}")]
    NonIntegral(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
