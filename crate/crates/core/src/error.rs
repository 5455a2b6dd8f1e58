use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Cartan type {kind}{rank}: {reason}")]
    InvalidCartanType {
        kind: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("enumeration cap exceeded: {what} would exceed {cap}")]
    SizeCap { what: &'static str, cap: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("vertex {0} is not a lattice point")]
    NonLatticeVertex(String),
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("exact coordinates required")]
    ExactnessRequired,
    #[error("singular matrix")]
    Singular,
    #[error("rank decision ambiguous (singular value {0:e} inside threshold band)")]
    AmbiguousRank(f64),
    #[error("direction lies on an arrangement hyperplane: {0}")]
    OnHyperplane(String),
    #[error("section vanishes at the point")]
    SectionVanishes,
    #[error("no action chamber meets the interior of the Weyl chamber")]
    NoPositiveChamber,
    #[error("invalid reflection index {index} for rank {rank}")]
    InvalidReflection { index: usize, rank: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
