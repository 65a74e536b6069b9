//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable set mismatch: {0}")]
    VarSetMismatch(String),

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("quotient is infinite-dimensional: variable {0} has no pure power among leading monomials")]
    InfiniteDimensional(String),

    #[error("algebra axioms violated: {0}")]
    AxiomViolation(String),

    #[error("residue algebra does not split over the rationals: {0}")]
    NonSplitResidue(String),

    #[error("residue factorization failed: {0}")]
    ResidueFactorization(String),

    #[error("element is not nilpotent")]
    NotNilpotent,

    #[error("element is not unipotent (not of the form 1 + nilpotent)")]
    NotUnipotent,

    #[error("operation requires a local algebra: {0}")]
    NotLocal(String),

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("missing parameter value: {0}")]
    MissingParameter(String),

    #[error("torus parameter {0} must be nonzero")]
    ZeroTorusValue(String),

    #[error("base vector is not cyclic: evaluation map is singular")]
    NotCyclic,

    #[error("commutant is not commutative")]
    NonCommutativeCommutant,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no open orbit found at tested points")]
    NoOpenOrbit,

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("unknown builtin action: {0}")]
    UnknownBuiltin(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
