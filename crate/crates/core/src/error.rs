use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context for the
/// CLI to print a diagnostic naming the violated condition.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not homogeneous (has both even and odd blocks)")]
    NotHomogeneous,

    #[error("ad(h)-invariance fails: {0}")]
    NotInvariant(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("even reflection at isotropic root {0}")]
    EvenReflectionAtIsotropicRoot(String),

    #[error("root {0} is not simple in the given positive system")]
    NotSimple(String),

    #[error("isotropic root {0} has no λ_α (⟨α,α⟩ = 0)")]
    IsotropicRoot(String),

    #[error("divisible root {0} passed as a c-function factor")]
    DivisibleRoot(String),

    #[error("isotropic root {0} has multiplicity {1}, expected a negative even integer")]
    BadIsotropicMultiplicity(String, i64),

    #[error("argument {0} is within 1e-12 of a pole of Γ")]
    GammaPole(String),

    #[error("not diagonalizable over Q[i]: {0}")]
    NotDiagonalizable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
