//! Error taxonomy shared by every module of the crate.
//!
//! Variants are deliberately fine-grained so callers (and the CLI exit-code
//! mapping) can distinguish structural misuse (dimension mismatches, wrong
//! operator class) from numerical trouble (coarse sampling, degenerate input).

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Operand dimensions do not match.
    #[error("dimension mismatch: {0}")]
    Dim(String),

    /// A construction required a nonzero vector.
    #[error("zero vector: {0}")]
    ZeroVector(String),

    /// The operation is undefined in this dimension.
    #[error("unsupported dimension: {0}")]
    UnsupportedDim(String),

    /// The operator is not normal within tolerance.
    #[error("operator is not normal: {0}")]
    NotNormal(String),

    /// The operator does not square to plus or minus the identity.
    #[error("operator is not an involution: {0}")]
    NotInvolution(String),

    /// The operator is not unitary within tolerance.
    #[error("operator is not unitary: {0}")]
    NotUnitary(String),

    /// The operator is not a conjugation within tolerance.
    #[error("operator is not a conjugation: {0}")]
    NotConjugation(String),

    /// Two operators that must commute do not.
    #[error("operators do not commute: {0}")]
    Commutation(String),

    /// A curve that must be closed is not.
    #[error("curve is not closed: {0}")]
    NotClosed(String),

    /// The discrete integral is too far from an integer to trust.
    #[error("sampling too coarse: {0}")]
    SamplingTooCoarse(String),

    /// The spanned subspace is not Lagrangian (real inner products fail).
    #[error("subspace is not Lagrangian: {0}")]
    NotLagrangian(String),

    /// Input family is numerically dependent or ill-conditioned.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The beta matrix violates its invariants.
    #[error("invalid beta matrix: {0}")]
    Beta(String),

    /// A basis failed an orthonormality or independence requirement.
    #[error("invalid basis: {0}")]
    Basis(String),

    /// A matrix that must be positive (semi-)definite is not.
    #[error("operator is not positive: {0}")]
    NotPositive(String),

    /// The bipartite vector is not cyclic and separating.
    #[error("vector is not separating: {0}")]
    NotSeparating(String),

    /// A number that must be unimodular is not.
    #[error("not unimodular: {0}")]
    NotUnimodular(String),

    /// Two structures that must share data (e.g. a modular conjugation) do not.
    #[error("incompatible inputs: {0}")]
    Incompatible(String),

    /// A supplied decomposition does not reproduce the stated operator.
    #[error("decomposition mismatch: {0}")]
    Decomposition(String),

    /// The geometric phase is undefined because the trace vanishes.
    #[error("undefined phase: {0}")]
    UndefinedPhase(String),

    /// A vector that must be normalized is not.
    #[error("vector is not normalized: {0}")]
    NotNormalized(String),
}

impl Error {
    /// Stable name for reports and exit-code mapping.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Dim(_) => "DimError",
            Error::ZeroVector(_) => "ZeroVectorError",
            Error::UnsupportedDim(_) => "UnsupportedDimError",
            Error::NotNormal(_) => "NotNormalError",
            Error::NotInvolution(_) => "NotInvolutionError",
            Error::NotUnitary(_) => "NotUnitaryError",
            Error::NotConjugation(_) => "NotConjugationError",
            Error::Commutation(_) => "CommutationError",
            Error::NotClosed(_) => "NotClosedError",
            Error::SamplingTooCoarse(_) => "SamplingTooCoarse",
            Error::NotLagrangian(_) => "NotLagrangianError",
            Error::DegenerateInput(_) => "DegenerateInputError",
            Error::Beta(_) => "BetaError",
            Error::Basis(_) => "BasisError",
            Error::NotPositive(_) => "NotPositiveError",
            Error::NotSeparating(_) => "NotSeparatingError",
            Error::NotUnimodular(_) => "NotUnimodularError",
            Error::Incompatible(_) => "IncompatibleError",
            Error::Decomposition(_) => "DecompositionError",
            Error::UndefinedPhase(_) => "UndefinedPhaseError",
            Error::NotNormalized(_) => "NotNormalizedError",
        }
    }

    /// True for failures caused by a numeric tolerance check rather than by
    /// structurally invalid input. The CLI maps these to their own exit code.
    pub fn is_tolerance_violation(&self) -> bool {
        matches!(self, Error::SamplingTooCoarse(_))
    }
}
