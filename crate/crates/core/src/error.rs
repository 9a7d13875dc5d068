//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by the exact-arithmetic, classification and catalog layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Root extraction was requested for the zero polynomial.
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    /// A matrix that had to be inverted is singular.
    #[error("matrix is singular")]
    SingularMatrix,
    /// The characteristic polynomial does not split over the rationals.
    #[error("spectrum is not rational: {0}; compare characteristic polynomials instead")]
    IrrationalSpectrum(String),
    /// The matrix is not an element of sp(4).
    #[error("matrix is not in sp(4)")]
    NotInSp4,
    /// The element was expected to be semisimple.
    #[error("element is not semisimple")]
    NotSemisimple,
    /// The element was expected to lie in the Borel subalgebra.
    #[error("element is not in the Borel subalgebra b")]
    NotInBorel,
    /// Two inputs that must be linearly independent are not.
    #[error("inputs are linearly dependent")]
    DependentInputs,
    /// The identifier only handles the listed dimensions.
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),
    /// The algebra is outside the families this crate recognizes.
    #[error("unrecognized family: {0}")]
    UnrecognizedFamily(String),
    /// The class has no counterpart in the catalog mapping.
    #[error("class {0} has no catalog counterpart")]
    OutOfCatalog(String),
    /// A parameter that must be nonzero is zero.
    #[error("parameter must be nonzero")]
    ZeroParameter,
    /// Dimensions of the operands disagree.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Expected dimension.
        expected: usize,
        /// Dimension actually found.
        found: usize,
    },
    /// The algebra is not solvable.
    #[error("algebra is not solvable")]
    NotSolvable,
    /// The subspace is not closed under the bracket.
    #[error("subspace is not closed under the bracket")]
    NotClosed,
    /// Malformed textual input (rationals, expressions, recipes, JSON).
    #[error("parse error: {0}")]
    Parse(String),
    /// A conjugator recipe is invalid or does not lie in Sp(4).
    #[error("invalid conjugator: {0}")]
    Conjugator(String),
}

/// Convenience alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
