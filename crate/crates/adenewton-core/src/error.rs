use thiserror::Error;

/// Errors shared by every module in the crate.
///
/// Computations that merely *fail to make progress* (a residue equation
/// outside the implemented fragment, a depth bound hit) are reported as
/// data on the relevant result types, not as `Error`s.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value-group dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("field preset mismatch")]
    PresetMismatch,
    #[error("{0} is undefined for the zero element")]
    ZeroInput(&'static str),
    #[error("value is indistinguishable from zero at precision {bound}")]
    BelowPrecision { bound: String },
    #[error("cannot reach requested precision: {0}")]
    PrecisionExhausted(String),
    #[error("the h-type preset requires value-group dimension 1")]
    HTypeDimension,
    #[error("operation requires value group Q (dimension 1)")]
    RequiresDimOne,
    #[error("coarsening by phi with v(phi) = 0 is invalid")]
    InvalidCoarsening,
    #[error("residue is undefined: valuation is negative")]
    NegativeValuation,
    #[error("expected a homogeneous differential polynomial")]
    NotHomogeneous,
    #[error("equalizer requires distinct degrees")]
    EqualDegrees,
    #[error("expected a monomial (coefficient-1 power of t)")]
    NotMonomial,
    #[error("element does not satisfy the asymptotic constraint")]
    NotInConstraint,
    #[error("refinement constraint is not contained in the original one")]
    ConstraintNotContained,
    #[error("equation has dominant degree 0")]
    DominantDegreeZero,
    #[error("equation is not quasilinear")]
    NotQuasilinear,
    #[error("cut chain steps must have strictly increasing valuation")]
    ChainNotIncreasing,
    #[error("witness cannot be certified at the available precision: {0}")]
    Uncertifiable(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}
