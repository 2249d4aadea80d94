use thiserror::Error;

/// Errors shared across the crate. Variants that signal a software defect
/// rather than bad input (`EquivalenceViolation`, `TheoremViolation`,
/// `ClassifierDefect`) are never swallowed by callers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimensions do not match: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operand point set is empty")]
    EmptyOperand,
    #[error("point lies outside the convex hull")]
    OutsideHull,
    #[error("simplex is degenerate (affinely dependent vertices)")]
    DegenerateSimplex,
    #[error("invalid placing order: point {0} is inside the hull of its prefix")]
    InvalidPlacingOrder(usize),
    #[error("cell order is not a shelling: {0}")]
    NotAShelling(String),
    #[error("stackedness certificates disagree: {0}")]
    EquivalenceViolation(String),
    #[error("difference lattice is rank deficient")]
    RankDeficient,
    #[error("rational gcd of an all-zero input is undefined")]
    ZeroInput,
    #[error("direction vector is not parallel to the line")]
    BadDirection,
    #[error("point set touches the interval endpoints")]
    NotInterior,
    #[error("inconsistent family parameters: {0}")]
    BadParams(String),
    #[error("classifier disagrees with the enumeration oracle: {0}")]
    ClassifierDefect(String),
    #[error("theorem-guaranteed property failed: {0}")]
    TheoremViolation(String),
}
