use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelError {
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("q-factorial of {k} vanishes at ell = {ell}")]
    FactorialVanishes { k: usize, ell: u32 },
    #[error("operator is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("weights belong to different root data")]
    MismatchedDatum,
    #[error("weight has the wrong number of coordinates: expected {expected}, got {got}")]
    BadCoords { expected: usize, got: usize },
    #[error("alcove test requires nonnegative integral c-part")]
    NonIntegralC,
    #[error("weight is not typical")]
    NotTypical,
    #[error("weight is not in the alcove")]
    NotInAlcove,
    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),
    #[error("grading class is critical")]
    CriticalGrading,
    #[error("weight is not in the lattice required for a one-dimensional module")]
    NotInLambdaZ,
    #[error("ill-formed diagram: {0}")]
    IllFormedDiagram(String),
    #[error("cut strand does not give a scalar endomorphism")]
    NotSimple,
    #[error("delta product vanishes")]
    DegenerateDelta,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type RelResult<T> = Result<T, RelError>;
