use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
///
/// Verification failures carry the offending element so a failing random
/// case can be read off directly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("relation matrix has wrong shape: expected {expected}x{expected}")]
    MatrixShape { expected: usize },
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("index {index} out of range for carrier of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("map has {got} entries, source has {expected} elements")]
    MapLength { expected: usize, got: usize },
    #[error("map is not monotone: `{0}` <= `{1}` but images `{2}` and `{3}` are not ordered")]
    NotMonotone(String, String, String, String),
    #[error("maps are not composable: target of the first differs from source of the second")]
    NotComposable,
    #[error("maps are not parallel")]
    NotParallel,
    #[error("maps do not share a target")]
    MismatchedTargets,
    #[error("cone is malformed: {0}")]
    MalformedCone(String),
    #[error("cone does not commute with the diagram")]
    ConeNotCommuting,
    #[error("no mediating map exists: {0}")]
    NoMediator(String),
    #[error("preorder is not a poset: `{0}` and `{1}` are distinct but equivalent")]
    NotAPoset(String, String),
    #[error("adjunction shape mismatch: maps are not anti-parallel")]
    ShapeMismatch,
    #[error("unit violated at `{element}`: it is not below its closure `{image}`")]
    UnitViolated { element: String, image: String },
    #[error("counit violated at `{element}`: its interior `{image}` is not below it")]
    CounitViolated { element: String, image: String },
    #[error("{side} of the adjunction is not a poset")]
    NonPosetal { side: &'static str },
    #[error("expected a {expected}")]
    WrongClass { expected: &'static str },
    #[error("square does not commute: {0}")]
    SquareNotCommuting(String),
    #[error("the two defining routes for the {0} disagree")]
    RoutesDisagree(&'static str),
    #[error("identity `{0}` failed")]
    IdentityFailed(String),
    #[error("carrier of size {size} exceeds the limit {limit}")]
    ThresholdExceeded { size: usize, limit: usize },
    #[error("line {line}: {message}")]
    Cxt { line: usize, message: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
