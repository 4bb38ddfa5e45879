use thiserror::Error;

/// Errors raised by the library.
///
/// Variants that carry a cap name report which budget was hit so callers can
/// raise the right knob.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cover endpoint `{0}` is not a declared element")]
    UnknownEndpoint(String),
    #[error("cover relation has a cycle: {}", .0.join(" < "))]
    CycleDetected(Vec<String>),
    #[error("cover `{0}` < `{1}` is implied by a longer chain")]
    RedundantCover(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("search budget exceeded ({cap} = {limit})")]
    SearchBudgetExceeded { cap: &'static str, limit: u64 },
    #[error("group too large ({cap} = {limit})")]
    GroupTooLarge { cap: &'static str, limit: u64 },
    #[error("poset too large ({cap} = {limit})")]
    PosetTooLarge { cap: &'static str, limit: u64 },
    #[error("order complex too large ({cap} = {limit})")]
    ComplexTooLarge { cap: &'static str, limit: u64 },
    #[error("integer matrix budget exceeded: {0}")]
    MatrixBudgetExceeded(String),
    #[error("internal assertion failed: {0}")]
    InternalAssertionFailed(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("construction needs a nontrivial group")]
    TrivialGroup,
    #[error("poset is not canonically labeled: {0}")]
    NotCanonicallyLabeled(String),
    #[error("automorphism does not act by a single group element: {0}")]
    InconsistentAction(String),
    #[error("unsupported sphere dimension {0} (expected 1 or 2)")]
    UnsupportedDimension(u32),
    #[error("not a simplicial complex: {0}")]
    NotAComplex(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("malformed file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
