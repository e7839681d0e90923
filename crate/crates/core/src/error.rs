use thiserror::Error;

/// Every failure the library can report. Witnesses are rendered with point
/// and element labels so they can be surfaced verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("order has a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("point index {0} is outside the poset")]
    UnknownPoint(usize),
    #[error("{0} points exceed the supported maximum of 64")]
    TooManyPoints(usize),

    #[error("`{0}` and `{1}` have no meet or no join")]
    NotALattice(String, String),
    #[error("distributivity fails at a={0}, b={1}, c={2}")]
    NotDistributive(String, String, String),
    #[error("order has no bottom or no top")]
    Unbounded,
    #[error("declared {which} `{declared}` is not the {which} of the order")]
    BoundMismatch { which: &'static str, declared: String },
    #[error("unknown lattice element `{0}`")]
    UnknownElement(String),
    #[error("operands live on different spaces")]
    SpaceMismatch,

    #[error("not inflationary at U = {0}")]
    NotInflationary(String),
    #[error("not idempotent at U = {0}")]
    NotIdempotent(String),
    #[error("does not preserve the meet of U = {0} and V = {1}")]
    NotMeetPreserving(String, String),
    #[error("malformed nucleus table: {0}")]
    InvalidTable(String),
    #[error("join of an empty family of nuclear sets has no space")]
    EmptyJoin,

    #[error("{0} is not an upset")]
    NotAnUpset(String),
    #[error("{0} is not closed")]
    NotClosed(String),
    #[error("{0} is not a clopen upset")]
    NotClopenUpset(String),
    #[error("{0} is not a localic point")]
    NotLocalic(String),
    #[error("{0} is not representable in the tame fragment")]
    NotRepresentable(String),
    #[error("tame sets belong to different families")]
    FamilyMismatch,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("malformed tame set: {0}")]
    MalformedTameSet(String),

    #[error("bound {bound} exceeds the cap {cap}")]
    BoundExceeded { bound: usize, cap: usize },
    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),

    #[error("invariant `{check}` violated: {detail}")]
    Invariant { check: &'static str, detail: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant { .. })
    }

    pub(crate) fn invariant(check: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant {
            check,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
