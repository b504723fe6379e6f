use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("period must be at least 1")]
    ZeroPeriod,
    #[error("period mismatch: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("window has {got} entries, expected {expected}")]
    WindowLength { expected: usize, got: usize },
    #[error("entries {0} and {1} are congruent modulo the period")]
    RepeatedResidue(i64, i64),
    #[error("window displacement is not a multiple of the period")]
    FractionalShift,
    #[error("integer overflow")]
    Overflow,
    #[error("{perm} has shift {shift}, so it is not an element of W")]
    NotInW { perm: String, shift: i64 },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("kappa search over {0} nonzero orbit shifts is too large")]
    KappaTooLarge(usize),
    #[error("malformed Coxeter word: {0}")]
    MalformedOrder(String),
    #[error("{0} does not divide the Coxeter element")]
    NotADivisor(String),
    #[error("{0} is not an atom of the dual monoid")]
    NotAnAtom(String),
    #[error("blocks {0} and {1} overlap")]
    OverlappingBlocks(String, String),
    #[error("blocks {0} and {1} cross")]
    CrossingBlocks(String, String),
    #[error("block {0} crosses its own translates")]
    SelfCrossingBlock(String),
    #[error("periodic block {0} must meet both X and Xi")]
    OneSidedPeriodicBlock(String),
    #[error("at most one periodic block is allowed, found {0}")]
    TooManyPeriodicBlocks(usize),
    #[error("no least common multiple; minimal common multiples: {}", .witnesses.join(", "))]
    NoLcm { witnesses: Vec<String> },
    #[error("no greatest common divisor; maximal common divisors: {}", .candidates.join(", "))]
    NoUniqueMeet { candidates: Vec<String> },
    #[error("operation requires the standard Coxeter element s_1 s_2 ... s_n")]
    RequiresStandard,
    #[error("generator index {index} out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("{0} not reached within the search window; widen it")]
    NotReachable(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// Input could not be read, as opposed to a mathematical failure.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::WindowLength { .. }
                | Error::RepeatedResidue(..)
                | Error::FractionalShift
                | Error::ZeroPeriod
                | Error::MalformedOrder(_)
                | Error::GeneratorOutOfRange { .. }
        )
    }
}
