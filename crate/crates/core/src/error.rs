use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Brute-force enumeration refused because the framework is too large.
    #[error("enumeration guard exceeded: {size} elements, limit is {limit}")]
    GuardExceeded { limit: usize, size: usize },

    #[error("`{0}` is not an assumption")]
    NotAnAssumption(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("duplicate atom name `{0}`")]
    DuplicateName(String),

    #[error("assumption `{0}` has no contrary")]
    MissingContrary(String),

    #[error("framework is not flat: {0}")]
    NonFlat(String),

    #[error("semantics {0} is not supported here")]
    UnsupportedSemantics(&'static str),

    #[error("attack with empty tail on `{0}`")]
    EmptyTail(String),

    #[error("invalid splitting: attack {0} enters the first part")]
    InvalidSplit(String),

    #[error("set is not atom-closed: `{0}` is missing")]
    NotAtomClosed(String),

    #[error("invalid splitting: rule `{0}` has its head inside and part of its body outside")]
    HeadInBodyOut(String),

    #[error("invalid quasi-splitting: rule `{0}` has a non-assumption body atom outside")]
    NonAssumptionBodyOut(String),

    #[error("framework only admits trivial splittings")]
    DegenerateSplit,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
