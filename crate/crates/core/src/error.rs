use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    EmptyQuiver,
    DuplicateVertex(String),
    DuplicateArrow(String),
    UnknownVertex(String),
    UnknownArrow(String),
    SameVertex(String),
    LoopCollapse(String),
    Disconnected,
    NotStronglyConnected,
    /// Letter `index` of a word does not compose with its predecessor.
    NotComposable { index: usize },
    OpenWord,
    InvalidRelation { relation: usize, index: usize },
    CompactGroup,
    QuiverMismatch,
    GroupMismatch,
    SizeMismatch { expected: usize, found: usize },
    InvalidGroup(String),
    NonFinite,
    Singular,
    NotHermitian,
    NotPositive,
    ParameterOutOfRange(&'static str),
    NotInGroup(String),
    MissingMarking(String),
    NotAnEnd(String),
    NothingToDegenerate(String),
    NotUnimodular(String),
    DeterminantMismatch { vertex: String },
    ActionMismatch { arrow: String },
    MissingWeight(String),
    WeightTooLarge(String),
    StepFailure { iteration: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyQuiver => write!(f, "a quiver needs at least one vertex"),
            Error::DuplicateVertex(v) => write!(f, "duplicate vertex id `{v}`"),
            Error::DuplicateArrow(a) => write!(f, "duplicate arrow id `{a}`"),
            Error::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            Error::UnknownArrow(a) => write!(f, "unknown arrow `{a}`"),
            Error::SameVertex(v) => write!(f, "cannot pinch vertex `{v}` with itself"),
            Error::LoopCollapse(a) => write!(f, "arrow `{a}` is a loop and cannot be collapsed"),
            Error::Disconnected => write!(f, "quiver is not connected"),
            Error::NotStronglyConnected => write!(f, "quiver is not strongly connected"),
            Error::NotComposable { index } => {
                write!(f, "word is not composable at letter {index}")
            }
            Error::OpenWord => write!(f, "word is not closed"),
            Error::InvalidRelation { relation, index } => {
                write!(f, "relation {relation} fails at letter {index}")
            }
            Error::CompactGroup => write!(f, "operation needs a complex reductive (non-compact) group"),
            Error::QuiverMismatch => write!(f, "operands live on different quivers"),
            Error::GroupMismatch => write!(f, "operands use different groups"),
            Error::SizeMismatch { expected, found } => {
                write!(f, "expected {expected}x{expected} matrix, found {found}x{found}")
            }
            Error::InvalidGroup(msg) => write!(f, "invalid group: {msg}"),
            Error::NonFinite => write!(f, "matrix has non-finite entries"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::NotHermitian => write!(f, "matrix is not Hermitian"),
            Error::NotPositive => write!(f, "matrix is not positive definite"),
            Error::ParameterOutOfRange(p) => write!(f, "parameter `{p}` out of range"),
            Error::NotInGroup(a) => write!(f, "marking `{a}` is not in the group"),
            Error::MissingMarking(a) => write!(f, "no marking for `{a}`"),
            Error::NotAnEnd(v) => write!(f, "vertex `{v}` is neither a source nor a sink"),
            Error::NothingToDegenerate(v) => {
                write!(f, "every arrow at `{v}` is already zero")
            }
            Error::NotUnimodular(a) => write!(f, "marking `{a}` does not have determinant one"),
            Error::DeterminantMismatch { vertex } => {
                write!(f, "gauge determinant at `{vertex}` differs from the others")
            }
            Error::ActionMismatch { arrow } => {
                write!(f, "gauge does not carry x to x' at arrow `{arrow}`")
            }
            Error::MissingWeight(a) => write!(f, "no weight for arrow `{a}`"),
            Error::WeightTooLarge(a) => write!(f, "weight of arrow `{a}` exceeds 10^6"),
            Error::StepFailure { iteration } => {
                write!(f, "non-finite values at flow iteration {iteration}")
            }
        }
    }
}

impl core::error::Error for Error {}
