use alloc::string::String;
use core::fmt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must agree in dimension do not.
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    /// The rows handed in as a basis are linearly dependent.
    RankDeficient { rank: usize, rows: usize },
    /// A point that must satisfy the fiber equation `G*x = chi` does not.
    NotOnFiber,
    /// The spanning assumption (bounded block and free block of subtorus
    /// functionals must span independently) fails; `detail` names the defect.
    AssumptionViolated { detail: String },
    /// A coordinate of a polyhedron that must be bounded is not.
    Unbounded { coordinate: usize },
    /// No rational scalar maps the dilation apex into the line through the
    /// projected character; callers fall back to direct counting.
    NoDilationAxis,
    /// The dilation family is degenerate (the apex coincides with the
    /// projected base point), so no rescaling exists.
    DegenerateFamily,
    /// Quasi-polynomial fitting failed its held-out validation samples even
    /// after doubling the period once.
    FitValidation { period: u64 },
    /// Two region closures compared for inclusion come from different
    /// arrangements or characters.
    SpecMismatch,
    /// A negative exponent was requested on a non-invertible generator.
    InvalidExponent { index: usize },
    /// Malformed textual input (rational literal or generator word).
    Parse(String),
    /// Invalid argument combination supplied by a caller.
    BadInput(&'static str),
    /// Violation of an internal invariant; indicates a bug, not bad input.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                context,
                expected,
                found,
            } => write!(
                f,
                "dimension mismatch in {context}: expected {expected}, found {found}"
            ),
            Error::RankDeficient { rank, rows } => write!(
                f,
                "subtorus basis is rank deficient: {rows} rows but rank {rank}"
            ),
            Error::NotOnFiber => write!(f, "point does not satisfy the fiber equation G*x = chi"),
            Error::AssumptionViolated { detail } => {
                write!(f, "spanning assumption violated: {detail}")
            }
            Error::Unbounded { coordinate } => write!(
                f,
                "coordinate {} is unbounded on the projected polyhedron",
                coordinate + 1
            ),
            Error::NoDilationAxis => write!(
                f,
                "no rational dilation scalar exists for this family; use direct counting"
            ),
            Error::DegenerateFamily => write!(
                f,
                "dilation family is degenerate: apex equals the projected base point"
            ),
            Error::FitValidation { period } => write!(
                f,
                "quasi-polynomial validation failed at period {period}"
            ),
            Error::SpecMismatch => write!(
                f,
                "region closures belong to different arrangements or characters"
            ),
            Error::InvalidExponent { index } => write!(
                f,
                "negative exponent on non-invertible generator x{}",
                index + 1
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::BadInput(msg) => write!(f, "invalid input: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}
