use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps these onto exit codes: mathematical precondition failures
/// exit with 2, exhausted search budgets with 3 and input problems with 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the columns of A do not lie on a common affine hyperplane off the origin")]
    NotHomogeneous,

    #[error("A has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lattice is not contained in the given super-lattice")]
    NotSublattice,

    #[error("weight vector is not generic: {0}")]
    NonGenericWeight(String),

    #[error("search budget exceeded while {what} (limit {limit})")]
    BudgetExceeded { what: String, limit: u64 },

    #[error("span mismatch: {0}")]
    SpanMismatch(String),

    #[error("conv(A) is not a simplex ({rays} extreme rays in dimension {dim})")]
    NotSimplex { rays: usize, dim: usize },

    #[error("no generic weight with a single maximal cell was found")]
    NoSingleCellWeight,

    #[error("zero denominator in series coefficient at offset {offset:?}")]
    ZeroDenominator { offset: Vec<String> },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn budget(what: impl Into<String>, limit: u64) -> Self {
        Error::BudgetExceeded {
            what: what.into(),
            limit,
        }
    }

    /// Short machine-readable tag used in JSON error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHomogeneous => "NotHomogeneous",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSublattice => "NotSublattice",
            Error::NonGenericWeight(_) => "NonGenericWeight",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::SpanMismatch(_) => "SpanMismatch",
            Error::NotSimplex { .. } => "NotSimplex",
            Error::NoSingleCellWeight => "NoSingleCellWeight",
            Error::ZeroDenominator { .. } => "ZeroDenominator",
            Error::Precondition(_) => "Precondition",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
