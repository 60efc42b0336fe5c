//! Error type shared by every module of the toolkit.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the numerical layer.
///
/// Rank and clustering decisions fail loudly instead of guessing: a silent
/// misranking would corrupt every decomposition built on top of it.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// No clear gap between kept and dropped singular values.
    #[error(
        "degenerate rank: smallest kept singular value {kept:.6e} vs largest dropped {dropped:.6e} \
         (ratio {ratio:.3e} below the required 1e3)"
    )]
    DegenerateRank { kept: f64, dropped: f64, ratio: f64 },

    /// Eigenvalue clusters too close to split a representation.
    #[error(
        "degenerate eigenvalue clustering: gap {gap:.6e} is ambiguous against spread {spread:.6e}"
    )]
    DegenerateClustering { gap: f64, spread: f64 },

    /// A defect landed in the band where it is neither zero nor clearly nonzero.
    #[error(
        "inconclusive defect for {what}: {value:.6e} lies between the zero threshold {zero_below:.3e} \
         and the nonzero threshold {nonzero_above:.3e}"
    )]
    InconclusiveDefect {
        what: String,
        value: f64,
        zero_below: f64,
        nonzero_above: f64,
    },

    /// Input violates a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Operands have incompatible dimensions.
    #[error("dimension mismatch in {context}: expected {expected}, got {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    /// The candidate bracket `[x, y] = T_x y` does not satisfy the Jacobi identity.
    #[error("not a Lie bracket: Jacobi defect {defect:.6e} exceeds tolerance {tol:.3e}")]
    NotABracket { defect: f64, tol: f64 },

    /// A quantity that is zero by theory came out nonzero; this flags a bug,
    /// never an input problem.
    #[error("internal inconsistency in {what}: residual {residual:.6e} exceeds {allowed:.3e}")]
    Inconsistency {
        what: String,
        residual: f64,
        allowed: f64,
    },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn inconsistency(what: impl Into<String>, residual: f64, allowed: f64) -> Self {
        Error::Inconsistency {
            what: what.into(),
            residual,
            allowed,
        }
    }

    /// True for the error variants caused by tolerance ambiguity rather than
    /// by wrong inputs or broken invariants.
    pub fn is_inconclusive(&self) -> bool {
        matches!(
            self,
            Error::DegenerateRank { .. }
                | Error::DegenerateClustering { .. }
                | Error::InconclusiveDefect { .. }
        )
    }
}
