use thiserror::Error;

/// Crate-wide error type for fallible public operations.
///
/// Internal invariant breaches (a generator polynomial failing its own
/// construction identities, an inconsistent frozen table) panic instead:
/// they falsify the build rather than signal a recoverable condition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse value: {0}")]
    Parse(String),

    #[error("mixed base fields {0} and {1}")]
    MixedBase(&'static str, &'static str),

    #[error("division by zero")]
    DivisionByZero,

    #[error("value has a nonzero imaginary part: {0}")]
    NotRational(String),

    #[error("partition {0:?} does not fit in {1} variables")]
    PartitionTooLong(Vec<u32>, usize),

    #[error("matrix dimension {0} does not match variable count {1}")]
    DimensionMismatch(usize, usize),

    #[error("expansion budget exceeded at grading {0} ({1} monomials)")]
    BudgetExceeded(u32, usize),

    #[error("grading {0} exceeds the cap {1} for this group")]
    CapExceeded(u32, u32),

    #[error("presentation matrix budget exceeded: r^t needs {0} bits; use the residual-valuation path")]
    PresentationBudget(u64),

    #[error("residual valuation needs more precision than p^{0}; retry with a larger modulus")]
    PrecisionExhausted(u32),

    #[error("linear system over Z/p^k is inconsistent")]
    Inconsistent,

    #[error("p-part of the cokernel is not cyclic: exponents {0:?}")]
    NonCyclic(Vec<u32>),

    #[error("no catalog entry for case {0} at prime {1}")]
    NotFound(u32, u64),

    #[error("unsupported B-space {0:?} at p = {1}; see the catalog for cited cases")]
    UnsupportedBSpace(Vec<u32>, u64),

    #[error("{0}")]
    Invalid(String),
}
