use alloc::string::String;

/// Errors raised by the computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    /// No strictly positive grading exists, so factorizations need not be
    /// bounded and enumeration cannot terminate.
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("invalid length set: {0}")]
    InvalidLengthSet(String),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The element is not in the monoid.
    #[error("element is not a member of the monoid")]
    NotMember,
    /// A combinatorial search would exceed its budget.
    #[error("{what}: about {estimate} candidates exceed the budget of {budget}")]
    Budget {
        what: &'static str,
        estimate: u128,
        budget: u64,
    },
    /// The source cannot certify exact unions at this index.
    #[error("union U_{k} cannot be certified: {reason}")]
    Uncertified { k: u64, reason: String },
    /// `rho_k` is infinite.
    #[error("rho_{k} is unbounded")]
    Unbounded { k: u64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
