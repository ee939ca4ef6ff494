use crate::moment::Atom;

/// Errors produced by the exact engines, the expression DSL, and the
/// Monte Carlo front end.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Series inversion needs a unit constant term.
    #[error("series is not invertible: constant term is not a unit")]
    SingularSeries,

    /// `exp`, `log1p` and division by the series variable all require a
    /// zero constant term.
    #[error("{op} requires a series with zero constant term")]
    NonzeroConstantTerm { op: &'static str },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// The atom-disjointness guard: a non-constant atom may appear in at
    /// most one term of an expression.
    #[error("atom {atom} appears in more than one term")]
    SharedAtom { atom: Atom },

    #[error("atom {atom} appears twice within one term")]
    DuplicateAtom { atom: Atom },

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),

    #[error("unknown number family `{0}`")]
    UnknownFamily(String),

    #[error("sample count {got} is below the minimum {min}")]
    TooFewSamples { got: u64, min: u64 },

    #[error("invalid rational `{0}`")]
    InvalidRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
