use thiserror::Error;

/// Errors raised by sequence operations, constructions and verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands whose lengths, moduli or shapes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An index, shift or truncation outside its admissible range.
    #[error("{what} = {value} is out of range [{min}, {max}]")]
    Range {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    /// A malformed argument (odd modulus, bad permutation, non-Hadamard seed, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A requested length outside the family a construction can reach.
    #[error("unsupported length {length}: {reason}")]
    UnsupportedLength { length: usize, reason: String },

    /// A construction produced an object that failed its own defining check.
    #[error("construction invariant violated: {0}")]
    ConstructionInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn range_check(what: &'static str, value: i64, min: i64, max: i64) -> Result<()> {
    if value < min || value > max {
        Err(Error::Range {
            what,
            value,
            min,
            max,
        })
    } else {
        Ok(())
    }
}
