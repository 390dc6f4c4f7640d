use core::fmt;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Requested site count exceeds the configured limit.
    TooManySites { sites: u32, cap: u32 },
    /// Site count below the minimum an operation accepts.
    TooFewSites { sites: u32, min: u32 },
    /// A vector does not have the expected length.
    LengthMismatch { expected: usize, found: usize },
    /// An entry of a sign vector is neither `+1` nor `-1`.
    NotASign { index: usize, value: i64 },
    /// An index is outside `0..len`.
    IndexOutOfRange { index: u128, len: u128 },
    /// A coefficient vector with vanishing coefficient sum.
    ZeroSum,
    /// Two inequalities combined by the lifting operator have different bounds.
    BoundMismatch { left: u64, right: u64 },
    /// Exhaustive enumeration above the materialization cap without streaming.
    StreamingRequired { sites: u32, cap: u32 },
    /// A coefficient does not fit the 64-bit storage.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::TooManySites { sites, cap } => {
                write!(f, "site count {sites} exceeds the limit of {cap}")
            }
            Error::TooFewSites { sites, min } => {
                write!(f, "site count {sites} is below the minimum of {min}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected a vector of length {expected}, found {found}")
            }
            Error::NotASign { index, value } => {
                write!(f, "entry {index} is {value}, expected +1 or -1")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 0..{len}")
            }
            Error::ZeroSum => f.write_str("coefficient sum is zero; not a Bell inequality"),
            Error::BoundMismatch { left, right } => write!(
                f,
                "bounds differ ({left} vs {right}); scale one operand so the coefficient sums agree in absolute value"
            ),
            Error::StreamingRequired { sites, cap } => write!(
                f,
                "enumerating {sites} sites exceeds the materialization cap of {cap}; use streaming"
            ),
            Error::Overflow => f.write_str("coefficient overflow"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
