use core::fmt;

/// Which side of the market a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Budget,
    Quality,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Budget => f.write_str("budget"),
            Side::Quality => f.write_str("quality"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two sequences that must have the same length do not.
    LengthMismatch {
        expected: usize,
        found: usize,
    },
    EmptyInstance,
    NonPositiveValue {
        side: Side,
        index: usize,
        value: f64,
    },
    NonFiniteValue {
        side: Side,
        index: usize,
    },
    IndexOutOfRange {
        index: usize,
        len: usize,
    },
    NonSquareMatrix {
        rows: usize,
        cols: usize,
    },
    /// Rows of a matrix literal have different lengths.
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
    NonFiniteEntry {
        row: usize,
        col: usize,
    },
    NotAPermutation,
    /// The allocation admits no envy-free prices.
    NoEnvyFreePrices,
    InstanceTooLarge {
        n: usize,
        max: usize,
    },
    InvalidSpec(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::EmptyInstance => f.write_str("instance has no buyers and no items"),
            Error::NonPositiveValue { side, index, value } => {
                write!(f, "{side} {index} must be strictly positive, got {value}")
            }
            Error::NonFiniteValue { side, index } => write!(f, "{side} {index} is not finite"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range for length {len}")
            }
            Error::NonSquareMatrix { rows, cols } => {
                write!(f, "matrix must be square, got {rows}x{cols}")
            }
            Error::RaggedMatrix { row, expected, found } => {
                write!(f, "row {row} has {found} entries, expected {expected}")
            }
            Error::NonFiniteEntry { row, col } => write!(f, "matrix entry ({row}, {col}) is not finite"),
            Error::NotAPermutation => f.write_str("assignment is not a permutation"),
            Error::NoEnvyFreePrices => f.write_str("allocation admits no envy-free prices"),
            Error::InstanceTooLarge { n, max } => {
                write!(f, "instance too large: n = {n} exceeds the limit of {max}")
            }
            Error::InvalidSpec(reason) => write!(f, "invalid generator spec: {reason}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
