use core::fmt;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Extension degree outside `2..=24`.
    UnsupportedN(u32),
    /// The supplied modulus does not have the requested degree.
    DegreeMismatch { n: u32, poly: u64 },
    ReduciblePoly(u64),
    DivideByZero,
    /// `t` does not divide the extension degree.
    BadSubfieldDegree { t: u32, n: u32 },
    /// Some `x` in the set has an `F_{2^t}^*` multiple outside the set.
    NotCosetClosed { element: u32 },
    ElementOutOfRange { value: u64, n: u32 },
    BadParams(String),
    AlphaNotInSubfield { alpha: u32, m: u32 },
    CoeffFieldViolation(String),
    BadShape(String),
    NonIntegerMultiplicity,
    HypothesisViolation(String),
    EmptyDefiningSet,
    Condition26Failed { factor: u8 },
    FieldMismatch,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedN(n) => write!(f, "unsupported extension degree n = {n} (need 2..=24)"),
            Error::DegreeMismatch { n, poly } => {
                write!(f, "polynomial {poly:x} does not have degree {n}")
            }
            Error::ReduciblePoly(p) => write!(f, "polynomial {p:x} is reducible over GF(2)"),
            Error::DivideByZero => f.write_str("inverse of zero"),
            Error::BadSubfieldDegree { t, n } => write!(f, "t = {t} does not divide n = {n}"),
            Error::NotCosetClosed { element } => {
                write!(f, "set is not closed under the subfield action (element {element:x})")
            }
            Error::ElementOutOfRange { value, n } => {
                write!(f, "value {value:x} is not an element of GF(2^{n})")
            }
            Error::BadParams(msg) => write!(f, "bad parameters: {msg}"),
            Error::AlphaNotInSubfield { alpha, m } => {
                write!(f, "alpha {alpha:x} is not in the subfield GF(2^{m})")
            }
            Error::CoeffFieldViolation(msg) => write!(f, "coefficient field violation: {msg}"),
            Error::BadShape(msg) => write!(f, "bad quadratic shape: {msg}"),
            Error::NonIntegerMultiplicity => {
                f.write_str("three-value multiplicities are not non-negative integers")
            }
            Error::HypothesisViolation(msg) => write!(f, "hypothesis violated: {msg}"),
            Error::EmptyDefiningSet => f.write_str("f has no zeros in F_q^*; the defining set is empty"),
            Error::Condition26Failed { factor } => {
                write!(f, "factor f{factor} is not invariant under the subfield action")
            }
            Error::FieldMismatch => f.write_str("operands belong to different fields"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
