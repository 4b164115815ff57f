//! Lowercase hex for field elements and truth tables.
//!
//! A truth table on GF(2^n) is `2^n / 4` digits; digit `k` holds `f(4k)` in
//! its least significant bit through `f(4k + 3)` in its most significant.

use std::fmt;

use walshcode_core::BooleanFunction;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HexError {
    Empty,
    /// `position` is 1-based.
    BadDigit { position: usize, found: char },
    TooWide { bits: u32 },
    Length { expected: usize, found: usize },
}

impl fmt::Display for HexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HexError::Empty => f.write_str("empty hex string"),
            HexError::BadDigit { position, found } => {
                write!(f, "invalid hex digit {found:?} at position {position}")
            }
            HexError::TooWide { bits } => write!(f, "value does not fit in {bits} bits"),
            HexError::Length { expected, found } => {
                write!(f, "expected {expected} hex digits, found {found}")
            }
        }
    }
}

impl std::error::Error for HexError {}

fn digit(position: usize, c: char) -> Result<u32, HexError> {
    match c {
        '0'..='9' | 'a'..='f' | 'A'..='F' => Ok(c.to_digit(16).unwrap()),
        _ => Err(HexError::BadDigit { position, found: c }),
    }
}

/// Parses an unsigned value of at most `bits` bits. Leading zeros are allowed.
pub fn parse_value(s: &str, bits: u32) -> Result<u64, HexError> {
    if s.is_empty() {
        return Err(HexError::Empty);
    }
    let mut v: u64 = 0;
    for (i, c) in s.chars().enumerate() {
        let d = digit(i + 1, c)? as u64;
        if v >> 60 != 0 {
            return Err(HexError::TooWide { bits });
        }
        v = v << 4 | d;
    }
    if bits < 64 && v >> bits != 0 {
        return Err(HexError::TooWide { bits });
    }
    Ok(v)
}

/// Parses an element of GF(2^n) in polynomial-basis bits.
pub fn parse_element(s: &str, n: u32) -> Result<u32, HexError> {
    parse_value(s, n).map(|v| v as u32)
}

pub fn element(x: u32) -> String {
    format!("{x:x}")
}

pub fn table_digits(n: u32) -> usize {
    (1usize << n).div_ceil(4)
}

pub fn encode_table(f: &BooleanFunction) -> String {
    let bits: Vec<bool> = f.bits().collect();
    bits.chunks(4)
        .map(|c| {
            let d = c.iter().enumerate().fold(0u32, |acc, (j, &b)| acc | (b as u32) << j);
            char::from_digit(d, 16).unwrap()
        })
        .collect()
}

pub fn decode_table(s: &str, n: u32) -> Result<Vec<bool>, HexError> {
    let q = 1usize << n;
    let found = s.chars().count();
    if found != table_digits(n) {
        return Err(HexError::Length { expected: table_digits(n), found });
    }
    let mut bits = Vec::with_capacity(q);
    for (i, c) in s.chars().enumerate() {
        let d = digit(i + 1, c)?;
        bits.extend((0..4).map(|j| d >> j & 1 == 1));
    }
    bits.truncate(q);
    Ok(bits)
}
