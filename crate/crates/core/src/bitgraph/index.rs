use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Decimal vertex index: a nonnegative integer part plus a string of
/// fractional digits.
///
/// Indices order by integer part, then by fractional digits compared
/// position by position, where a missing digit sorts before any digit.
/// Splitting appends one digit, so children stay between the parent's
/// neighbours and keep their order relative to every other live index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Index {
    int_part: u32,
    frac: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexParseError {
    #[error("empty index")]
    Empty,
    #[error("invalid integer part in index {0:?}")]
    IntPart(String),
    #[error("invalid fractional digit in index {0:?}")]
    Fraction(String),
}

impl Index {
    pub fn integer(int_part: u32) -> Self {
        Index {
            int_part,
            frac: Vec::new(),
        }
    }

    /// Panics if a digit exceeds 9.
    pub fn new(int_part: u32, frac: impl Into<Vec<u8>>) -> Self {
        let frac = frac.into();
        assert!(frac.iter().all(|&d| d <= 9), "fractional digits must be 0..=9");
        Index { int_part, frac }
    }

    pub fn int_part(&self) -> u32 {
        self.int_part
    }

    pub fn frac(&self) -> &[u8] {
        &self.frac
    }

    /// Zero vertices are those with integer part 0.
    pub fn is_zero(&self) -> bool {
        self.int_part == 0
    }

    /// The split child with `digit` appended.
    pub fn child(&self, digit: u8) -> Index {
        debug_assert!(digit <= 9);
        let mut frac = Vec::with_capacity(self.frac.len() + 1);
        frac.extend_from_slice(&self.frac);
        frac.push(digit);
        Index {
            int_part: self.int_part,
            frac,
        }
    }

    /// The index `int_part.k`, with `k` zero-padded to `width` digits.
    pub(crate) fn padded(int_part: u32, k: usize, width: usize) -> Index {
        let digits = format!("{k:0width$}");
        Index {
            int_part,
            frac: digits.bytes().map(|b| b - b'0').collect(),
        }
    }
}

/// Digits needed to write every value in `0..count` with equal width.
pub(crate) fn digit_width(count: usize) -> usize {
    let mut max = count.saturating_sub(1);
    let mut width = 1;
    while max >= 10 {
        max /= 10;
        width += 1;
    }
    width
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.int_part)?;
        if !self.frac.is_empty() {
            f.write_str(".")?;
            for d in &self.frac {
                write!(f, "{d}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Index {
    type Err = IndexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(IndexParseError::Empty);
        }
        let (int, frac) = match s.split_once('.') {
            Some((int, frac)) => (int, frac),
            None => (s, ""),
        };
        if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) {
            return Err(IndexParseError::IntPart(s.to_string()));
        }
        let int_part = int.parse().map_err(|_| IndexParseError::IntPart(s.to_string()))?;
        if !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(IndexParseError::Fraction(s.to_string()));
        }
        Ok(Index {
            int_part,
            frac: frac.bytes().map(|b| b - b'0').collect(),
        })
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
