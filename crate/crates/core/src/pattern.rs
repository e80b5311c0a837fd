use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A nonempty string of alphabet symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(Vec<char>);

impl Pattern {
    pub fn new(chars: impl Into<Vec<char>>) -> Result<Self> {
        let chars = chars.into();
        if chars.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern(chars))
    }

    pub fn chars(&self) -> &[char] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when `self` occurs contiguously inside `other`.
    pub fn occurs_in(&self, other: &Pattern) -> bool {
        other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    /// True when `self` is a proper (shorter) substring of `other`.
    pub fn is_strict_substring_of(&self, other: &Pattern) -> bool {
        self.len() < other.len() && self.occurs_in(other)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::new(s.chars().collect::<Vec<_>>())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

/// How two patterns relate by containment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Equal,
    AStrictSubstringOfB,
    BStrictSubstringOfA,
    Incomparable,
}

pub fn classify(a: &Pattern, b: &Pattern) -> Relation {
    if a == b {
        Relation::Equal
    } else if a.is_strict_substring_of(b) {
        Relation::AStrictSubstringOfB
    } else if b.is_strict_substring_of(a) {
        Relation::BStrictSubstringOfA
    } else {
        Relation::Incomparable
    }
}
