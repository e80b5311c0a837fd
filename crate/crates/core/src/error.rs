use thiserror::Error;

use crate::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet has no symbols")]
    EmptyAlphabet,

    #[error("symbol {0:?} is declared more than once")]
    DuplicateSymbol(char),

    #[error("symbol {0:?} must be exactly one character long")]
    MultiCharSymbol(String),

    #[error("probability of {symbol:?} is negative ({prob})")]
    NegativeProbability { symbol: char, prob: Rational },

    #[error("probability of {symbol:?} exceeds 1 ({prob})")]
    ProbabilityAboveOne { symbol: char, prob: Rational },

    #[error(
        "Alphabet is not a valid probability distribution (probabilities sum to {sum}, not 1)"
    )]
    NotADistribution { sum: Rational },

    #[error("cannot parse {0:?} as a probability; expected a fraction like 1/2 or a finite decimal like 0.75")]
    InvalidProbability(String),

    #[error("patterns must be nonempty")]
    EmptyPattern,

    #[error("character {0:?} does not appear in the alphabet")]
    UnknownSymbol(char),

    #[error("character {0:?} has probability zero; the race is ill-posed")]
    ZeroProbabilityCharacter(char),

    #[error("A==B; patterns cannot precede themselves")]
    EqualPatterns,

    #[error("one string cannot be a strict substring of another ({inner} occurs inside {outer})")]
    SubstringPair { inner: String, outer: String },

    #[error("Conway leading numbers need a two-symbol pattern pair, found {0} distinct symbols")]
    NonBinaryPattern(usize),

    #[error("pattern length must be at least {min}, got {got}")]
    PatternTooShort { min: usize, got: usize },

    #[error("pattern length {got} exceeds the enumeration cap of {cap}")]
    PatternTooLong { got: usize, cap: usize },

    #[error("no candidate response pattern exists for the given opponent")]
    EmptySearchSpace,

    #[error("no valid overlap candidate exists; the alphabet needs at least two symbols")]
    NoValidCandidate,

    #[error("invalid parameter grid: {0}")]
    InvalidGrid(String),

    #[error("sweeps need a two-symbol alphabet template, got {0} symbols")]
    NonBinaryTemplate(usize),

    #[error("number of trials must be at least 1")]
    NoTrials,

    #[error("trial {trial} exceeded {cap} flips without either pattern occurring")]
    TrialOverrun { trial: u64, cap: u64 },
}

impl Error {
    /// Stable machine-readable identifier for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyAlphabet => "empty_alphabet",
            Error::DuplicateSymbol(_) => "duplicate_symbol",
            Error::MultiCharSymbol(_) => "multi_char_symbol",
            Error::NegativeProbability { .. } => "negative_probability",
            Error::ProbabilityAboveOne { .. } => "probability_above_one",
            Error::NotADistribution { .. } => "not_a_distribution",
            Error::InvalidProbability(_) => "invalid_probability",
            Error::EmptyPattern => "empty_pattern",
            Error::UnknownSymbol(_) => "unknown_symbol",
            Error::ZeroProbabilityCharacter(_) => "zero_probability_character",
            Error::EqualPatterns => "equal_patterns",
            Error::SubstringPair { .. } => "substring_pair",
            Error::NonBinaryPattern(_) => "non_binary_pattern",
            Error::PatternTooShort { .. } => "pattern_too_short",
            Error::PatternTooLong { .. } => "pattern_too_long",
            Error::EmptySearchSpace => "empty_search_space",
            Error::NoValidCandidate => "no_valid_candidate",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::NonBinaryTemplate(_) => "non_binary_template",
            Error::NoTrials => "no_trials",
            Error::TrialOverrun { .. } => "trial_overrun",
        }
    }
}
