//! Categorical distributions over single-character symbols.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::rational::{format_fraction, ratio, Rational};

/// An ordered categorical distribution. Declaration order is preserved and
/// drives enumeration order everywhere else in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    entries: Vec<(char, Rational)>,
}

/// Checks raw `(symbol, probability)` pairs and builds an [`Alphabet`].
///
/// Symbols must be single characters and pairwise distinct, every
/// probability must lie in `[0, 1]`, and the probabilities must sum to
/// exactly one.
pub fn validate_alphabet<S, I>(entries: I) -> Result<Alphabet>
where
    S: AsRef<str>,
    I: IntoIterator<Item = (S, Rational)>,
{
    let mut checked: Vec<(char, Rational)> = Vec::new();
    for (symbol, prob) in entries {
        let symbol = symbol.as_ref();
        let mut chars = symbol.chars();
        let c = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(Error::MultiCharSymbol(symbol.to_string())),
        };
        if checked.iter().any(|(s, _)| *s == c) {
            return Err(Error::DuplicateSymbol(c));
        }
        if prob.is_negative() {
            return Err(Error::NegativeProbability { symbol: c, prob });
        }
        if prob > Rational::one() {
            return Err(Error::ProbabilityAboveOne { symbol: c, prob });
        }
        checked.push((c, prob));
    }
    if checked.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let sum: Rational = checked.iter().map(|(_, p)| p).sum();
    if !sum.is_one() {
        return Err(Error::NotADistribution { sum });
    }
    Ok(Alphabet { entries: checked })
}

impl Alphabet {
    pub fn new(entries: impl IntoIterator<Item = (char, Rational)>) -> Result<Self> {
        validate_alphabet(entries.into_iter().map(|(c, p)| (c.to_string(), p)))
    }

    /// Equal probabilities over the given symbols, in order.
    pub fn uniform(symbols: &str) -> Result<Self> {
        let n = symbols.chars().count() as i64;
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Self::new(symbols.chars().map(|c| (c, ratio(1, n))))
    }

    /// `{H: 1/2, T: 1/2}`.
    pub fn fair_coin() -> Self {
        Self::binary('H', 'T', ratio(1, 2)).expect("fair coin is a distribution")
    }

    /// Two-symbol alphabet with `P(first) = p_first`.
    pub fn binary(first: char, second: char, p_first: Rational) -> Result<Self> {
        let p_second = Rational::one() - &p_first;
        Self::new([(first, p_first), (second, p_second)])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(char, Rational)] {
        &self.entries
    }

    pub fn symbols(&self) -> impl Iterator<Item = char> + '_ {
        self.entries.iter().map(|(c, _)| *c)
    }

    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.entries.iter().position(|(c, _)| *c == symbol)
    }

    pub fn prob(&self, symbol: char) -> Option<&Rational> {
        self.entries
            .iter()
            .find(|(c, _)| *c == symbol)
            .map(|(_, p)| p)
    }

    /// Every character of `pattern` must be an alphabet symbol.
    pub fn validate(&self, pattern: &Pattern) -> Result<()> {
        match pattern
            .chars()
            .iter()
            .find(|c| self.index_of(**c).is_none())
        {
            Some(c) => Err(Error::UnknownSymbol(*c)),
            None => Ok(()),
        }
    }

    /// Like [`Alphabet::validate`], additionally rejecting characters that
    /// can never be drawn.
    pub fn validate_drawable(&self, pattern: &Pattern) -> Result<()> {
        self.validate(pattern)?;
        for c in pattern.chars() {
            if self.prob(*c).is_some_and(Zero::is_zero) {
                return Err(Error::ZeroProbabilityCharacter(*c));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}:{}", format_fraction(p))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    #[test]
    fn accepts_example_alphabets() {
        assert!(validate_alphabet([("H", ratio(1, 2)), ("T", ratio(1, 2))]).is_ok());
        assert!(validate_alphabet([("H", ratio(3, 4)), ("T", ratio(1, 4))]).is_ok());
        let abc = validate_alphabet([("a", ratio(1, 2)), ("b", ratio(1, 4)), ("c", ratio(1, 4))])
            .unwrap();
        assert_eq!(abc.symbols().collect::<String>(), "abc");
    }

    #[test]
    fn rejects_bad_sums() {
        let err = validate_alphabet([("H", ratio(1, 2)), ("T", ratio(1, 3))]).unwrap_err();
        assert_eq!(err, Error::NotADistribution { sum: ratio(5, 6) });
    }

    #[test]
    fn rejects_malformed_entries() {
        assert_eq!(
            validate_alphabet(Vec::<(&str, Rational)>::new()).unwrap_err(),
            Error::EmptyAlphabet
        );
        assert_eq!(
            validate_alphabet([("H", ratio(1, 2)), ("H", ratio(1, 2))]).unwrap_err(),
            Error::DuplicateSymbol('H')
        );
        assert_eq!(
            validate_alphabet([("HT", integer(1))]).unwrap_err(),
            Error::MultiCharSymbol("HT".into())
        );
        assert_eq!(
            validate_alphabet([("", integer(1))]).unwrap_err(),
            Error::MultiCharSymbol("".into())
        );
        assert!(matches!(
            validate_alphabet([("H", ratio(3, 2)), ("T", ratio(-1, 2))]).unwrap_err(),
            Error::ProbabilityAboveOne { symbol: 'H', .. }
        ));
        assert!(matches!(
            validate_alphabet([("H", ratio(-1, 2)), ("T", ratio(3, 2))]).unwrap_err(),
            Error::NegativeProbability { symbol: 'H', .. }
        ));
    }

    #[test]
    fn zero_probability_symbols_are_allowed_but_not_drawable() {
        let a = Alphabet::new([('H', integer(1)), ('T', integer(0))]).unwrap();
        let p: Pattern = "HT".parse().unwrap();
        assert!(a.validate(&p).is_ok());
        assert_eq!(
            a.validate_drawable(&p),
            Err(Error::ZeroProbabilityCharacter('T'))
        );
    }

    #[test]
    fn unknown_symbols() {
        let p: Pattern = "HXH".parse().unwrap();
        assert_eq!(
            Alphabet::fair_coin().validate(&p),
            Err(Error::UnknownSymbol('X'))
        );
    }

    #[test]
    fn display_keeps_declaration_order() {
        let a = Alphabet::new([('T', ratio(1, 4)), ('H', ratio(3, 4))]).unwrap();
        assert_eq!(a.to_string(), "T:1/4,H:3/4");
    }
}
