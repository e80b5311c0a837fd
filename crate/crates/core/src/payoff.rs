//! Generalized leading numbers.
//!
//! Picture a bettor who, before every draw, starts a fresh sequence of fair
//! bets that spell out pattern `B`, letting winnings ride. If the stream stops
//! the moment pattern `A` completes, the sequences still alive are exactly
//! those whose start lines a suffix of `A` up with a prefix of `B`. Each such
//! sequence has been paid `1/P(x)` for every character it called correctly,
//! and `R_A(B)` is the total.

use std::fmt;
use std::ops::Sub;

use num_traits::{One, Zero};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::pattern::Pattern;
use crate::rational::{format_fraction, Rational};

/// Fair payoff to all `B` bet sequences when `A` ends the stream.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LeadingPayoff(Rational);

impl LeadingPayoff {
    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_inner(self) -> Rational {
        self.0
    }
}

impl<'a> Sub<&'a LeadingPayoff> for &'a LeadingPayoff {
    type Output = Rational;

    fn sub(self, rhs: &'a LeadingPayoff) -> Rational {
        &self.0 - &rhs.0
    }
}

impl fmt::Display for LeadingPayoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fraction(&self.0))
    }
}

/// Computes `R_A(B)`: the sum over every suffix of `a` that is also a prefix
/// of `b` of the product of inverse character probabilities along that
/// suffix. Suffixes longer than `b` never match.
pub fn leading_payoff(a: &Pattern, b: &Pattern, alphabet: &Alphabet) -> Result<LeadingPayoff> {
    alphabet.validate(a)?;
    alphabet.validate(b)?;

    let a = a.chars();
    let b = b.chars();
    let mut total = Rational::zero();
    for start in 0..a.len() {
        let suffix = &a[start..];
        if suffix.len() > b.len() || suffix != &b[..suffix.len()] {
            continue;
        }
        let mut wealth = Rational::one();
        for c in suffix {
            let p = alphabet.prob(*c).expect("validated symbol");
            if p.is_zero() {
                return Err(Error::ZeroProbabilityCharacter(*c));
            }
            wealth /= p;
        }
        total += wealth;
    }
    Ok(LeadingPayoff(total))
}

/// Classical Conway leading number `AB` for a two-symbol pair: bit `L-1` is
/// set when the length-`L` suffix of `a` equals the length-`L` prefix of `b`.
///
/// The overlaps are found through the border chain of the KMP prefix
/// function over `b # a`, independently of [`leading_payoff`]. Under a fair
/// coin, `leading_payoff(a, b) == 2 * conway_leading_number(a, b)`.
pub fn conway_leading_number(a: &Pattern, b: &Pattern) -> Result<u128> {
    let mut distinct: Vec<char> = Vec::with_capacity(2);
    for c in a.chars().iter().chain(b.chars()) {
        if !distinct.contains(c) {
            distinct.push(*c);
        }
    }
    if distinct.len() > 2 {
        return Err(Error::NonBinaryPattern(distinct.len()));
    }
    if a.len() > 128 {
        return Err(Error::PatternTooLong {
            got: a.len(),
            cap: 128,
        });
    }

    let text: Vec<Option<char>> = b
        .chars()
        .iter()
        .copied()
        .map(Some)
        .chain(std::iter::once(None))
        .chain(a.chars().iter().copied().map(Some))
        .collect();
    let pi = prefix_function(&text);

    let mut number = 0u128;
    let mut border = *pi.last().expect("nonempty");
    while border > 0 {
        number |= 1 << (border - 1);
        border = pi[border - 1];
    }
    Ok(number)
}

/// `pi[i]` is the length of the longest proper border of `s[..=i]`.
fn prefix_function<T: PartialEq>(s: &[T]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut k = pi[i - 1];
        while k > 0 && s[i] != s[k] {
            k = pi[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// `R_A(A)` lower bound: the full-overlap term `prod 1/P(a_i)`.
pub fn full_overlap_term(a: &Pattern, alphabet: &Alphabet) -> Result<Rational> {
    alphabet.validate_drawable(a)?;
    Ok(a.chars()
        .iter()
        .map(|c| alphabet.prob(*c).expect("validated symbol").recip())
        .product())
}
