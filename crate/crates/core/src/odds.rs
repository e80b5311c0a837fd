//! Race odds and expected race duration from generalized leading numbers.

use num_traits::{One, Zero};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::pattern::{classify, Pattern, Relation};
use crate::payoff::leading_payoff;
use crate::rational::Rational;

/// Odds against `A` occurring before `B`, as chances-against : chances-in-favor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddsReport {
    pub against: Rational,
    pub in_favor: Rational,
    pub prob_a_first: Rational,
    pub relation: Relation,
}

impl OddsReport {
    fn from_chances(against: Rational, in_favor: Rational, relation: Relation) -> Self {
        debug_assert!(!(against.is_zero() && in_favor.is_zero()));
        let prob_a_first = &in_favor / (&against + &in_favor);
        OddsReport {
            against,
            in_favor,
            prob_a_first,
            relation,
        }
    }

    pub fn prob_b_first(&self) -> Rational {
        Rational::one() - &self.prob_a_first
    }
}

/// The four leading numbers of an ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PayoffQuad {
    pub aa: Rational,
    pub ab: Rational,
    pub bb: Rational,
    pub ba: Rational,
}

impl PayoffQuad {
    pub fn new(a: &Pattern, b: &Pattern, alphabet: &Alphabet) -> Result<Self> {
        Ok(PayoffQuad {
            aa: leading_payoff(a, a, alphabet)?.into_inner(),
            ab: leading_payoff(a, b, alphabet)?.into_inner(),
            bb: leading_payoff(b, b, alphabet)?.into_inner(),
            ba: leading_payoff(b, a, alphabet)?.into_inner(),
        })
    }

    /// `R_A(A) + R_B(B) - R_A(B) - R_B(A)`, positive for incomparable pairs.
    pub fn denominator(&self) -> Rational {
        &self.aa + &self.bb - &self.ab - &self.ba
    }
}

/// Odds against `a` preceding `b`.
///
/// For incomparable patterns the odds are `R_A(A) - R_A(B) : R_B(B) - R_B(A)`.
/// A pattern that contains the other as a strict substring can never win, so
/// substring pairs return the deterministic odds `1:0` or `0:1`.
pub fn odds_against(a: &Pattern, b: &Pattern, alphabet: &Alphabet) -> Result<OddsReport> {
    alphabet.validate(a)?;
    alphabet.validate(b)?;
    let relation = classify(a, b);
    match relation {
        Relation::Equal => Err(Error::EqualPatterns),
        Relation::BStrictSubstringOfA => Ok(OddsReport::from_chances(
            Rational::one(),
            Rational::zero(),
            relation,
        )),
        Relation::AStrictSubstringOfB => Ok(OddsReport::from_chances(
            Rational::zero(),
            Rational::one(),
            relation,
        )),
        Relation::Incomparable => {
            let q = PayoffQuad::new(a, b, alphabet)?;
            Ok(OddsReport::from_chances(
                &q.aa - &q.ab,
                &q.bb - &q.ba,
                relation,
            ))
        }
    }
}

/// `P(a occurs before b)`.
pub fn prob_a_first(a: &Pattern, b: &Pattern, alphabet: &Alphabet) -> Result<Rational> {
    odds_against(a, b, alphabet).map(|o| o.prob_a_first)
}

/// Expected number of draws until `a` or `b` first occurs, counting the
/// final draw.
///
/// Equal patterns give the single-pattern waiting time `R_A(A)`; when one
/// pattern contains the other, the contained one always ends the race and its
/// own waiting time applies.
pub fn expected_duration(a: &Pattern, b: &Pattern, alphabet: &Alphabet) -> Result<Rational> {
    alphabet.validate_drawable(a)?;
    alphabet.validate_drawable(b)?;
    match classify(a, b) {
        Relation::Equal | Relation::AStrictSubstringOfB => {
            Ok(leading_payoff(a, a, alphabet)?.into_inner())
        }
        Relation::BStrictSubstringOfA => Ok(leading_payoff(b, b, alphabet)?.into_inner()),
        Relation::Incomparable => {
            let q = PayoffQuad::new(a, b, alphabet)?;
            Ok((&q.aa * &q.bb - &q.ab * &q.ba) / q.denominator())
        }
    }
}

/// Expected number of draws until `a` first occurs on its own.
pub fn expected_waiting_time(a: &Pattern, alphabet: &Alphabet) -> Result<Rational> {
    expected_duration(a, a, alphabet)
}
