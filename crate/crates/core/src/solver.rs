//! Pattern enumeration, second-mover best responses, first-mover worst cases
//! and parameter sweeps over the probability of heads.

use num_traits::{One, Zero};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::odds::{expected_waiting_time, prob_a_first};
use crate::pattern::{classify, Pattern, Relation};
use crate::payoff::leading_payoff;
use crate::rational::{ratio, Rational};

pub const DEFAULT_LENGTH_CAP: usize = 12;

/// Every pattern of one length, in lexicographic order of the alphabet's
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSet {
    k: usize,
    patterns: Vec<Pattern>,
}

impl PatternSet {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Pattern> {
        self.patterns.iter()
    }

    pub fn position(&self, pattern: &Pattern) -> Option<usize> {
        self.patterns.iter().position(|p| p == pattern)
    }
}

impl<'a> IntoIterator for &'a PatternSet {
    type Item = &'a Pattern;
    type IntoIter = std::slice::Iter<'a, Pattern>;

    fn into_iter(self) -> Self::IntoIter {
        self.patterns.iter()
    }
}

pub fn enumerate_patterns(k: usize, alphabet: &Alphabet) -> Result<PatternSet> {
    enumerate_patterns_capped(k, alphabet, DEFAULT_LENGTH_CAP)
}

pub fn enumerate_patterns_capped(k: usize, alphabet: &Alphabet, cap: usize) -> Result<PatternSet> {
    if k == 0 {
        return Err(Error::PatternTooShort { min: 1, got: 0 });
    }
    if k > cap {
        return Err(Error::PatternTooLong { got: k, cap });
    }
    let symbols: Vec<char> = alphabet.symbols().collect();
    let mut digits = vec![0usize; k];
    let mut patterns = Vec::with_capacity(symbols.len().saturating_pow(k as u32));
    'odometer: loop {
        let chars: Vec<char> = digits.iter().map(|&d| symbols[d]).collect();
        patterns.push(Pattern::new(chars)?);
        for pos in (0..k).rev() {
            digits[pos] += 1;
            if digits[pos] < symbols.len() {
                continue 'odometer;
            }
            digits[pos] = 0;
        }
        break;
    }
    Ok(PatternSet { k, patterns })
}

/// The second mover's optimal same-length replies to `opponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub opponent: Pattern,
    pub responder_win_prob: Rational,
    /// Every maximizer, in enumeration order. Never empty.
    pub all_maximizers: Vec<Pattern>,
}

impl BestResponse {
    /// First maximizer in enumeration order.
    pub fn representative(&self) -> &Pattern {
        &self.all_maximizers[0]
    }
}

pub fn best_response(opponent: &Pattern, k: usize, alphabet: &Alphabet) -> Result<BestResponse> {
    best_response_with(opponent, k, alphabet, Execution::default())
}

/// Exhaustive search over all length-`k` patterns `b != opponent`, skipping
/// pairs where one pattern is a strict substring of the other.
pub fn best_response_with(
    opponent: &Pattern,
    k: usize,
    alphabet: &Alphabet,
    exec: Execution,
) -> Result<BestResponse> {
    alphabet.validate(opponent)?;
    let set = enumerate_patterns(k, alphabet)?;
    let candidates: Vec<&Pattern> = set
        .iter()
        .filter(|b| classify(b, opponent) == Relation::Incomparable)
        .collect();
    if candidates.is_empty() {
        return Err(Error::EmptySearchSpace);
    }

    let probs = exec
        .map(&candidates, |b| prob_a_first(b, opponent, alphabet))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let best = probs.iter().max().expect("nonempty").clone();
    let all_maximizers = candidates
        .iter()
        .zip(&probs)
        .filter(|(_, p)| **p == best)
        .map(|(b, _)| (*b).clone())
        .collect();
    Ok(BestResponse {
        opponent: opponent.clone(),
        responder_win_prob: best,
        all_maximizers,
    })
}

/// Builds a reply whose last `k-1` characters repeat the opponent's first
/// `k-1`, choosing the free leading character to maximize the chance of
/// finishing first. Ties go to the earliest symbol in declaration order.
pub fn construct_overlap_response(opponent: &Pattern, alphabet: &Alphabet) -> Result<Pattern> {
    alphabet.validate(opponent)?;
    let k = opponent.len();
    if k < 2 {
        return Err(Error::PatternTooShort { min: 2, got: k });
    }
    let head = &opponent.chars()[..k - 1];
    let mut best: Option<(Pattern, Rational)> = None;
    for c in alphabet.symbols() {
        let mut chars = Vec::with_capacity(k);
        chars.push(c);
        chars.extend_from_slice(head);
        let candidate = Pattern::new(chars)?;
        if candidate == *opponent {
            continue;
        }
        let p = prob_a_first(&candidate, opponent, alphabet)?;
        if best.as_ref().is_none_or(|(_, bp)| p > *bp) {
            best = Some((candidate, p));
        }
    }
    best.map(|(p, _)| p).ok_or(Error::NoValidCandidate)
}

/// `min over b != a of P(a before b)`: the first mover's chance against a
/// best-responding opponent.
pub fn worst_case_win_prob(a: &Pattern, k: usize, alphabet: &Alphabet) -> Result<Rational> {
    let br = best_response(a, k, alphabet)?;
    Ok(Rational::one() - br.responder_win_prob)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMetric {
    /// First mover's win probability against the best response.
    WorstCaseProb,
    /// `E[race length against the best response] - E[wait for a alone]`.
    WaitDifference,
}

impl SweepMetric {
    pub fn default_grid(self) -> Grid {
        let grid = match self {
            SweepMetric::WorstCaseProb => Grid::range(ratio(1, 100), ratio(99, 100), ratio(1, 100)),
            SweepMetric::WaitDifference => {
                Grid::range(ratio(300, 1000), ratio(700, 1000), ratio(1, 1000))
            }
        };
        grid.expect("default grids are valid")
    }
}

/// Values of `P(first symbol)`, all strictly inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    points: Vec<Rational>,
}

impl Grid {
    pub fn new(points: Vec<Rational>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("grid has no points".into()));
        }
        if let Some(bad) = points
            .iter()
            .find(|p| **p <= Rational::zero() || **p >= Rational::one())
        {
            return Err(Error::InvalidGrid(format!("point {bad} is outside (0, 1)")));
        }
        Ok(Grid { points })
    }

    /// `from, from + step, ...` up to and including `to`.
    pub fn range(from: Rational, to: Rational, step: Rational) -> Result<Self> {
        if step <= Rational::zero() {
            return Err(Error::InvalidGrid("step must be positive".into()));
        }
        if from > to {
            return Err(Error::InvalidGrid(format!("from {from} exceeds to {to}")));
        }
        let mut points = Vec::new();
        let mut x = from;
        while x <= to {
            points.push(x.clone());
            x += &step;
        }
        Grid::new(points)
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }
}

/// Symbols of a two-symbol alphabet whose first-symbol probability is swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BinaryTemplate {
    pub first: char,
    pub second: char,
}

impl Default for BinaryTemplate {
    fn default() -> Self {
        BinaryTemplate {
            first: 'H',
            second: 'T',
        }
    }
}

impl BinaryTemplate {
    pub fn at(&self, p_first: Rational) -> Result<Alphabet> {
        Alphabet::binary(self.first, self.second, p_first)
    }

    /// Extracts the template from a two-symbol alphabet, ignoring its
    /// probabilities.
    pub fn from_alphabet(alphabet: &Alphabet) -> Result<Self> {
        let symbols: Vec<char> = alphabet.symbols().collect();
        match symbols.as_slice() {
            [first, second] => Ok(BinaryTemplate {
                first: *first,
                second: *second,
            }),
            _ => Err(Error::NonBinaryTemplate(symbols.len())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub param: Rational,
    /// One value per pattern, aligned with [`Sweep::patterns`].
    pub values: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub metric: SweepMetric,
    pub patterns: Vec<Pattern>,
    pub rows: Vec<SweepRow>,
}

pub fn sweep(
    metric: SweepMetric,
    k: usize,
    template: BinaryTemplate,
    grid: &Grid,
) -> Result<Sweep> {
    sweep_with(metric, k, template, grid, Execution::default())
}

pub fn sweep_with(
    metric: SweepMetric,
    k: usize,
    template: BinaryTemplate,
    grid: &Grid,
    exec: Execution,
) -> Result<Sweep> {
    if template.first == template.second {
        return Err(Error::DuplicateSymbol(template.first));
    }
    let patterns = enumerate_patterns(k, &template.at(ratio(1, 2))?)?.patterns;
    if patterns.len() < 2 {
        return Err(Error::EmptySearchSpace);
    }
    let rows = exec
        .map(grid.points(), |p| {
            let alphabet = template.at(p.clone())?;
            let values = sweep_point(metric, &patterns, &alphabet)?;
            Ok(SweepRow {
                param: p.clone(),
                values,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep {
        metric,
        patterns,
        rows,
    })
}

/// Evaluates a metric for every pattern at one alphabet, sharing the matrix
/// of leading numbers across all pairs.
fn sweep_point(
    metric: SweepMetric,
    patterns: &[Pattern],
    alphabet: &Alphabet,
) -> Result<Vec<Rational>> {
    let n = patterns.len();
    let mut payoff = vec![vec![Rational::zero(); n]; n];
    for (i, x) in patterns.iter().enumerate() {
        for (j, y) in patterns.iter().enumerate() {
            payoff[i][j] = leading_payoff(x, y, alphabet)?.into_inner();
        }
    }
    // same-length distinct patterns are always incomparable
    let prob_first = |i: usize, j: usize| {
        let in_favor = &payoff[j][j] - &payoff[j][i];
        let against = &payoff[i][i] - &payoff[i][j];
        &in_favor / (&against + &in_favor)
    };
    let duration = |i: usize, j: usize| {
        let num = &payoff[i][i] * &payoff[j][j] - &payoff[i][j] * &payoff[j][i];
        let den = &payoff[i][i] + &payoff[j][j] - &payoff[i][j] - &payoff[j][i];
        num / den
    };

    let mut values = Vec::with_capacity(n);
    for (a, pattern) in patterns.iter().enumerate() {
        let replies: Vec<(usize, Rational)> = (0..n)
            .filter(|&b| b != a)
            .map(|b| (b, prob_first(b, a)))
            .collect();
        let best = replies
            .iter()
            .map(|(_, p)| p)
            .max()
            .expect("at least two patterns")
            .clone();
        let value = match metric {
            SweepMetric::WorstCaseProb => Rational::one() - best,
            SweepMetric::WaitDifference => {
                let joint = replies
                    .iter()
                    .filter(|(_, p)| *p == best)
                    .map(|(b, _)| duration(a, *b))
                    .min()
                    .expect("a maximizer exists");
                joint - expected_waiting_time(pattern, alphabet)?
            }
        };
        values.push(value);
    }
    Ok(values)
}
