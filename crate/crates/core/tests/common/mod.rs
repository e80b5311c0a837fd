//! Brute-force absorbing Markov chain oracle for two-pattern races.
//!
//! States are the distinct proper prefixes of the two patterns. Hitting
//! probabilities and expected hitting times are found by solving the linear
//! systems directly with exact Gaussian elimination, sharing nothing with the
//! leading-number formulas under test.

#![allow(dead_code)]

use num_traits::{One, Zero};
use penney::{Alphabet, Pattern, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Next {
    State(usize),
    AWins,
    BWins,
}

/// `(P(a first), E[length])` for an incomparable pair.
pub fn markov_race(a: &Pattern, b: &Pattern, alphabet: &Alphabet) -> (Rational, Rational) {
    let a = a.chars().to_vec();
    let b = b.chars().to_vec();
    let mut states: Vec<Vec<char>> = Vec::new();
    for pat in [&a, &b] {
        for len in 0..pat.len() {
            let prefix = pat[..len].to_vec();
            if !states.contains(&prefix) {
                states.push(prefix);
            }
        }
    }

    let step = |state: &[char], c: char| -> Next {
        let mut s = state.to_vec();
        s.push(c);
        if s.ends_with(&a) {
            return Next::AWins;
        }
        if s.ends_with(&b) {
            return Next::BWins;
        }
        (0..=s.len())
            .filter_map(|cut| states.iter().position(|st| st.as_slice() == &s[cut..]))
            .next()
            .map(Next::State)
            .expect("empty prefix is always a state")
    };

    // (I - Q) x = rhs for both unknown vectors at once
    let n = states.len();
    let mut m = vec![vec![Rational::zero(); n + 2]; n];
    for (i, st) in states.iter().enumerate() {
        m[i][i] += Rational::one();
        m[i][n + 1] = Rational::one();
        for (c, p) in alphabet.entries() {
            if p.is_zero() {
                continue;
            }
            match step(st, *c) {
                Next::State(j) => m[i][j] -= p,
                Next::AWins => m[i][n] += p,
                Next::BWins => {}
            }
        }
    }
    let x = solve(m, n);
    let start = states.iter().position(|s| s.is_empty()).unwrap();
    (x[start][0].clone(), x[start][1].clone())
}

/// Gauss-Jordan on an `n x (n + r)` augmented matrix; returns the `r`
/// solution columns per row.
fn solve(mut m: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("nonsingular");
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for v in &mut m[col][col..] {
            *v = &*v * &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *v -= &factor * p;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// All patterns over `symbols` with lengths `1..=max_len`.
pub fn patterns_up_to(symbols: &str, max_len: usize) -> Vec<Pattern> {
    let mut out: Vec<String> = vec![String::new()];
    let mut all = Vec::new();
    for _ in 0..max_len {
        out = out
            .iter()
            .flat_map(|p| symbols.chars().map(move |c| format!("{p}{c}")))
            .collect();
        all.extend(out.iter().map(|s| s.parse::<Pattern>().unwrap()));
    }
    all
}

pub fn pat(s: &str) -> Pattern {
    s.parse().unwrap()
}
