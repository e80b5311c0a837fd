//! Exact odds and durations for pattern races over i.i.d. categorical
//! streams (Penney's game and its generalizations).
//!
//! Two players each pick a pattern; symbols are drawn until one of the
//! patterns appears. Everything here is computed in exact rational
//! arithmetic from generalized leading numbers ([`payoff::leading_payoff`]).
//!
//! ```
//! use penney::{odds_against, Alphabet, Pattern};
//! use penney::rational::ratio;
//!
//! let a: Pattern = "HTH".parse().unwrap();
//! let b: Pattern = "TTH".parse().unwrap();
//! let odds = odds_against(&a, &b, &Alphabet::fair_coin()).unwrap();
//! assert_eq!(odds.prob_a_first, ratio(3, 8));
//! ```

pub mod alphabet;
pub mod error;
pub mod exec;
pub mod odds;
pub mod pattern;
pub mod payoff;
pub mod rational;
pub mod sim;
pub mod solver;

/// Library version, echoed in machine-readable outputs.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use alphabet::{validate_alphabet, Alphabet};
pub use error::{Error, Result};
pub use exec::Execution;
pub use odds::{expected_duration, expected_waiting_time, odds_against, prob_a_first, OddsReport};
pub use pattern::{classify, Pattern, Relation};
pub use payoff::{conway_leading_number, leading_payoff, LeadingPayoff};
pub use rational::Rational;
pub use sim::{run_race, RaceStats, SimConfig};
pub use solver::{
    best_response, construct_overlap_response, enumerate_patterns, sweep, worst_case_win_prob,
    BestResponse, BinaryTemplate, Grid, PatternSet, Sweep, SweepMetric, SweepRow,
};
