//! Output records. Every exact quantity is carried as a fraction string
//! (`"3/8"`, `"10"`) so that JSON output parses back to the same record.

use penney::rational::format_fraction;
use penney::{Alphabet, Rational, Relation};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    /// Version of the `penney` library that produced the record.
    pub version: String,
    #[serde(flatten)]
    pub body: Body,
}

impl Envelope {
    pub fn new(body: Body) -> Self {
        Envelope {
            version: penney::VERSION.to_string(),
            body,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "kebab-case")]
pub enum Body {
    Odds(OddsRecord),
    Wait(WaitRecord),
    Table(TableRecord),
    BestResponse(BestResponseRecord),
    Sweep(SweepRecord),
    Simulate(SimulateRecord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolProb {
    pub symbol: char,
    pub prob: String,
}

pub fn alphabet_echo(alphabet: &Alphabet) -> Vec<SymbolProb> {
    alphabet
        .entries()
        .iter()
        .map(|(symbol, p)| SymbolProb {
            symbol: *symbol,
            prob: format_fraction(p),
        })
        .collect()
}

pub fn relation_name(relation: Relation) -> &'static str {
    match relation {
        Relation::Equal => "equal",
        Relation::AStrictSubstringOfB => "a_substring_of_b",
        Relation::BStrictSubstringOfA => "b_substring_of_a",
        Relation::Incomparable => "incomparable",
    }
}

pub fn frac(value: &Rational) -> String {
    format_fraction(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddsRecord {
    pub a: String,
    pub b: String,
    pub alphabet: Vec<SymbolProb>,
    pub relation: String,
    pub against: String,
    pub in_favor: String,
    /// The odds pair scaled to coprime integers.
    pub against_reduced: String,
    pub in_favor_reduced: String,
    pub prob_a_first: String,
    pub prob_b_first: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaitRecord {
    pub a: String,
    pub b: Option<String>,
    pub alphabet: Vec<SymbolProb>,
    pub relation: Option<String>,
    pub expected_flips: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub k: usize,
    pub alphabet: Vec<SymbolProb>,
    pub patterns: Vec<String>,
    /// `cells[r][c]` is P(row pattern before column pattern); `None` on the
    /// diagonal.
    pub cells: Vec<Vec<Option<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapRecord {
    pub response: String,
    pub win_prob: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestResponseRecord {
    pub opponent: String,
    pub k: usize,
    pub alphabet: Vec<SymbolProb>,
    pub response: String,
    pub responder_win_prob: String,
    pub all_maximizers: Vec<String>,
    /// Reply built by the overlap rule, when the rule applies.
    pub overlap_rule: Option<OverlapRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRowRecord {
    pub param: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub metric: String,
    pub k: usize,
    pub symbols: String,
    pub from: String,
    pub to: String,
    pub step: String,
    pub patterns: Vec<String>,
    pub rows: Vec<SweepRowRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateRecord {
    pub a: String,
    pub b: String,
    pub alphabet: Vec<SymbolProb>,
    pub trials: u64,
    pub seed: u64,
    pub rng: String,
    pub max_flips_per_trial: u64,
    pub wins_a: u64,
    pub wins_b: u64,
    pub total_flips: String,
    pub min_trial_flips: u64,
    pub max_trial_flips: u64,
    pub winrate_a: f64,
    pub mean_flips: f64,
    pub flips_std: f64,
    pub mean_flips_std_error: f64,
    pub exact_prob_a_first: String,
    pub exact_expected_flips: String,
}
