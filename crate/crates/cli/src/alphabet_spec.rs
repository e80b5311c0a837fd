//! Textual alphabet specifications.
//!
//! Two forms are accepted:
//!
//! * `SYM:PROB,SYM:PROB,...` where `PROB` is a fraction (`1/2`) or a finite
//!   decimal (`0.75`);
//! * `uniform:SYMBOLS`, equal probabilities over `SYMBOLS`, where `X..Y`
//!   expands to the inclusive character range (`uniform:A..Z`).

use penney::rational::{parse_probability, ratio};
use penney::{validate_alphabet, Alphabet};

use crate::error::CliError;

pub const FAIR_COIN: &str = "H:1/2,T:1/2";

pub fn parse_alphabet(spec: &str) -> Result<Alphabet, CliError> {
    let spec = spec.trim();
    if let Some(symbols) = spec.strip_prefix("uniform:") {
        let symbols = expand_ranges(symbols)?;
        if symbols.is_empty() {
            return Err(CliError::Spec(format!("{spec:?} lists no symbols")));
        }
        let n = symbols.len() as i64;
        let entries = symbols.iter().map(|c| (c.to_string(), ratio(1, n)));
        return Ok(validate_alphabet(entries)?);
    }

    let mut entries = Vec::new();
    for item in spec.split(',') {
        let (symbol, prob) = item.split_once(':').ok_or_else(|| {
            CliError::Spec(format!(
                "alphabet entry {item:?} is not SYM:PROB (e.g. \"H:1/2,T:1/2\" or \"uniform:A..Z\")"
            ))
        })?;
        entries.push((symbol.trim().to_string(), parse_probability(prob)?));
    }
    Ok(validate_alphabet(entries)?)
}

fn expand_ranges(text: &str) -> Result<Vec<char>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if i + 3 < chars.len() && chars[i + 1] == '.' && chars[i + 2] == '.' {
            let (lo, hi) = (chars[i], chars[i + 3]);
            if lo > hi {
                return Err(CliError::Spec(format!("empty range {lo}..{hi}")));
            }
            out.extend(lo..=hi);
            i += 4;
        } else {
            out.push(chars[i]);
            i += 1;
        }
    }
    Ok(out)
}
