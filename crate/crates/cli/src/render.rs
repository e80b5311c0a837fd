use std::fmt::Write as _;

use penney::rational::{format_decimal, format_fraction, integer};
use penney::{Alphabet, BestResponse, OddsReport, Pattern, Rational, Relation};

use crate::envelope::SimulateRecord;
use crate::{CliError, Style};

/// A single table or CSV cell: the exact fraction, or a decimal under
/// `--decimal`.
pub fn cell(value: &Rational, style: Style) -> String {
    match style.decimal {
        Some(digits) => format_decimal(value, digits),
        None => format_fraction(value),
    }
}

/// `10`, `3/8 = 0.375` or `45/64 ≈ 0.703`.
fn exact(value: &Rational, style: Style, default_digits: usize) -> String {
    if value.is_integer() {
        return format_fraction(value);
    }
    let digits = style.decimal.unwrap_or(default_digits);
    let scaled = value * integer(10).pow(digits as i32);
    let sign = if scaled.is_integer() { "=" } else { "≈" };
    format!(
        "{} {sign} {}",
        format_fraction(value),
        format_decimal(value, digits)
    )
}

pub fn odds_text(report: &OddsReport, reduced: (&Rational, &Rational), style: Style) -> String {
    let mut out = format!(
        "odds against A = {}:{} ({}:{}); P(A first) = {}",
        format_fraction(&report.against),
        format_fraction(&report.in_favor),
        format_fraction(reduced.0),
        format_fraction(reduced.1),
        exact(&report.prob_a_first, style, 3),
    );
    match report.relation {
        Relation::AStrictSubstringOfB => out.push_str(" (A is a substring of B)"),
        Relation::BStrictSubstringOfA => out.push_str(" (B is a substring of A)"),
        _ => {}
    }
    out.push('\n');
    out
}

pub fn wait_text(a: &Pattern, b: Option<&Pattern>, expected: &Rational, style: Style) -> String {
    let target = match b {
        Some(b) => format!("{a} or {b}"),
        None => a.to_string(),
    };
    format!("E[flips until {target}] = {}\n", exact(expected, style, 2))
}

pub fn best_response_text(
    br: &BestResponse,
    overlap: Option<&(Pattern, Rational)>,
    style: Style,
) -> String {
    let mut out = format!(
        "best response to {}: {}, P(win)={}\n",
        br.opponent,
        br.representative(),
        exact(&br.responder_win_prob, style, 3)
    );
    if br.all_maximizers.len() > 1 {
        let all: Vec<String> = br.all_maximizers.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "tied: {}", all.join(", "));
    }
    if let Some((reply, p)) = overlap {
        let _ = writeln!(out, "overlap rule: {reply}, P(win)={}", exact(p, style, 3));
    }
    out
}

pub fn simulate_text(
    record: &SimulateRecord,
    alphabet: &Alphabet,
    exact_p: &Rational,
    exact_e: &Rational,
    style: Style,
) -> String {
    let digits = style.decimal.unwrap_or(4);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} vs {} over {alphabet}: {} trials, seed {}, rng {}",
        record.a, record.b, record.trials, record.seed, record.rng
    );
    let _ = writeln!(
        out,
        "A first {} times (winrate {:.digits$}), B first {} times",
        record.wins_a, record.winrate_a, record.wins_b
    );
    let _ = writeln!(
        out,
        "mean flips {:.digits$} (sd {:.digits$}, se {:.digits$}), shortest {}, longest {}",
        record.mean_flips,
        record.flips_std,
        record.mean_flips_std_error,
        record.min_trial_flips,
        record.max_trial_flips
    );
    let _ = writeln!(
        out,
        "exact: P(A first) = {}, E[flips] = {}",
        exact(exact_p, style, 3),
        exact(exact_e, style, 2)
    );
    out
}

/// Square matrix with row and column labels.
pub fn grid_text(names: &[String], cells: &[Vec<String>]) -> String {
    let header: Vec<String> = std::iter::once(String::new())
        .chain(names.iter().cloned())
        .collect();
    let rows: Vec<Vec<String>> = names
        .iter()
        .zip(cells)
        .map(|(name, row)| {
            std::iter::once(name.clone())
                .chain(row.iter().cloned())
                .collect()
        })
        .collect();
    columns_text(&header, &rows)
}

/// Right-aligned columns separated by two spaces.
pub fn columns_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn csv(rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields is UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use penney::rational::ratio;

    #[test]
    fn exact_marks_rounding() {
        let plain = Style { decimal: None };
        assert_eq!(exact(&ratio(3, 8), plain, 3), "3/8 = 0.375");
        assert_eq!(exact(&ratio(45, 64), plain, 3), "45/64 ≈ 0.703");
        assert_eq!(exact(&integer(10), plain, 3), "10");
        assert_eq!(
            exact(&ratio(1, 3), Style { decimal: Some(5) }, 3),
            "1/3 ≈ 0.33333"
        );
    }

    #[test]
    fn csv_quotes_and_uses_lf() {
        let rows = vec![
            vec!["a".to_string(), "x,y".to_string()],
            vec!["1".into(), "".into()],
        ];
        assert_eq!(csv(&rows).unwrap(), "a,\"x,y\"\n1,\n");
    }

    #[test]
    fn columns_align_right() {
        let out = columns_text(
            &["p".into(), "value".into()],
            &[vec!["1/2".into(), "3".into()]],
        );
        assert_eq!(out, "  p  value\n1/2      3\n");
    }
}
