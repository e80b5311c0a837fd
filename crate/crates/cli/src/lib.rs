//! Command-line front end for the `penney` library.
//!
//! [`run`] parses nothing itself; it takes an already-parsed [`Cli`] and
//! returns the rendered output, which keeps every command testable without
//! spawning a process.

pub mod alphabet_spec;
pub mod envelope;
pub mod error;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use penney::rational::{integer, parse_probability};
use penney::sim::{DEFAULT_MAX_FLIPS_PER_TRIAL, RNG_ID};
use penney::solver::best_response_with;
use penney::{
    best_response, classify, construct_overlap_response, enumerate_patterns, expected_duration,
    expected_waiting_time, odds_against, prob_a_first, run_race, sweep, BinaryTemplate, Error,
    Execution, Grid, Pattern, Rational, Relation, SimConfig, SweepMetric,
};

use alphabet_spec::{parse_alphabet, FAIR_COIN};
use envelope::*;
pub use error::CliError;

/// Largest table the `table` command will build, in rows.
pub const TABLE_ROW_LIMIT: usize = 256;

#[derive(Debug, Parser)]
#[command(
    name = "penney",
    version,
    about = "Exact odds, waiting times and best responses for Penney's game"
)]
pub struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "PENNEY_FORMAT",
        default_value = "text"
    )]
    pub format: Format,
    /// Show decimals with N places (text and CSV). JSON always carries exact fractions.
    #[arg(long, global = true, value_name = "N")]
    pub decimal: Option<usize>,
    /// Cross-check the result by an independent computation before printing.
    #[arg(long, global = true)]
    pub self_check: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    WorstCaseProb,
    WaitDifference,
}

impl MetricArg {
    fn metric(self) -> SweepMetric {
        match self {
            MetricArg::WorstCaseProb => SweepMetric::WorstCaseProb,
            MetricArg::WaitDifference => SweepMetric::WaitDifference,
        }
    }

    fn name(self) -> &'static str {
        match self {
            MetricArg::WorstCaseProb => "worst-case-prob",
            MetricArg::WaitDifference => "wait-difference",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Odds against A appearing before B.
    Odds {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// "SYM:PROB,..." or "uniform:SYMBOLS" (ranges like A..Z allowed).
        #[arg(long, default_value = FAIR_COIN)]
        alphabet: String,
    },
    /// Expected flips until A appears, or until A or B appears.
    Wait {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, default_value = FAIR_COIN)]
        alphabet: String,
    },
    /// Matrix of P(row before column) over all patterns of length k.
    Table {
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value = FAIR_COIN)]
        alphabet: String,
    },
    /// Pattern of length k most likely to appear before A.
    BestResponse {
        #[arg(long)]
        a: String,
        /// Length of the reply; defaults to the length of A.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = FAIR_COIN)]
        alphabet: String,
    },
    /// Per-pattern metric over a grid of P(first symbol) values.
    Sweep {
        #[arg(long, value_enum, default_value = "worst-case-prob")]
        metric: MetricArg,
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Grid start; with --to and --step replaces the metric's default grid.
        #[arg(long, requires_all = ["to", "step"])]
        from: Option<String>,
        #[arg(long, requires_all = ["from", "step"])]
        to: Option<String>,
        #[arg(long, requires_all = ["from", "to"])]
        step: Option<String>,
        /// The two symbols; the swept probability belongs to the first.
        #[arg(long, default_value = "HT")]
        symbols: String,
    },
    /// Monte Carlo race between A and B.
    Simulate {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value = FAIR_COIN)]
        alphabet: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_FLIPS_PER_TRIAL)]
        max_flips: u64,
    },
}

/// Rendering options shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub decimal: Option<usize>,
}

/// A computed command result in all its renderings.
pub struct Outcome {
    pub envelope: Envelope,
    pub text: String,
    /// Header row followed by data rows.
    pub csv: Vec<Vec<String>>,
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let style = Style {
        decimal: cli.decimal,
    };
    let outcome = execute(&cli.command, style, cli.self_check)?;
    match cli.format {
        Format::Text => Ok(outcome.text),
        Format::Json => Ok(serde_json::to_string_pretty(&outcome.envelope)? + "\n"),
        Format::Csv => render::csv(&outcome.csv),
    }
}

pub fn execute(command: &Command, style: Style, self_check: bool) -> Result<Outcome, CliError> {
    match command {
        Command::Odds { a, b, alphabet } => odds(a, b, alphabet, style, self_check),
        Command::Wait { a, b, alphabet } => wait(a, b.as_deref(), alphabet, style, self_check),
        Command::Table { k, alphabet } => table(*k, alphabet, style, self_check),
        Command::BestResponse { a, k, alphabet } => best_reply(a, *k, alphabet, style, self_check),
        Command::Sweep {
            metric,
            k,
            from,
            to,
            step,
            symbols,
        } => {
            let range = match (from, to, step) {
                (Some(f), Some(t), Some(s)) => Some((f.as_str(), t.as_str(), s.as_str())),
                _ => None,
            };
            run_sweep(*metric, *k, range, symbols, style, self_check)
        }
        Command::Simulate {
            a,
            b,
            alphabet,
            trials,
            seed,
            max_flips,
        } => simulate(
            a, b, alphabet, *trials, *seed, *max_flips, style, self_check,
        ),
    }
}

fn pattern(text: &str) -> Result<Pattern, CliError> {
    Ok(text.parse::<Pattern>()?)
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::SelfCheck(what()))
    }
}

/// Scales the pair by the LCM of the denominators, then divides by the GCD.
fn reduced_pair(x: &Rational, y: &Rational) -> (Rational, Rational) {
    let lcm = Rational::from_integer(x.denom().lcm(y.denom()));
    let (xi, yi) = ((x * &lcm).to_integer(), (y * &lcm).to_integer());
    let gcd = xi.gcd(&yi);
    (
        Rational::from_integer(xi / &gcd),
        Rational::from_integer(yi / &gcd),
    )
}

fn odds(
    a: &str,
    b: &str,
    alphabet: &str,
    style: Style,
    self_check: bool,
) -> Result<Outcome, CliError> {
    let (pa, pb, al) = (pattern(a)?, pattern(b)?, parse_alphabet(alphabet)?);
    let report = odds_against(&pa, &pb, &al)?;
    if self_check {
        let reverse = odds_against(&pb, &pa, &al)?;
        let total = &report.against + &report.in_favor;
        check(&report.in_favor / &total == report.prob_a_first, || {
            "probability disagrees with the odds".into()
        })?;
        check(
            &report.prob_a_first + &reverse.prob_a_first == integer(1)
                && reverse.against == report.in_favor,
            || format!("odds for ({pa}, {pb}) and ({pb}, {pa}) are not complementary"),
        )?;
    }
    let (ra, rf) = reduced_pair(&report.against, &report.in_favor);
    let record = OddsRecord {
        a: pa.to_string(),
        b: pb.to_string(),
        alphabet: alphabet_echo(&al),
        relation: relation_name(report.relation).into(),
        against: frac(&report.against),
        in_favor: frac(&report.in_favor),
        against_reduced: frac(&ra),
        in_favor_reduced: frac(&rf),
        prob_a_first: frac(&report.prob_a_first),
        prob_b_first: frac(&report.prob_b_first()),
    };
    let text = render::odds_text(&report, (&ra, &rf), style);
    let csv = vec![
        vec![
            "a",
            "b",
            "relation",
            "against",
            "in_favor",
            "against_reduced",
            "in_favor_reduced",
            "prob_a_first",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
        vec![
            record.a.clone(),
            record.b.clone(),
            record.relation.clone(),
            record.against.clone(),
            record.in_favor.clone(),
            record.against_reduced.clone(),
            record.in_favor_reduced.clone(),
            render::cell(&report.prob_a_first, style),
        ],
    ];
    Ok(Outcome {
        envelope: Envelope::new(Body::Odds(record)),
        text,
        csv,
    })
}

fn wait(
    a: &str,
    b: Option<&str>,
    alphabet: &str,
    style: Style,
    self_check: bool,
) -> Result<Outcome, CliError> {
    let (pa, al) = (pattern(a)?, parse_alphabet(alphabet)?);
    let pb = b.map(pattern).transpose()?;
    let expected = match &pb {
        Some(pb) => expected_duration(&pa, pb, &al)?,
        None => expected_waiting_time(&pa, &al)?,
    };
    if self_check {
        // the race ends no later than either pattern would alone, and no
        // earlier than the shorter one can complete
        let mut alone = vec![expected_waiting_time(&pa, &al)?];
        let mut shortest = pa.len();
        if let Some(pb) = &pb {
            alone.push(expected_waiting_time(pb, &al)?);
            shortest = shortest.min(pb.len());
        }
        let bound = alone.into_iter().min().expect("at least one pattern");
        check(
            expected <= bound && expected >= integer(shortest as i64),
            || format!("expected flips {expected} outside [{shortest}, {bound}]"),
        )?;
    }
    let relation = pb
        .as_ref()
        .map(|pb| relation_name(classify(&pa, pb)).to_string());
    let record = WaitRecord {
        a: pa.to_string(),
        b: pb.as_ref().map(ToString::to_string),
        alphabet: alphabet_echo(&al),
        relation,
        expected_flips: frac(&expected),
    };
    let text = render::wait_text(&pa, pb.as_ref(), &expected, style);
    let csv = vec![
        vec!["a".into(), "b".into(), "expected_flips".into()],
        vec![
            record.a.clone(),
            record.b.clone().unwrap_or_default(),
            render::cell(&expected, style),
        ],
    ];
    Ok(Outcome {
        envelope: Envelope::new(Body::Wait(record)),
        text,
        csv,
    })
}

fn table(k: usize, alphabet: &str, style: Style, self_check: bool) -> Result<Outcome, CliError> {
    let al = parse_alphabet(alphabet)?;
    let rows = al.len().checked_pow(k.try_into().unwrap_or(u32::MAX));
    if rows.is_none_or(|n| n > TABLE_ROW_LIMIT) {
        return Err(CliError::Spec(format!(
            "a table over {} symbols with k={k} exceeds {TABLE_ROW_LIMIT} rows; lower --k",
            al.len()
        )));
    }
    let set = enumerate_patterns(k, &al)?;
    let patterns = set.patterns();
    let cells = Execution::default()
        .map(patterns, |row| {
            patterns
                .iter()
                .map(|col| {
                    if row == col {
                        Ok(None)
                    } else {
                        prob_a_first(row, col, &al).map(Some)
                    }
                })
                .collect::<Result<Vec<_>, Error>>()
        })
        .into_iter()
        .collect::<Result<Vec<_>, Error>>()?;

    if self_check {
        for (r, row) in patterns.iter().enumerate() {
            for (c, col) in patterns.iter().enumerate() {
                if r == c || classify(row, col) != Relation::Incomparable {
                    continue;
                }
                let (x, y) = (cells[r][c].as_ref().unwrap(), cells[c][r].as_ref().unwrap());
                check(x + y == integer(1), || {
                    format!("cells ({row}, {col}) and ({col}, {row}) sum to {}", x + y)
                })?;
            }
        }
    }

    let names: Vec<String> = patterns.iter().map(ToString::to_string).collect();
    let record = TableRecord {
        k,
        alphabet: alphabet_echo(&al),
        patterns: names.clone(),
        cells: cells
            .iter()
            .map(|row| row.iter().map(|c| c.as_ref().map(frac)).collect())
            .collect(),
    };
    let shown: Vec<Vec<String>> = cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.as_ref().map_or(String::new(), |v| render::cell(v, style)))
                .collect()
        })
        .collect();
    let text = render::grid_text(&names, &shown);
    let mut csv = vec![std::iter::once("row".to_string())
        .chain(names.iter().cloned())
        .collect()];
    for (name, row) in names.iter().zip(&shown) {
        csv.push(
            std::iter::once(name.clone())
                .chain(row.iter().cloned())
                .collect(),
        );
    }
    Ok(Outcome {
        envelope: Envelope::new(Body::Table(record)),
        text,
        csv,
    })
}

fn best_reply(
    a: &str,
    k: Option<usize>,
    alphabet: &str,
    style: Style,
    self_check: bool,
) -> Result<Outcome, CliError> {
    let (pa, al) = (pattern(a)?, parse_alphabet(alphabet)?);
    let k = k.unwrap_or(pa.len());
    let br = best_response(&pa, k, &al)?;
    let overlap = if k == pa.len() {
        match construct_overlap_response(&pa, &al) {
            Ok(reply) => {
                let p = prob_a_first(&reply, &pa, &al)?;
                Some((reply, p))
            }
            Err(Error::PatternTooShort { .. } | Error::NoValidCandidate) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    if self_check {
        let seq = best_response_with(&pa, k, &al, Execution::Sequential)?;
        check(seq == br, || {
            "sequential and parallel searches disagree".into()
        })?;
        for m in &br.all_maximizers {
            let p = prob_a_first(m, &pa, &al)?;
            check(p == br.responder_win_prob, || {
                format!("{m} wins with {p}, not {}", br.responder_win_prob)
            })?;
        }
        if let Some((reply, p)) = &overlap {
            check(*p <= br.responder_win_prob, || {
                format!("overlap reply {reply} beats the exhaustive search")
            })?;
        }
    }
    let record = BestResponseRecord {
        opponent: pa.to_string(),
        k,
        alphabet: alphabet_echo(&al),
        response: br.representative().to_string(),
        responder_win_prob: frac(&br.responder_win_prob),
        all_maximizers: br.all_maximizers.iter().map(ToString::to_string).collect(),
        overlap_rule: overlap.as_ref().map(|(reply, p)| OverlapRecord {
            response: reply.to_string(),
            win_prob: frac(p),
        }),
    };
    let text = render::best_response_text(&br, overlap.as_ref(), style);
    let csv = vec![
        vec![
            "opponent".into(),
            "k".into(),
            "response".into(),
            "responder_win_prob".into(),
            "all_maximizers".into(),
        ],
        vec![
            record.opponent.clone(),
            k.to_string(),
            record.response.clone(),
            render::cell(&br.responder_win_prob, style),
            record.all_maximizers.join(" "),
        ],
    ];
    Ok(Outcome {
        envelope: Envelope::new(Body::BestResponse(record)),
        text,
        csv,
    })
}

fn run_sweep(
    metric: MetricArg,
    k: usize,
    range: Option<(&str, &str, &str)>,
    symbols: &str,
    style: Style,
    self_check: bool,
) -> Result<Outcome, CliError> {
    let chars: Vec<char> = symbols.chars().collect();
    let template = match chars.as_slice() {
        [first, second] => BinaryTemplate {
            first: *first,
            second: *second,
        },
        _ => return Err(Error::NonBinaryTemplate(chars.len()).into()),
    };
    let (grid, from, to, step) = match range {
        Some((from, to, step)) => {
            let (from, to, step) = (
                parse_probability(from)?,
                parse_probability(to)?,
                parse_probability(step)?,
            );
            (
                Grid::range(from.clone(), to.clone(), step.clone())?,
                from,
                to,
                step,
            )
        }
        None => {
            let grid = metric.metric().default_grid();
            let p = grid.points();
            let (from, to, step) = (p[0].clone(), p[p.len() - 1].clone(), &p[1] - &p[0]);
            (grid, from, to, step)
        }
    };
    let (from, to, step) = (frac(&from), frac(&to), frac(&step));

    let result = sweep(metric.metric(), k, template, &grid)?;
    if self_check {
        for row in &result.rows {
            let al = template.at(row.param.clone())?;
            for (a, value) in result.patterns.iter().zip(&row.values) {
                let br = best_response(a, k, &al)?;
                let expect = match metric {
                    MetricArg::WorstCaseProb => integer(1) - &br.responder_win_prob,
                    MetricArg::WaitDifference => {
                        let mut race = Vec::new();
                        for m in &br.all_maximizers {
                            race.push(expected_duration(a, m, &al)?);
                        }
                        race.into_iter().min().expect("a best response exists")
                            - expected_waiting_time(a, &al)?
                    }
                };
                check(*value == expect, || {
                    format!("{a} at {}: {value} vs {expect}", row.param)
                })?;
            }
        }
    }

    let names: Vec<String> = result.patterns.iter().map(ToString::to_string).collect();
    let shown: Vec<Vec<String>> = result
        .rows
        .iter()
        .map(|r| {
            std::iter::once(render::cell(&r.param, style))
                .chain(r.values.iter().map(|v| render::cell(v, style)))
                .collect()
        })
        .collect();
    let header: Vec<String> = std::iter::once("param".to_string())
        .chain(names.iter().cloned())
        .collect();
    let text = render::columns_text(&header, &shown);
    let mut csv = vec![header];
    csv.extend(shown);
    let record = SweepRecord {
        metric: metric.name().into(),
        k,
        symbols: symbols.into(),
        from,
        to,
        step,
        patterns: names,
        rows: result
            .rows
            .iter()
            .map(|r| SweepRowRecord {
                param: frac(&r.param),
                values: r.values.iter().map(frac).collect(),
            })
            .collect(),
    };
    Ok(Outcome {
        envelope: Envelope::new(Body::Sweep(record)),
        text,
        csv,
    })
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    a: &str,
    b: &str,
    alphabet: &str,
    trials: u64,
    seed: u64,
    max_flips: u64,
    style: Style,
    self_check: bool,
) -> Result<Outcome, CliError> {
    let (pa, pb, al) = (pattern(a)?, pattern(b)?, parse_alphabet(alphabet)?);
    let mut config = SimConfig::new(pa.clone(), pb.clone(), al.clone(), trials, seed)?;
    config.max_flips_per_trial = max_flips;
    let stats = run_race(&config)?;
    let exact_p = prob_a_first(&pa, &pb, &al)?;
    let exact_e = expected_duration(&pa, &pb, &al)?;
    if self_check {
        let p = penney::rational::to_f64(&exact_p);
        let sigma = (p * (1.0 - p) / trials as f64).sqrt();
        let dev = (stats.winrate_a() - p).abs();
        check(dev <= 4.0 * sigma, || {
            format!(
                "win rate {} is {:.1} sigma from {p}",
                stats.winrate_a(),
                dev / sigma
            )
        })?;
        let e = penney::rational::to_f64(&exact_e);
        let se = stats.mean_flips_std_error();
        let dev = (stats.mean_flips() - e).abs();
        check(se == 0.0 && dev == 0.0 || dev <= 5.0 * se, || {
            format!(
                "mean flips {} is {:.1} standard errors from {e}",
                stats.mean_flips(),
                dev / se
            )
        })?;
    }
    let record = SimulateRecord {
        a: pa.to_string(),
        b: pb.to_string(),
        alphabet: alphabet_echo(&al),
        trials,
        seed,
        rng: RNG_ID.into(),
        max_flips_per_trial: max_flips,
        wins_a: stats.wins_a,
        wins_b: stats.wins_b,
        total_flips: stats.total_flips.to_string(),
        min_trial_flips: stats.min_trial_flips,
        max_trial_flips: stats.max_trial_flips,
        winrate_a: stats.winrate_a(),
        mean_flips: stats.mean_flips(),
        flips_std: stats.flips_std(),
        mean_flips_std_error: stats.mean_flips_std_error(),
        exact_prob_a_first: frac(&exact_p),
        exact_expected_flips: frac(&exact_e),
    };
    let text = render::simulate_text(&record, &al, &exact_p, &exact_e, style);
    let csv = vec![
        [
            "a",
            "b",
            "trials",
            "seed",
            "rng",
            "wins_a",
            "wins_b",
            "winrate_a",
            "mean_flips",
            "flips_std",
            "mean_flips_std_error",
            "exact_prob_a_first",
            "exact_expected_flips",
        ]
        .into_iter()
        .map(String::from)
        .collect(),
        vec![
            record.a.clone(),
            record.b.clone(),
            trials.to_string(),
            seed.to_string(),
            record.rng.clone(),
            stats.wins_a.to_string(),
            stats.wins_b.to_string(),
            record.winrate_a.to_string(),
            record.mean_flips.to_string(),
            record.flips_std.to_string(),
            record.mean_flips_std_error.to_string(),
            render::cell(&exact_p, style),
            render::cell(&exact_e, style),
        ],
    ];
    Ok(Outcome {
        envelope: Envelope::new(Body::Simulate(record)),
        text,
        csv,
    })
}
