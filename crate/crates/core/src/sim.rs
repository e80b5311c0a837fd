//! Seedable Monte Carlo simulation of a two-pattern race.
//!
//! Each trial draws i.i.d. symbols until the trailing window spells `a` or
//! `b`. Trial `i` uses its own ChaCha8 stream `i` under the run seed, so
//! results are bit-identical regardless of thread count or scheduling.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::pattern::{classify, Pattern, Relation};

/// Identifier of the generator and seeding scheme, echoed in outputs.
pub const RNG_ID: &str = "chacha8/stream-per-trial/v1";

pub const DEFAULT_MAX_FLIPS_PER_TRIAL: u64 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimConfig {
    pub a: Pattern,
    pub b: Pattern,
    pub alphabet: Alphabet,
    pub trials: u64,
    pub seed: u64,
    pub max_flips_per_trial: u64,
}

impl SimConfig {
    pub fn new(a: Pattern, b: Pattern, alphabet: Alphabet, trials: u64, seed: u64) -> Result<Self> {
        let config = SimConfig {
            a,
            b,
            alphabet,
            trials,
            seed,
            max_flips_per_trial: DEFAULT_MAX_FLIPS_PER_TRIAL,
        };
        config.check()?;
        Ok(config)
    }

    fn check(&self) -> Result<()> {
        self.alphabet.validate_drawable(&self.a)?;
        self.alphabet.validate_drawable(&self.b)?;
        match classify(&self.a, &self.b) {
            Relation::Equal => return Err(Error::EqualPatterns),
            Relation::AStrictSubstringOfB => {
                return Err(Error::SubstringPair {
                    inner: self.a.to_string(),
                    outer: self.b.to_string(),
                })
            }
            Relation::BStrictSubstringOfA => {
                return Err(Error::SubstringPair {
                    inner: self.b.to_string(),
                    outer: self.a.to_string(),
                })
            }
            Relation::Incomparable => {}
        }
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaceStats {
    pub trials: u64,
    pub wins_a: u64,
    pub wins_b: u64,
    /// Draws summed over all trials, each trial counting its final draw.
    pub total_flips: u128,
    pub total_flips_squared: u128,
    pub min_trial_flips: u64,
    pub max_trial_flips: u64,
}

impl RaceStats {
    pub fn winrate_a(&self) -> f64 {
        self.wins_a as f64 / self.trials as f64
    }

    pub fn winrate_b(&self) -> f64 {
        self.wins_b as f64 / self.trials as f64
    }

    pub fn mean_flips(&self) -> f64 {
        self.total_flips as f64 / self.trials as f64
    }

    /// Sample standard deviation of per-trial lengths (zero for one trial).
    pub fn flips_std(&self) -> f64 {
        if self.trials < 2 {
            return 0.0;
        }
        let n = self.trials as f64;
        let mean = self.mean_flips();
        let var = (self.total_flips_squared as f64 - n * mean * mean) / (n - 1.0);
        var.max(0.0).sqrt()
    }

    /// Standard error of [`RaceStats::mean_flips`].
    pub fn mean_flips_std_error(&self) -> f64 {
        self.flips_std() / (self.trials as f64).sqrt()
    }

    fn single(a_won: bool, flips: u64) -> Self {
        RaceStats {
            trials: 1,
            wins_a: a_won as u64,
            wins_b: !a_won as u64,
            total_flips: flips as u128,
            total_flips_squared: (flips as u128) * (flips as u128),
            min_trial_flips: flips,
            max_trial_flips: flips,
        }
    }

    fn empty() -> Self {
        RaceStats {
            trials: 0,
            wins_a: 0,
            wins_b: 0,
            total_flips: 0,
            total_flips_squared: 0,
            min_trial_flips: u64::MAX,
            max_trial_flips: 0,
        }
    }

    fn merge(self, other: Self) -> Self {
        RaceStats {
            trials: self.trials + other.trials,
            wins_a: self.wins_a + other.wins_a,
            wins_b: self.wins_b + other.wins_b,
            total_flips: self.total_flips + other.total_flips,
            total_flips_squared: self.total_flips_squared + other.total_flips_squared,
            min_trial_flips: self.min_trial_flips.min(other.min_trial_flips),
            max_trial_flips: self.max_trial_flips.max(other.max_trial_flips),
        }
    }
}

/// Inverse-CDF sampler over the alphabet's declaration order. Cut points are
/// `ceil(F_i * 2^64)` computed exactly, so a 64-bit draw `u` selects symbol
/// `i` iff `u / 2^64 < F_i` and no `u` below an earlier cut point.
#[derive(Debug, Clone)]
struct Sampler {
    cuts: Vec<u128>,
}

impl Sampler {
    fn new(alphabet: &Alphabet) -> Self {
        let two64 = BigInt::from(1u128 << 64);
        let mut cum = crate::Rational::from_integer(BigInt::from(0));
        let cuts = alphabet
            .entries()
            .iter()
            .map(|(_, p)| {
                cum += p;
                let scaled = cum.numer() * &two64;
                let (q, r) = scaled.div_rem(cum.denom());
                let ceil = if r == BigInt::from(0) { q } else { q + 1 };
                ceil.to_u128().expect("cut point fits in 65 bits")
            })
            .collect();
        Sampler { cuts }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> usize {
        let u = rng.next_u64() as u128;
        self.cuts
            .iter()
            .position(|&cut| u < cut)
            .expect("last cut point is 2^64")
    }
}

pub fn run_race(config: &SimConfig) -> Result<RaceStats> {
    run_race_with(config, Execution::default())
}

pub fn run_race_with(config: &SimConfig, exec: Execution) -> Result<RaceStats> {
    config.check()?;
    let sampler = Sampler::new(&config.alphabet);
    let encode = |p: &Pattern| -> Vec<usize> {
        p.chars()
            .iter()
            .map(|c| config.alphabet.index_of(*c).expect("validated"))
            .collect()
    };
    let a = encode(&config.a);
    let b = encode(&config.b);

    exec.map_reduce(
        config.trials,
        Ok(RaceStats::empty()),
        |trial| {
            play_trial(
                &sampler,
                &a,
                &b,
                config.seed,
                trial,
                config.max_flips_per_trial,
            )
            .map(|(a_won, flips)| RaceStats::single(a_won, flips))
        },
        |x, y| match (x, y) {
            (Ok(x), Ok(y)) => Ok(x.merge(y)),
            (Err(e), Ok(_)) | (Ok(_), Err(e)) => Err(e),
            (Err(e1), Err(e2)) => Err(earliest_overrun(e1, e2)),
        },
    )
}

fn earliest_overrun(e1: Error, e2: Error) -> Error {
    match (&e1, &e2) {
        (Error::TrialOverrun { trial: t1, .. }, Error::TrialOverrun { trial: t2, .. })
            if t2 < t1 =>
        {
            e2
        }
        _ => e1,
    }
}

/// Plays one race; returns whether `a` won and how many symbols were drawn.
fn play_trial(
    sampler: &Sampler,
    a: &[usize],
    b: &[usize],
    seed: u64,
    trial: u64,
    cap: u64,
) -> Result<(bool, u64)> {
    const SENTINEL: usize = usize::MAX;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);

    let width = a.len().max(b.len());
    let mut window: VecDeque<usize> = std::iter::repeat_n(SENTINEL, width).collect();
    let mut flips = 0u64;
    while flips < cap {
        let symbol = sampler.draw(&mut rng);
        debug_assert!(symbol < sampler.cuts.len());
        window.pop_front();
        window.push_back(symbol);
        flips += 1;
        if window.range(width - a.len()..).eq(a.iter()) {
            return Ok((true, flips));
        }
        if window.range(width - b.len()..).eq(b.iter()) {
            return Ok((false, flips));
        }
    }
    Err(Error::TrialOverrun { trial, cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    #[test]
    fn config_validation() {
        let fair = Alphabet::fair_coin();
        assert_eq!(
            SimConfig::new(p("HTH"), p("HTH"), fair.clone(), 10, 0),
            Err(Error::EqualPatterns)
        );
        assert!(matches!(
            SimConfig::new(p("TH"), p("HTH"), fair.clone(), 10, 0),
            Err(Error::SubstringPair { .. })
        ));
        assert!(matches!(
            SimConfig::new(p("HTH"), p("TH"), fair.clone(), 10, 0),
            Err(Error::SubstringPair { .. })
        ));
        assert_eq!(
            SimConfig::new(p("HT"), p("TT"), fair, 0, 0),
            Err(Error::NoTrials)
        );
        let skew = Alphabet::new([('H', ratio(1, 1)), ('T', ratio(0, 1))]).unwrap();
        assert_eq!(
            SimConfig::new(p("HT"), p("HH"), skew, 1, 0),
            Err(Error::ZeroProbabilityCharacter('T'))
        );
    }

    #[test]
    fn single_flip_race() {
        let cfg = SimConfig::new(p("H"), p("T"), Alphabet::fair_coin(), 500, 42).unwrap();
        let s = run_race(&cfg).unwrap();
        assert_eq!(s.wins_a + s.wins_b, 500);
        assert_eq!(s.total_flips, 500);
        assert_eq!((s.min_trial_flips, s.max_trial_flips), (1, 1));
        assert!((s.winrate_a() + s.winrate_b() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_and_mode_independent() {
        let cfg = SimConfig::new(p("HTH"), p("TTH"), Alphabet::fair_coin(), 2000, 7).unwrap();
        let x = run_race_with(&cfg, Execution::Sequential).unwrap();
        let y = run_race_with(&cfg, Execution::Parallel).unwrap();
        let z = run_race(&cfg).unwrap();
        assert_eq!(x, y);
        assert_eq!(y, z);
        let other = SimConfig { seed: 8, ..cfg };
        assert_ne!(run_race(&other).unwrap(), x);
    }

    #[test]
    fn no_win_before_pattern_length() {
        let cfg = SimConfig::new(p("HHHH"), p("TTTT"), Alphabet::fair_coin(), 300, 1).unwrap();
        let s = run_race(&cfg).unwrap();
        assert!(s.min_trial_flips >= 4);
    }

    #[test]
    fn overrun_is_reported() {
        let mut cfg = SimConfig::new(
            p("HHHHHHHHHH"),
            p("TTTTTTTTTT"),
            Alphabet::fair_coin(),
            4,
            3,
        )
        .unwrap();
        cfg.max_flips_per_trial = 5;
        assert_eq!(
            run_race(&cfg),
            Err(Error::TrialOverrun { trial: 0, cap: 5 })
        );
    }

    #[test]
    fn sampler_cut_points() {
        let al =
            Alphabet::new([('a', ratio(1, 2)), ('b', ratio(1, 4)), ('c', ratio(1, 4))]).unwrap();
        let s = Sampler::new(&al);
        assert_eq!(s.cuts, vec![1u128 << 63, 3u128 << 62, 1u128 << 64]);
        let third = Sampler::new(&Alphabet::uniform("xyz").unwrap());
        // ceil(2^64 / 3)
        assert_eq!(third.cuts[0], (1u128 << 64) / 3 + 1);
    }

    #[test]
    fn zero_probability_symbols_never_drawn() {
        let al =
            Alphabet::new([('H', ratio(1, 2)), ('X', ratio(0, 1)), ('T', ratio(1, 2))]).unwrap();
        let s = Sampler::new(&al);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert!((0..10_000).all(|_| s.draw(&mut rng) != 1));
    }
}
