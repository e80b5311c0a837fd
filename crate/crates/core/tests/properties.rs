mod common;

use common::{markov_race, pat, patterns_up_to};
use num_traits::{One, Zero};
use penney::payoff::full_overlap_term;
use penney::rational::{integer, ratio, to_f64};
use penney::solver::{best_response_with, sweep_with};
use penney::{
    best_response, classify, construct_overlap_response, enumerate_patterns, expected_duration,
    leading_payoff, odds_against, prob_a_first, run_race, worst_case_win_prob, Alphabet,
    BinaryTemplate, Execution, Pattern, Rational, Relation, SimConfig, SweepMetric,
};
use proptest::prelude::*;

fn binary_alphabets() -> Vec<Alphabet> {
    [ratio(1, 2), ratio(3, 10)]
        .into_iter()
        .map(|p| Alphabet::binary('H', 'T', p).unwrap())
        .collect()
}

#[test]
fn complementarity_antisymmetry_and_bounds() {
    let patterns = patterns_up_to("HT", 5);
    for al in binary_alphabets() {
        for a in &patterns {
            for b in &patterns {
                if classify(a, b) != Relation::Incomparable {
                    continue;
                }
                let ab = odds_against(a, b, &al).unwrap();
                let ba = odds_against(b, a, &al).unwrap();
                assert_eq!(
                    &ab.prob_a_first + &ba.prob_a_first,
                    Rational::one(),
                    "{a} {b}"
                );
                assert_eq!(ab.against, ba.in_favor);
                assert_eq!(ab.in_favor, ba.against);
                assert!(ab.prob_a_first > Rational::zero() && ab.prob_a_first < Rational::one());

                let aa = leading_payoff(a, a, &al).unwrap().into_inner();
                let bb = leading_payoff(b, b, &al).unwrap().into_inner();
                let rab = leading_payoff(a, b, &al).unwrap().into_inner();
                let rba = leading_payoff(b, a, &al).unwrap().into_inner();
                assert!(aa + bb - rab - rba > Rational::zero(), "{a} {b}");
            }
        }
    }
}

#[test]
fn self_payoff_lower_bounds_and_solovev_case() {
    for al in binary_alphabets() {
        for a in patterns_up_to("HT", 5) {
            let raa = leading_payoff(&a, &a, &al).unwrap().into_inner();
            assert!(raa >= full_overlap_term(&a, &al).unwrap());
            assert_eq!(expected_duration(&a, &a, &al).unwrap(), raa);
            for b in patterns_up_to("HT", 3) {
                assert!(leading_payoff(&a, &b, &al).unwrap().into_inner() >= Rational::zero());
            }
        }
    }
}

#[test]
fn oracle_agrees_on_three_symbol_alphabet() {
    let al = Alphabet::new([('a', ratio(1, 2)), ('b', ratio(1, 3)), ('c', ratio(1, 6))]).unwrap();
    let patterns = patterns_up_to("abc", 3);
    for a in &patterns {
        for b in &patterns {
            if classify(a, b) != Relation::Incomparable {
                continue;
            }
            let (p, e) = markov_race(a, b, &al);
            assert_eq!(prob_a_first(a, b, &al).unwrap(), p, "{a} {b}");
            assert_eq!(expected_duration(a, b, &al).unwrap(), e, "{a} {b}");
        }
    }
}

#[test]
fn best_response_is_exhaustive_exact() {
    let fair = Alphabet::fair_coin();
    for k in 1..=4 {
        for opp in &enumerate_patterns(k, &fair).unwrap() {
            let br = best_response(opp, k, &fair).unwrap();
            // independent reverse-order scan
            let mut best: Option<Rational> = None;
            let candidates = enumerate_patterns(k, &fair).unwrap();
            for b in candidates.patterns().iter().rev() {
                if b == opp {
                    continue;
                }
                let p = prob_a_first(b, opp, &fair).unwrap();
                if best.as_ref().is_none_or(|x| p > *x) {
                    best = Some(p);
                }
            }
            assert_eq!(Some(br.responder_win_prob.clone()), best);
            for m in &br.all_maximizers {
                assert_eq!(prob_a_first(m, opp, &fair).unwrap(), br.responder_win_prob);
            }
            let seq = best_response_with(opp, k, &fair, Execution::Sequential).unwrap();
            assert_eq!(seq, br);
        }
    }
}

#[test]
fn overlap_rule_is_optimal_for_three_flips() {
    let fair = Alphabet::fair_coin();
    for opp in &enumerate_patterns(3, &fair).unwrap() {
        let reply = construct_overlap_response(opp, &fair).unwrap();
        let best = best_response(opp, 3, &fair).unwrap();
        assert_eq!(
            prob_a_first(&reply, opp, &fair).unwrap(),
            best.responder_win_prob,
            "{opp}"
        );
        assert_eq!(
            worst_case_win_prob(opp, 3, &fair).unwrap() + best.responder_win_prob,
            Rational::one()
        );
        assert!(worst_case_win_prob(opp, 3, &fair).unwrap() < ratio(1, 2));
    }
}

#[test]
fn worst_case_equals_direct_minimum() {
    for al in binary_alphabets() {
        let set = enumerate_patterns(3, &al).unwrap();
        for a in &set {
            let direct = set
                .iter()
                .filter(|b| *b != a)
                .map(|b| prob_a_first(a, b, &al).unwrap())
                .min()
                .unwrap();
            assert_eq!(worst_case_win_prob(a, 3, &al).unwrap(), direct);
        }
    }
}

fn max_adjacent_jump(metric: SweepMetric) -> f64 {
    let s = sweep_with(
        metric,
        3,
        BinaryTemplate::default(),
        &metric.default_grid(),
        Execution::default(),
    )
    .unwrap();
    s.rows
        .windows(2)
        .flat_map(|w| {
            w[0].values
                .iter()
                .zip(&w[1].values)
                .map(|(x, y)| to_f64(&(x - y)).abs())
                .collect::<Vec<_>>()
        })
        .fold(0.0, f64::max)
}

#[test]
fn worst_case_sweep_is_continuous() {
    assert!(max_adjacent_jump(SweepMetric::WorstCaseProb) < 0.2);
}

#[test]
fn wait_difference_sweep_is_continuous() {
    // values are in flips and reach about -36 at the grid edge, where the
    // slope is about 1.3 flips per 0.001 step
    assert!(max_adjacent_jump(SweepMetric::WaitDifference) < 2.0);
}

#[test]
fn wait_difference_is_nonpositive_for_hth_at_fair_coin() {
    let grid = penney::Grid::new(vec![ratio(1, 2)]).unwrap();
    let s = penney::sweep(
        SweepMetric::WaitDifference,
        3,
        BinaryTemplate::default(),
        &grid,
    )
    .unwrap();
    let i = s.patterns.iter().position(|p| p == &pat("HTH")).unwrap();
    // HHT answers HTH; the race lasts 6 flips against 10 alone
    assert_eq!(s.rows[0].values[i], integer(6) - integer(10));
    assert!(s.rows[0].values.iter().all(|v| *v <= Rational::zero()));
}

fn alphabet_strategy() -> impl Strategy<Value = Alphabet> {
    (1u32..20, 1u32..20, 1u32..20).prop_map(|(x, y, z)| {
        let total = (x + y + z) as i64;
        Alphabet::new([
            ('a', ratio(x as i64, total)),
            ('b', ratio(y as i64, total)),
            ('c', ratio(z as i64, total)),
        ])
        .unwrap()
    })
}

fn pattern_strategy() -> impl Strategy<Value = Pattern> {
    "[abc]{1,5}".prop_map(|s| s.parse().unwrap())
}

fn rename(p: &Pattern, map: &[(char, char)]) -> Pattern {
    Pattern::new(
        p.chars()
            .iter()
            .map(|c| map.iter().find(|(from, _)| from == c).unwrap().1)
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_pairs_match_oracle(al in alphabet_strategy(), a in pattern_strategy(), b in pattern_strategy()) {
        prop_assume!(classify(&a, &b) == Relation::Incomparable);
        let (p, e) = markov_race(&a, &b, &al);
        prop_assert_eq!(prob_a_first(&a, &b, &al).unwrap(), p);
        prop_assert_eq!(expected_duration(&a, &b, &al).unwrap(), e);
    }

    #[test]
    fn renaming_symbols_changes_nothing(al in alphabet_strategy(), a in pattern_strategy(), b in pattern_strategy()) {
        let map = [('a', 'x'), ('b', 'y'), ('c', 'z')];
        let renamed = Alphabet::new(
            al.entries().iter().map(|(c, p)| (map.iter().find(|(f, _)| f == c).unwrap().1, p.clone())),
        ).unwrap();
        let (ra, rb) = (rename(&a, &map), rename(&b, &map));
        prop_assert_eq!(
            leading_payoff(&a, &b, &al).unwrap(),
            leading_payoff(&ra, &rb, &renamed).unwrap()
        );
        prop_assert_eq!(
            expected_duration(&a, &b, &al).unwrap(),
            expected_duration(&ra, &rb, &renamed).unwrap()
        );
        if a != b {
            prop_assert_eq!(odds_against(&a, &b, &al).unwrap().prob_a_first,
                odds_against(&ra, &rb, &renamed).unwrap().prob_a_first);
        }
    }

    #[test]
    fn simulation_is_deterministic(seed in any::<u64>(), a in "[HT]{2,4}", b in "[HT]{2,4}") {
        let (a, b) = (pat(&a), pat(&b));
        prop_assume!(classify(&a, &b) == Relation::Incomparable);
        let cfg = SimConfig::new(a.clone(), b.clone(), Alphabet::fair_coin(), 200, seed).unwrap();
        let x = run_race(&cfg).unwrap();
        prop_assert_eq!(&x, &run_race(&cfg).unwrap());
        prop_assert_eq!(x.wins_a + x.wins_b, 200);
        prop_assert!(x.min_trial_flips as usize >= a.len().min(b.len()));
    }
}
