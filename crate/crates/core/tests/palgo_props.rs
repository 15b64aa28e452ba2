// SPDX-License-Identifier: Apache-2.0

use std::sync::OnceLock;

use onecount::palgo::{
    check_upper_bound, defect_monotonicity, divisor_choice_counterexamples, low_spectrum_scan,
    p_complexity, p_complexity_counts, PSet,
};
use onecount::{build_table, Basis, ComplexityTable};
use proptest::prelude::*;

fn table() -> &'static ComplexityTable {
    static T: OnceLock<ComplexityTable> = OnceLock::new();
    T.get_or_init(|| build_table(200_000, Basis::PlusTimes).unwrap())
}

const SETS: &[&[u64]] = &[&[2], &[3], &[5], &[2, 3], &[3, 5], &[5, 11], &[2, 5, 7], &[7, 13, 17]];

/// Straight recursive reading of the four steps, any dividing member.
fn oracle(primes: &[u64], ones: &dyn Fn(u64) -> u64, n: u64) -> u64 {
    if n == 1 {
        1
    } else if primes.contains(&n) {
        ones(n)
    } else if let Some(&p) = primes.iter().rev().find(|&&p| n % p == 0) {
        ones(p) + oracle(primes, ones, n / p)
    } else {
        1 + oracle(primes, ones, n - 1)
    }
}

#[test]
fn counts_match_recursive_oracle() {
    let t = table();
    let ones = |p: u64| t.complexity(p).unwrap() as u64;
    for primes in SETS {
        let ps = PSet::new(primes, t).unwrap();
        let counts = p_complexity_counts(&ps, 20_000);
        for n in 1..=20_000u64 {
            assert_eq!(counts[n as usize], oracle(primes, &ones, n), "{primes:?} n={n}");
        }
    }
}

#[test]
fn expressions_are_sound_and_dominate_the_table() {
    let t = table();
    for primes in SETS {
        let ps = PSet::new(primes, t).unwrap();
        for n in (1..=200_000u64).step_by(7) {
            let (ones, e) = p_complexity(&ps, n).unwrap();
            assert!(e.validate(Basis::PlusTimes));
            assert_eq!(e.evaluate(), Ok(n));
            assert_eq!(e.count_ones(), ones);
            assert!(t.complexity(n).unwrap() as u64 <= ones, "{primes:?} n={n}");
        }
    }
}

#[test]
fn log_complexity_is_at_least_three() {
    let t = table();
    for primes in SETS {
        let ps = PSet::new(primes, t).unwrap();
        let counts = p_complexity_counts(&ps, 100_000);
        for n in 2..=100_000u64 {
            let v = counts[n as usize] as f64 / (n as f64).log(3.0);
            assert!(v >= 3.0 - 1e-12, "{primes:?} n={n}");
        }
        if primes.contains(&3) {
            assert_eq!(counts[3], 3);
        }
    }
}

#[test]
fn divisor_choice_never_matters() {
    let t = table();
    for primes in SETS {
        let ps = PSet::new(primes, t).unwrap();
        assert_eq!(divisor_choice_counterexamples(&ps, 100_000), Vec::<u64>::new(), "{primes:?}");
    }
}

#[test]
fn hypothesis_bound_holds_for_small_q() {
    let t = table();
    for primes in [&[2u64][..], &[3, 5], &[5, 11], &[2, 5, 7]] {
        let ps = PSet::new(primes, t).unwrap();
        let r = check_upper_bound(&ps, 2, 100_000);
        assert_eq!(r.checked, 99_999);
        assert_eq!(r.hypothesis_violations, 0, "{primes:?}: {:?}", r.examples);
        assert_eq!(r.theorem_violations, 0);
        assert!(r.max_log_complexity <= r.hypothesis_bound);
    }
}

#[test]
fn defect_never_drops_along_runs() {
    let t = table();
    for primes in SETS {
        let ps = PSet::new(primes, t).unwrap();
        let r = defect_monotonicity(&ps, 100_000);
        assert!(r.divide_steps > 0);
        assert!(r.divide_decreases.is_empty(), "{primes:?}: {:?}", &r.divide_decreases[..5.min(r.divide_decreases.len())]);
        assert!(r.increment_decreases.is_empty(), "{primes:?}");
    }
}

#[test]
fn low_spectrum_counts_stabilise() {
    for primes in [&[2u64][..], &[2, 5], &[5, 11], &[7, 13], &[3, 5]] {
        let ps = PSet::new(primes, table()).unwrap();
        let r = low_spectrum_scan(&ps, 1_000_000, 0.1);
        assert_eq!(r.by_decade.len(), 6);
        let tail: Vec<u64> = r.by_decade[2..].iter().map(|d| d.1).collect();
        assert!(tail.iter().all(|&c| c == r.count), "{primes:?}: {:?}", r.by_decade);
    }
}

#[test]
fn small_eps_hits_beyond_a_thousand_are_three_times_powers_of_two() {
    // (2k+3)/(1 + k log_3 2) stays below 2/log_3 2 - 0.01 up to k = 25
    let ps = PSet::new(&[2], table()).unwrap();
    let r = low_spectrum_scan(&ps, 1_000_000, 0.01);
    let big: Vec<u64> = r.hits.iter().copied().filter(|&n| n > 1000).collect();
    let expect: Vec<u64> = (0..).map(|k| 3u64 << k).skip_while(|&n| n <= 1000).take_while(|&n| n <= 1_000_000).collect();
    assert_eq!(big, expect);
    let l2 = 2f64.ln() / 3f64.ln();
    let below = |k: f64| (2.0 * k + 3.0) / (1.0 + k * l2) < 2.0 / l2 - 0.01;
    assert!(below(25.0) && !below(26.0));
}

proptest! {
    #[test]
    fn traces_match_oracle_for_random_inputs(n in 1u64..200_000, pick in 0usize..SETS.len()) {
        let t = table();
        let primes = SETS[pick];
        let ps = PSet::new(primes, t).unwrap();
        let ones = |p: u64| t.complexity(p).unwrap() as u64;
        prop_assert_eq!(p_complexity(&ps, n).unwrap().0, oracle(primes, &ones, n));
    }
}
