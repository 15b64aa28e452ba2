// SPDX-License-Identifier: Apache-2.0

mod support;

use num_bigint::BigUint;
use onecount::powerdigits::{
    digit_bound_check, digit_sum_series, horner_expression, power_limit_check, s3_stat,
    sigma_stat, PowerDigitStream,
};
use onecount::{build_table, Basis};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

#[test]
fn stream_matches_bignum_conversion() {
    for (p, q) in [(2, 3), (2, 10), (3, 2), (5, 7), (7, 3), (13, 256), (2, 65_537), (101, 3)] {
        let mut s = PowerDigitStream::new(p, q).unwrap();
        for n in 1..=40u32 {
            s.advance().unwrap();
            let want = support::big_digits(&BigUint::from(p).pow(n), q as u32);
            let got: Vec<u32> = s.digits().iter().map(|&d| d as u32).collect();
            assert_eq!(got, want, "p={p} q={q} n={n}");
            assert_eq!(s.digit_sum(), want.iter().map(|&d| d as u64).sum::<u64>());
            assert_eq!(s.digit_count(), want.len());
        }
    }
}

#[test]
fn base3_digit_sums_of_two_powers() {
    let rows: Vec<_> = digit_sum_series(2, 3, 10_000).unwrap().map(Result::unwrap).collect();
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let n = rng.gen_range(1..=10_000u32);
        let want: u64 = support::big_digits(&(BigUint::from(1u32) << n), 3)
            .iter()
            .map(|&d| d as u64)
            .sum();
        assert_eq!(rows[n as usize - 1].s, want, "n={n}");
    }
    let min_ratio = rows.iter().map(|r| r.s as f64 / r.n as f64).fold(f64::INFINITY, f64::min);
    assert!(min_ratio > 0.107, "{min_ratio}");
}

#[test]
fn stored_statistics_recompute_exactly() {
    for (p, q) in [(2, 3), (3, 2), (5, 7)] {
        for row in digit_sum_series(p, q, 500).unwrap().map(Result::unwrap) {
            if let Some(s3) = row.s3 {
                let again = s3_stat(row.n, row.s);
                assert!((s3 - again).abs() <= 1e-12 * again.abs().max(1.0));
                let l = 2f64.ln() / 3f64.ln();
                let direct = (row.s as f64 - row.n as f64 * l) / (row.n as f64 * 2.0 / 3.0 * l).sqrt();
                assert!((s3 - direct).abs() <= 1e-12 * direct.abs().max(1.0));
            }
            assert_eq!(row.sigma, sigma_stat(p, q, row.n, row.s));
        }
    }
}

#[test]
fn prime_power_bounds_over_a_million() {
    let t = build_table(1_000_000, Basis::PlusTimes).unwrap();
    for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        for q in [2, 3, 5, 10] {
            let r = digit_bound_check(p, q, 0.01, &t).unwrap();
            assert!(r.horner_failures.is_empty(), "p={p} q={q}: {:?}", r.horner_failures);
            assert!(r.digit_sum_failures.is_empty(), "p={p} q={q}: {:?}", r.digit_sum_failures);
        }
    }
    for k in 2..=30 {
        assert!(power_limit_check(k, &t).unwrap().violations.is_empty(), "k={k}");
    }
}

fn digit_sum(mut n: u64, q: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % q;
        n /= q;
    }
    s
}

proptest! {
    #[test]
    fn horner_bound(n in 1u64..=1_000_000, q in prop::sample::select(vec![2u64, 3, 5, 7, 10])) {
        let e = horner_expression(n, q);
        prop_assert_eq!(e.evaluate(), Ok(n));
        prop_assert!(e.validate(Basis::PlusTimes));
        let m = n.ilog(q) as u64;
        prop_assert!(e.count_ones() <= m * q + digit_sum(n, q));
    }
}
