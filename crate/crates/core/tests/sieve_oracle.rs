// SPDX-License-Identifier: Apache-2.0

mod support;

use onecount::{build_table, selfridge_e, Basis};
use proptest::prelude::*;
use support::brute_force_complexities;

#[test]
fn oracle_reproduces_known_small_values() {
    // exhaustive enumeration up to five ones already pins the first values
    let plus = brute_force_complexities(6, Basis::PlusTimes);
    assert_eq!(&plus[1..], &[1, 2, 3, 4, 5, 5]);
    let minus = brute_force_complexities(23, Basis::PlusTimesMinus);
    assert_eq!(minus[23], 10);
    assert_eq!(brute_force_complexities(23, Basis::PlusTimes)[23], 11);
}

#[test]
fn sieve_matches_oracle_on_small_limits() {
    // small limits stress the extension above the limit
    for limit in [1usize, 2, 5, 17, 23, 24, 100, 250] {
        for basis in [Basis::PlusTimes, Basis::PlusTimesMinus] {
            let oracle = brute_force_complexities(limit, basis);
            let table = build_table(limit as u64, basis).unwrap();
            assert_eq!(&table.values()[1..], &oracle[1..], "{basis} limit {limit}");
        }
    }
}

#[test]
fn table_invariants_hold_to_two_hundred_thousand() {
    let limit = 200_000u64;
    let plus = build_table(limit, Basis::PlusTimes).unwrap();
    let minus = build_table(limit, Basis::PlusTimesMinus).unwrap();
    let lg3 = |n: f64| n.ln() / 3f64.ln();
    for n in 1..=limit {
        let (p, m) = (plus.complexity(n).unwrap(), minus.complexity(n).unwrap());
        assert!(m <= p, "dominance at {n}");
        if n > 1 {
            let nf = n as f64;
            let power_of_three = { let mut x = n; while x % 3 == 0 { x /= 3; } x == 1 };
            for (basis, v) in [("plus", p), ("minus", m)] {
                let lower = 3.0 * lg3(nf);
                if power_of_three {
                    assert!((v as f64 - lower).abs() < 1e-9, "{basis} {n}");
                } else {
                    assert!(v as f64 > lower + 1e-9, "{basis} {n}");
                }
            }
            assert!((m as f64) <= 6.0 * nf.ln() / 6f64.ln() + 5.890, "upper bound at {n}");
        }
    }
    for k in 1..=33u8 {
        let e = selfridge_e(k) as u64;
        if e > limit { break; }
        assert_eq!(plus.e_kth(k, 1).unwrap(), e);
        assert_eq!(minus.e_kth(k, 1).unwrap(), e);
        if k >= 8 {
            assert_eq!(minus.e_kth(k, 2).unwrap() * 9, e * 8, "k = {k}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn any_small_limit_agrees_with_oracle(limit in 1usize..400, minus in any::<bool>()) {
        let basis = if minus { Basis::PlusTimesMinus } else { Basis::PlusTimes };
        let oracle = brute_force_complexities(limit, basis);
        let table = build_table(limit as u64, basis).unwrap();
        prop_assert_eq!(&table.values()[1..], &oracle[1..]);
    }
}
