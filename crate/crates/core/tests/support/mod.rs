// SPDX-License-Identifier: Apache-2.0

//! Test-only oracles, independent of the library's sieve and streams.

#![allow(dead_code)]

use num_bigint::BigUint;
use onecount::Basis;

/// Complexity of every `n <= limit` by exhaustive expression enumeration.
///
/// `reach[k]` is the set of values of all expressions with exactly `k` ones,
/// built from every top-level split `i + (k - i)`. Without subtraction no
/// subterm exceeds the final value, so sets are capped at `limit`; with
/// subtraction the sets are kept whole (they are finite for each `k`).
pub fn brute_force_complexities(limit: usize, basis: Basis) -> Vec<u8> {
    let minus = basis == Basis::PlusTimesMinus;
    let mut best = vec![0u8; limit + 1];
    let mut reach: Vec<Vec<u64>> = vec![Vec::new(), vec![1]];
    best[1] = 1;
    let mut missing = limit - 1;
    let mut k = 1;
    while missing > 0 {
        k += 1;
        let mut top = 0u64;
        for i in 1..k {
            let (a, b) = (&reach[i], &reach[k - i]);
            let (ma, mb) = (*a.last().unwrap(), *b.last().unwrap());
            top = top.max(ma * mb).max(ma + mb);
        }
        if !minus {
            top = top.min(limit as u64);
        }
        let mut hit = vec![false; top as usize + 1];
        for i in 1..=k / 2 {
            for &x in &reach[i] {
                for &y in &reach[k - i] {
                    for v in [Some(x + y), Some(x * y), (minus && x != y).then(|| x.abs_diff(y))]
                        .into_iter()
                        .flatten()
                    {
                        if v <= top {
                            hit[v as usize] = true;
                        }
                    }
                }
            }
        }
        let set: Vec<u64> = (1..=top).filter(|&v| hit[v as usize]).collect();
        for &v in &set {
            if (v as usize) <= limit && best[v as usize] == 0 {
                best[v as usize] = k as u8;
                missing -= 1;
            }
        }
        reach.push(set);
    }
    best
}

/// Base-q digits (little-endian) of `value` by repeated big-integer division.
pub fn big_digits(value: &BigUint, q: u32) -> Vec<u32> {
    let mut v = value.clone();
    let zero = BigUint::from(0u32);
    let base = BigUint::from(q);
    let mut out = Vec::new();
    while v > zero {
        let d = &v % &base;
        out.push(d.try_into().unwrap());
        v /= &base;
    }
    out
}

pub fn u64_digits(mut n: u64, q: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % q);
        n /= q;
    }
    out
}
