// SPDX-License-Identifier: Apache-2.0

//! Rank sieve: numbers are assigned complexity `k = 1, 2, ...` in order, each
//! rank combining the already finished classes `j` and `k - j` through
//! products, sums and (in the minus basis) differences.
//!
//! Two facts bound the search. A number with complexity `j` never exceeds
//! `E(j)` (the Selfridge maximum), equivalently `3^j >= m^3`. Hence for any
//! split `n = A op B` with `|A| + |B| = k` we have `A * B <= 3^(k/3)`, which
//! caps the small operand of sums and the subtrahend of differences.
//!
//! Differences reach above `limit`: a minuend `A = n + B` can exceed it. The
//! sieve therefore runs over an extended range whose size is chosen so that
//! every class is exact wherever a later rank reads it (see [`horizons`]).

use rayon::prelude::*;

use super::{selfridge_e, TableError};
use crate::expr::Basis;

/// Upper bound on the minus-basis complexity of any `n <= limit`
/// (`6 log_6 n + 5.890`), plus one rank of slack.
pub(crate) fn minus_rank_bound(limit: u64) -> u8 {
    let bound = 6.0 * (limit.max(1) as f64).ln() / 6f64.ln() + 5.890;
    (bound.floor() as u64 + 1).min(255) as u8
}

/// `T[a]` for ranks `1..=kmax`: rank `a` must decide membership exactly for
/// every `m <= T[a]`.
///
/// A difference `n = A - B` decided at rank `k` for `n <= T[k]` reads class
/// `a = |A|` at `A <= min(E(a), T[k] + E(k - a))`, so
/// `T[a] = min(E(a), max(limit, max_{k > a} T[k] + E(k - a)))`.
/// Sums and products read only values below `n`, which this also covers.
pub(crate) fn horizons(limit: u64, kmax: u8) -> Vec<u128> {
    let kmax = kmax as usize;
    let mut t = vec![0u128; kmax + 1];
    for a in (1..=kmax).rev() {
        let mut need = limit as u128;
        for k in a + 1..=kmax {
            need = need.max(t[k].saturating_add(selfridge_e((k - a) as u8)));
        }
        t[a] = selfridge_e(a as u8).min(need);
    }
    t
}

/// Size of the range the sieve has to cover for a table up to `limit`.
pub(crate) fn extended_limit(limit: u64, basis: Basis) -> u128 {
    match basis {
        Basis::PlusTimes => limit as u128,
        Basis::PlusTimesMinus => horizons(limit, minus_rank_bound(limit))
            .into_iter()
            .max()
            .unwrap_or(0)
            .max(limit as u128),
    }
}

/// `3^(k/3)` with a hair of slack so float rounding never prunes a valid split.
fn pair_product_bound(k: u8) -> f64 {
    3f64.powf(k as f64 / 3.0) * (1.0 + 1e-9)
}

#[inline]
fn completes(values: &[u8], x: usize, y: usize, k: u8) -> bool {
    let (a, b) = (values[x], values[y]);
    a != 0 && b != 0 && a < k && b < k && a + b == k
}

fn has_sum_split(values: &[u8], n: usize, k: u8, bound: f64) -> bool {
    let mut s = 1;
    while s <= n / 2 {
        if (s as f64) * ((n - s) as f64) > bound {
            return false;
        }
        if completes(values, s, n - s, k) {
            return true;
        }
        s += 1;
    }
    false
}

fn has_difference_split(values: &[u8], n: usize, k: u8, bound: f64) -> bool {
    let top = values.len() - 1;
    let mut b = 1;
    while n + b <= top {
        if (b as f64) * ((n + b) as f64) > bound {
            return false;
        }
        if completes(values, n + b, b, k) {
            return true;
        }
        b += 1;
    }
    false
}

/// Runs the rank sieve and returns `values[0..=limit]` (index 0 unused).
pub(crate) fn rank_sieve(limit: u64, basis: Basis) -> Result<Vec<u8>, TableError> {
    let ext = extended_limit(limit, basis);
    if ext >= u32::MAX as u128 {
        return Err(TableError::LimitTooLarge(limit));
    }
    let ext = ext as usize;
    let limit = limit as usize;

    let mut values: Vec<u8> = Vec::new();
    values
        .try_reserve_exact(ext + 1)
        .map_err(|_| TableError::Resource(format!("cannot allocate {} table bytes", ext + 1)))?;
    values.resize(ext + 1, 0);
    values[1] = 1;

    // classes[j] = sorted numbers <= ext assigned rank j
    let mut classes: Vec<Vec<u32>> = vec![Vec::new(), vec![1]];
    let mut pending: Vec<u32> = (2..=ext as u32).collect();

    let rank_bound = match basis {
        Basis::PlusTimes => u8::MAX,
        Basis::PlusTimesMinus => minus_rank_bound(limit as u64),
    };
    let mut k: u8 = 1;
    while pending.first().is_some_and(|&n| n as usize <= limit) {
        k = k.checked_add(1).ok_or(TableError::LimitTooLarge(limit as u64))?;
        if k > rank_bound {
            // the extension was sized for ranks up to the proven upper bound
            return Err(TableError::Internal(format!(
                "rank {k} exceeds the upper bound {rank_bound} for limit {limit}"
            )));
        }
        let cap = (selfridge_e(k).min(ext as u128)) as usize;
        let mut fresh: Vec<u32> = Vec::new();

        for a in 1..=(k / 2) as usize {
            let b = k as usize - a;
            let (small, large) = (&classes[a], &classes[b]);
            let large_from_two = large.partition_point(|&y| y < 2);
            for &x in small.iter().filter(|&&x| x >= 2) {
                let start = if a == b {
                    large.partition_point(|&y| y < x)
                } else {
                    large_from_two
                };
                let Some(&first) = large.get(start) else { break };
                if x as usize * first as usize > cap {
                    break;
                }
                for &y in &large[start..] {
                    let prod = x as usize * y as usize;
                    if prod > cap {
                        break;
                    }
                    if values[prod] == 0 {
                        values[prod] = k;
                        fresh.push(prod as u32);
                    }
                }
            }
        }

        let bound = pair_product_bound(k);
        let window = pending.partition_point(|&n| n as usize <= cap);
        let minus = basis.allows_subtraction();
        let snapshot = &values;
        let found: Vec<u32> = pending[..window]
            .par_iter()
            .copied()
            .filter(|&n| {
                let n = n as usize;
                snapshot[n] == 0
                    && (has_sum_split(snapshot, n, k, bound)
                        || (minus && has_difference_split(snapshot, n, k, bound)))
            })
            .collect();
        for &n in &found {
            values[n as usize] = k;
        }

        fresh.extend_from_slice(&found);
        fresh.sort_unstable();
        pending.retain(|&n| values[n as usize] == 0);
        classes.push(fresh);
    }

    values.truncate(limit + 1);
    Ok(values)
}
