// SPDX-License-Identifier: Apache-2.0

//! 64-bit factorization: trial division by the primes below 10^6, then
//! Brent's variant of Pollard rho on whatever composite is left.

use std::sync::OnceLock;

use onecount::arith::{gcd, is_prime, mul_mod};

pub const TRIAL_LIMIT: u64 = 1_000_000;

/// An odd prime with its inverse mod 2^64 and `u64::MAX / p`:
/// `n * inv <= max_quot` exactly when `p` divides `n`.
struct TrialPrime {
    p: u64,
    inv: u64,
    max_quot: u64,
}

fn trial_primes() -> &'static [TrialPrime] {
    static PRIMES: OnceLock<Vec<TrialPrime>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut out = Vec::new();
        for i in 3..=n {
            if composite[i] || i % 2 == 0 {
                continue;
            }
            for j in (i * i..=n).step_by(2 * i) {
                composite[j] = true;
            }
            let p = i as u64;
            // Newton iteration doubles the correct low bits each round
            let mut inv = p;
            for _ in 0..5 {
                inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
            }
            out.push(TrialPrime {
                p,
                inv,
                max_quot: u64::MAX / p,
            });
        }
        out
    })
}

/// Prime factors of `n` in ascending order, with multiplicity. Empty for 0 and 1.
pub fn factorize(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let twos = n.trailing_zeros();
    out.extend(std::iter::repeat(2).take(twos as usize));
    n >>= twos;
    for (i, tp) in trial_primes().iter().enumerate() {
        if tp.p * tp.p > n {
            break;
        }
        if i % 4096 == 0 && is_prime(n) {
            break;
        }
        while n.wrapping_mul(tp.inv) <= tp.max_quot {
            n = n.wrapping_mul(tp.inv);
            out.push(tp.p);
        }
    }
    if n > 1 {
        let mut stack = vec![n];
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                out.push(m);
            } else {
                let d = rho(m);
                stack.push(d);
                stack.push(m / d);
            }
        }
    }
    out.sort_unstable();
    out
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A nontrivial factor of an odd composite `n` with no prime factor below
/// the trial limit. Parameters are drawn from a generator seeded with `n`.
fn rho(n: u64) -> u64 {
    const BATCH: u64 = 128;
    let mut seed = n;
    loop {
        let c = splitmix(&mut seed) % (n - 1) + 1;
        let mut y = splitmix(&mut seed) % n;
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut g, mut r, mut q) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (y, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // the batch overshot; replay it one step at a time
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
}

/// `p1^e1*p2*...` with exponents above one written as `^e`.
pub fn format_factorization(factors: &[u64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < factors.len() {
        let p = factors[i];
        let e = factors[i..].iter().take_while(|&&f| f == p).count();
        parts.push(if e > 1 { format!("{p}^{e}") } else { p.to_string() });
        i += e;
    }
    parts.join("*")
}
