// SPDX-License-Identifier: Apache-2.0

//! Small 64-bit number-theory helpers shared by the P-algorithm code and the CLI.

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Solves `x = r_i (mod m_i)` for pairwise coprime moduli. Returns the
/// least non-negative solution and the product of the moduli, or `None` when
/// the moduli are not coprime or the product overflows `u128`.
pub fn crt(congruences: &[(u64, u64)]) -> Option<(u128, u128)> {
    let mut x: u128 = 0;
    let mut modulus: u128 = 1;
    for &(r, m) in congruences {
        let m = m as u128;
        let r = r as u128 % m;
        // x + modulus * t = r (mod m)
        let (g, inv, _) = ext_gcd((modulus % m) as i128, m as i128);
        if g != 1 {
            return None;
        }
        let inv = inv.rem_euclid(m as i128) as u128;
        let diff = (r + m - x % m) % m;
        let t = (diff * inv) % m;
        x = t.checked_mul(modulus)?.checked_add(x)?;
        modulus = modulus.checked_mul(m)?;
    }
    Some((x % modulus, modulus))
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}
