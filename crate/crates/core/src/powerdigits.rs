// SPDX-License-Identifier: Apache-2.0

//! Base-q digits of prime powers.
//!
//! [`PowerDigitStream`] walks `p^0, p^1, ...` and keeps the base-q digits
//! of the current power. On top of it sit the digit-sum statistics `s3`
//! and `sigma`, a histogram, the Horner-form expression of a number in
//! base q, and compression points of prime powers.

use thiserror::Error;

use crate::arith::is_prime;
use crate::expr::Expression;
use crate::tables::{log3, ComplexityTable, TableError};

/// Default cap on the number of base-q digits a stream may hold.
pub const DEFAULT_MAX_DIGITS: usize = 10_000_000;

#[derive(Debug, Error)]
pub enum PowerDigitsError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),
    #[error("digit stream would exceed {budget} digits")]
    OutOfBudget { budget: usize },
    #[error("histogram needs width > 0 and lo < hi")]
    InvalidBins,
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Digits are held in limbs of `k` base-q digits each, limb base `q^k <= 2^16`.
#[derive(Debug, Clone)]
pub struct PowerDigitStream {
    p: u64,
    q: u64,
    exponent: u64,
    limb_digits: u32,
    limb_base: u64,
    /// Little-endian limbs; the top limb is nonzero.
    limbs: Vec<u64>,
    /// Digit sum of every limb value, when limbs hold more than one digit.
    limb_sums: Vec<u16>,
    max_digits: usize,
}

impl PowerDigitStream {
    /// Starts at `p^0 = 1`.
    pub fn new(p: u64, q: u64) -> Result<Self, PowerDigitsError> {
        Self::with_budget(p, q, DEFAULT_MAX_DIGITS)
    }

    pub fn with_budget(p: u64, q: u64, max_digits: usize) -> Result<Self, PowerDigitsError> {
        if !is_prime(p) {
            return Err(PowerDigitsError::NotPrime(p));
        }
        if q < 2 || q > u32::MAX as u64 {
            return Err(PowerDigitsError::InvalidBase(q));
        }
        let mut limb_digits = 1;
        let mut limb_base = q;
        while limb_base * q <= 1 << 16 {
            limb_base *= q;
            limb_digits += 1;
        }
        let limb_sums = if limb_digits > 1 {
            (0..limb_base)
                .map(|mut v| {
                    let mut s = 0;
                    while v > 0 {
                        s += (v % q) as u16;
                        v /= q;
                    }
                    s
                })
                .collect()
        } else {
            Vec::new()
        };
        Ok(PowerDigitStream {
            p,
            q,
            exponent: 0,
            limb_digits,
            limb_base,
            limbs: vec![1],
            limb_sums,
            max_digits,
        })
    }

    /// Stream positioned at `p^n`.
    pub fn at(p: u64, q: u64, n: u64) -> Result<Self, PowerDigitsError> {
        let mut s = Self::new(p, q)?;
        for _ in 0..n {
            s.advance()?;
        }
        Ok(s)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Multiplies the current power by `p`.
    pub fn advance(&mut self) -> Result<(), PowerDigitsError> {
        let mut carry = 0u64;
        for limb in &mut self.limbs {
            let v = *limb * self.p + carry;
            *limb = v % self.limb_base;
            carry = v / self.limb_base;
        }
        while carry > 0 {
            self.limbs.push(carry % self.limb_base);
            carry /= self.limb_base;
        }
        self.exponent += 1;
        if self.digit_count() > self.max_digits {
            return Err(PowerDigitsError::OutOfBudget {
                budget: self.max_digits,
            });
        }
        Ok(())
    }

    pub fn digit_count(&self) -> usize {
        let mut top = *self.limbs.last().unwrap();
        let mut in_top = 0;
        while top > 0 {
            top /= self.q;
            in_top += 1;
        }
        (self.limbs.len() - 1) * self.limb_digits as usize + in_top
    }

    /// `D_q(n, i)`, zero past the leading digit.
    pub fn digit(&self, i: usize) -> u64 {
        let k = self.limb_digits as usize;
        match self.limbs.get(i / k) {
            Some(&limb) => limb / self.q.pow((i % k) as u32) % self.q,
            None => 0,
        }
    }

    /// Base-q digits, least significant first.
    pub fn digits(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.limbs.len() * self.limb_digits as usize);
        for &limb in &self.limbs {
            let mut v = limb;
            for _ in 0..self.limb_digits {
                out.push(v % self.q);
                v /= self.q;
            }
        }
        out.truncate(self.digit_count());
        out
    }

    /// `S_q(p^n)`.
    pub fn digit_sum(&self) -> u64 {
        if self.limb_sums.is_empty() {
            self.limbs.iter().sum()
        } else {
            self.limbs
                .iter()
                .map(|&l| self.limb_sums[l as usize] as u64)
                .sum()
        }
    }
}

/// `(S - n log_3 2) / sqrt(n (2/3) log_3 2)`, the normed digit sum of `2^n` in base 3.
pub fn s3_stat(n: u64, s: u64) -> f64 {
    let l = log3(2.0);
    let n = n as f64;
    (s as f64 - n * l) / (n * (2.0 / 3.0) * l).sqrt()
}

/// `(S - (q-1)/2 log_q p n) / sqrt((q^2-1)/6 log_q p n ln ln n)`, defined for `n >= 3`.
pub fn sigma_stat(p: u64, q: u64, n: u64, s: u64) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let (nf, qf) = (n as f64, q as f64);
    let lqp = (p as f64).ln() / qf.ln();
    let center = (qf - 1.0) / 2.0 * lqp * nf;
    let scale = ((qf * qf - 1.0) / 6.0 * lqp * nf * nf.ln().ln()).sqrt();
    Some((s as f64 - center) / scale)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DigitStatRow {
    pub n: u64,
    /// `S_q(p^n)`
    pub s: u64,
    /// Only for `p = 2, q = 3`.
    pub s3: Option<f64>,
    /// Only for `n >= 3`.
    pub sigma: Option<f64>,
}

impl DigitStatRow {
    pub fn new(p: u64, q: u64, n: u64, s: u64) -> Self {
        DigitStatRow {
            n,
            s,
            s3: (p == 2 && q == 3).then(|| s3_stat(n, s)),
            sigma: sigma_stat(p, q, n, s),
        }
    }
}

/// Rows for `n = 1..=n_max`, computed in one pass over a single stream.
pub struct DigitSumSeries {
    stream: PowerDigitStream,
    n_max: u64,
    failed: bool,
}

impl Iterator for DigitSumSeries {
    type Item = Result<DigitStatRow, PowerDigitsError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.stream.exponent() >= self.n_max {
            return None;
        }
        if let Err(e) = self.stream.advance() {
            self.failed = true;
            return Some(Err(e));
        }
        let s = &self.stream;
        Some(Ok(DigitStatRow::new(s.p, s.q, s.exponent, s.digit_sum())))
    }
}

pub fn digit_sum_series(p: u64, q: u64, n_max: u64) -> Result<DigitSumSeries, PowerDigitsError> {
    Ok(DigitSumSeries {
        stream: PowerDigitStream::new(p, q)?,
        n_max,
        failed: false,
    })
}

/// Fixed-width bins over `[lo, hi)`, plus counts of values below and above.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
    pub counts: Vec<u64>,
    pub underflow: u64,
    /// Values `>= hi`, and NaN.
    pub overflow: u64,
}

pub const DEFAULT_BIN_LO: f64 = -4.0;
pub const DEFAULT_BIN_HI: f64 = 4.0;
pub const DEFAULT_BIN_WIDTH: f64 = 0.25;

impl Histogram {
    pub fn new(lo: f64, hi: f64, width: f64) -> Result<Self, PowerDigitsError> {
        if !(width > 0.0) || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(PowerDigitsError::InvalidBins);
        }
        let bins = ((hi - lo) / width - 1e-9).ceil().max(1.0) as usize;
        Ok(Histogram {
            lo,
            hi,
            width,
            counts: vec![0; bins],
            underflow: 0,
            overflow: 0,
        })
    }

    pub fn add(&mut self, x: f64) {
        if x < self.lo {
            self.underflow += 1;
        } else if x < self.hi {
            let last = self.counts.len() - 1;
            let i = ((x - self.lo) / self.width) as usize;
            self.counts[i.min(last)] += 1;
        } else {
            self.overflow += 1;
        }
    }

    /// `(bin_lo, bin_hi, count)`; the last bin ends at `hi`.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        let last = self.counts.len() - 1;
        self.counts.iter().enumerate().map(move |(i, &c)| {
            let a = self.lo + i as f64 * self.width;
            let b = if i == last { self.hi } else { a + self.width };
            (a, b, c)
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }
}

pub fn histogram(values: &[f64], width: f64, lo: f64, hi: f64) -> Result<Histogram, PowerDigitsError> {
    let mut h = Histogram::new(lo, hi, width)?;
    values.iter().for_each(|&x| h.add(x));
    Ok(h)
}

/// Sample mean and sample standard deviation; `None` for fewer than two values.
pub fn mean_std(values: &[f64]) -> Option<(f64, f64)> {
    if values.len() < 2 {
        return None;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Some((mean, var.sqrt()))
}

/// Base-q digits of `n`, least significant first.
pub fn base_digits(mut n: u64, q: u64) -> Vec<u64> {
    assert!(q >= 2);
    let mut out = Vec::new();
    while n > 0 {
        out.push(n % q);
        n /= q;
    }
    out
}

/// `(...(a_m Q + a_{m-1}) Q + ...) Q + a_0` with `Q` and every digit written
/// as sums of ones and zero digits left out. Uses at most `m q + S_q(n)` ones,
/// `m = floor(log_q n)`.
pub fn horner_expression(n: u64, q: u64) -> Expression {
    assert!(n >= 1 && q >= 2);
    let digits = base_digits(n, q);
    let base = Expression::ones(q);
    let mut rev = digits.iter().rev();
    let mut acc = Expression::ones(*rev.next().unwrap());
    for &d in rev {
        acc = Expression::mul(acc, base.clone());
        if d > 0 {
            acc = Expression::add(acc, Expression::ones(d));
        }
    }
    acc
}

/// Largest `n` with `p^n <= limit`.
pub fn max_exponent(p: u64, limit: u64) -> u32 {
    let (mut n, mut v) = (0u32, 1u64);
    while let Some(next) = v.checked_mul(p).filter(|&x| x <= limit) {
        v = next;
        n += 1;
    }
    n
}

/// `||p^n||` for `n = 0..=n_max` (index 0 unused).
pub fn power_complexities(p: u64, n_max: u32, t: &ComplexityTable) -> Result<Vec<u8>, PowerDigitsError> {
    if p < 2 {
        return Err(PowerDigitsError::InvalidBase(p));
    }
    let mut out = vec![0u8; n_max as usize + 1];
    let mut v = 1u64;
    for slot in out.iter_mut().skip(1) {
        v = v.checked_mul(p).ok_or(TableError::OutOfRange {
            n: u64::MAX,
            limit: t.limit(),
        })?;
        *slot = t.complexity(v)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompressionRow {
    pub n: u32,
    /// `||p^n||`
    pub ones: u8,
    /// `min_{0<k<n} m(k) + m(n-k)`; none for `n = 1`.
    pub best_split: Option<u32>,
    /// `m(n)`, the cheaper of the direct cost and the best split.
    pub best: u32,
    pub compression: bool,
}

/// `m(n) = min(||p^n||, min_k m(k) + m(n-k))` for `n = 1..=n_max`.
pub fn compression_profile(p: u64, n_max: u32, t: &ComplexityTable) -> Result<Vec<CompressionRow>, PowerDigitsError> {
    let ones = power_complexities(p, n_max, t)?;
    let mut m = vec![0u32; n_max as usize + 1];
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max as usize {
        let best_split = (1..n).map(|k| m[k] + m[n - k]).min();
        let direct = ones[n] as u32;
        m[n] = best_split.map_or(direct, |s| s.min(direct));
        rows.push(CompressionRow {
            n: n as u32,
            ones: ones[n],
            best_split,
            best: m[n],
            compression: best_split.is_some_and(|s| direct < s),
        });
    }
    Ok(rows)
}

/// Exponents `2 <= n <= n_max` where `||p^n||` beats every product of
/// expressions of smaller powers.
pub fn compression_points(p: u64, n_max: u32, t: &ComplexityTable) -> Result<Vec<u32>, PowerDigitsError> {
    Ok(compression_profile(p, n_max, t)?
        .into_iter()
        .filter(|r| r.compression)
        .map(|r| r.n)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerRow {
    pub n: u32,
    pub ones: u8,
    pub log_complexity: f64,
    /// `min_{j <= n} ||k^j||_log`
    pub running_min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerLimitReport {
    pub k: u64,
    pub rows: Vec<PowerRow>,
    /// Pairs `(a, b)` with `||k^(a+b)|| > ||k^a|| + ||k^b||`.
    pub violations: Vec<(u32, u32)>,
}

/// Every power of `k` inside the table.
pub fn power_limit_check(k: u64, t: &ComplexityTable) -> Result<PowerLimitReport, PowerDigitsError> {
    if k < 2 {
        return Err(PowerDigitsError::InvalidBase(k));
    }
    let n_max = max_exponent(k, t.limit());
    let ones = power_complexities(k, n_max, t)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    let mut running_min = f64::INFINITY;
    for n in 1..=n_max {
        let log_complexity = ones[n as usize] as f64 / (n as f64 * log3(k as f64));
        running_min = running_min.min(log_complexity);
        rows.push(PowerRow {
            n,
            ones: ones[n as usize],
            log_complexity,
            running_min,
        });
    }
    let mut violations = Vec::new();
    for a in 1..=n_max {
        for b in a..=n_max - a {
            if ones[(a + b) as usize] > ones[a as usize] + ones[b as usize] {
                violations.push((a, b));
            }
        }
    }
    Ok(PowerLimitReport { k, rows, violations })
}

/// Per-exponent check of `||p^n|| <= horner ones <= m q + S_q(p^n)` and of
/// `S_3(p^n) >= n eps log_3 p` where `||p^n||_log >= 3 + eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct DigitBoundReport {
    pub checked: u32,
    pub horner_failures: Vec<u32>,
    pub digit_sum_failures: Vec<u32>,
}

pub fn digit_bound_check(p: u64, q: u64, eps: f64, t: &ComplexityTable) -> Result<DigitBoundReport, PowerDigitsError> {
    let n_max = max_exponent(p, t.limit());
    let ones = power_complexities(p, n_max, t)?;
    let mut stream = PowerDigitStream::new(p, q)?;
    let mut base3 = PowerDigitStream::new(p, 3)?;
    let mut report = DigitBoundReport {
        checked: 0,
        horner_failures: Vec::new(),
        digit_sum_failures: Vec::new(),
    };
    let mut v = 1u64;
    for n in 1..=n_max {
        stream.advance()?;
        base3.advance()?;
        v *= p;
        let m = (stream.digit_count() - 1) as u64;
        let horner = horner_expression(v, q).count_ones();
        let c = ones[n as usize] as u64;
        if !(c <= horner && horner <= m * q + stream.digit_sum()) {
            report.horner_failures.push(n);
        }
        let log_c = c as f64 / (n as f64 * log3(p as f64));
        if log_c >= 3.0 + eps && (base3.digit_sum() as f64) < n as f64 * eps * log3(p as f64) {
            report.digit_sum_failures.push(n);
        }
        report.checked += 1;
    }
    Ok(report)
}
