// SPDX-License-Identifier: Apache-2.0

//! Complexity tables for `1..=limit` in either basis.
//!
//! A table stores one byte per integer. Values are produced by the rank
//! sieve in [`sieve`], answered by lookup, and backed by on-demand witness
//! reconstruction ([`ComplexityTable::shortest_expression`]).

mod persist;
mod sieve;
mod witness;

use std::cmp::Ordering;

use num_bigint::BigUint;
use thiserror::Error;

use crate::expr::Basis;

pub use persist::{load_table, read_table, save_table, write_table, FORMAT_VERSION, MAGIC};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("n = {n} is outside the table range 1..={limit}")]
    OutOfRange { n: u64, limit: u64 },
    #[error("limit {0} is too large for an 8-bit table")]
    LimitTooLarge(u64),
    #[error("resource exhausted: {0}")]
    Resource(String),
    #[error("no witness split found for {0}; the table is corrupt")]
    WitnessNotFound(u64),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("invalid table file: {0}")]
    Format(String),
    #[error("checksum mismatch: stored {stored:#010x}, computed {computed:#010x}")]
    ChecksumMismatch { stored: u32, computed: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("internal error: {0}")]
    Internal(String),
}

/// `E(k)`: the largest number of complexity `k` (Selfridge). Saturates at
/// `u128::MAX` for `k > 241`.
pub fn selfridge_e(k: u8) -> u128 {
    assert!(k >= 1, "complexity ranks start at 1");
    if k == 1 {
        return 1;
    }
    let j = (k - 2) / 3;
    let lead = [2u128, 3, 4][((k - 2) % 3) as usize];
    3u128
        .checked_pow(j as u32)
        .and_then(|p| p.checked_mul(lead))
        .unwrap_or(u128::MAX)
}

#[inline]
pub(crate) fn log3(n: f64) -> f64 {
    n.ln() / 3f64.ln()
}

/// One row of a champions scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChampionRecord {
    pub n: u64,
    pub ones: u8,
    pub log_complexity: f64,
}

impl ChampionRecord {
    fn new(n: u64, ones: u8) -> Self {
        ChampionRecord {
            n,
            ones,
            log_complexity: ones as f64 / log3(n as f64),
        }
    }

    /// Descending log-complexity, ties to the smaller `n`. Near-ties are
    /// settled exactly: `a/log n_a > b/log n_b` iff `n_b^a > n_a^b`.
    fn rank_cmp(&self, other: &Self) -> Ordering {
        let gap = self.log_complexity - other.log_complexity;
        let by_value = if gap.abs() >= 1e-12 {
            other.log_complexity.total_cmp(&self.log_complexity)
        } else {
            let lhs = BigUint::from(other.n).pow(self.ones as u32);
            let rhs = BigUint::from(self.n).pow(other.ones as u32);
            rhs.cmp(&lhs)
        };
        by_value.then(self.n.cmp(&other.n))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityTable {
    basis: Basis,
    /// `values[n]` for `n in 1..=limit`; `values[0]` is an unused zero.
    values: Vec<u8>,
}

/// Builds the exact table for `1..=limit`.
pub fn build_table(limit: u64, basis: Basis) -> Result<ComplexityTable, TableError> {
    if limit == 0 {
        return Err(TableError::OutOfRange { n: 0, limit });
    }
    let values = sieve::rank_sieve(limit, basis)?;
    Ok(ComplexityTable { basis, values })
}

impl ComplexityTable {
    /// Wraps raw values for `1..=values.len()`. Every value must be positive.
    pub fn from_values(basis: Basis, values: Vec<u8>) -> Result<Self, TableError> {
        if values.is_empty() {
            return Err(TableError::Format("empty value array".into()));
        }
        if let Some(i) = values.iter().position(|&v| v == 0) {
            return Err(TableError::Format(format!("zero complexity stored for n = {}", i + 1)));
        }
        let mut stored = Vec::with_capacity(values.len() + 1);
        stored.push(0);
        stored.extend_from_slice(&values);
        Ok(ComplexityTable { basis, values: stored })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn limit(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// Values indexed by `n`; index 0 is a zero placeholder.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    fn check(&self, n: u64) -> Result<(), TableError> {
        if n == 0 || n > self.limit() {
            Err(TableError::OutOfRange { n, limit: self.limit() })
        } else {
            Ok(())
        }
    }

    pub fn complexity(&self, n: u64) -> Result<u8, TableError> {
        self.check(n)?;
        Ok(self.values[n as usize])
    }

    /// `complexity(n) / log_3 n`, defined for `n > 1`.
    pub fn log_complexity(&self, n: u64) -> Result<f64, TableError> {
        if n < 2 {
            return Err(TableError::OutOfRange { n, limit: self.limit() });
        }
        Ok(self.complexity(n)? as f64 / log3(n as f64))
    }

    /// `j = 1`: the largest `m` with complexity exactly `k`. Otherwise the
    /// `j`-th largest `m` with complexity at most `k`.
    ///
    /// Answers are only trusted when `E(k)` is inside the table, since no
    /// number above `E(k)` can qualify.
    pub fn e_kth(&self, k: u8, j: u64) -> Result<u64, TableError> {
        if k == 0 || j == 0 {
            return Err(TableError::NotFound(format!("rank k={k}, j={j}")));
        }
        let top = selfridge_e(k);
        if top > self.limit() as u128 {
            return Err(TableError::OutOfRange {
                n: top.min(u64::MAX as u128) as u64,
                limit: self.limit(),
            });
        }
        let mut seen = 0;
        for m in (1..=top as u64).rev() {
            let v = self.values[m as usize];
            let hit = if j == 1 { v == k } else { v <= k };
            if hit {
                seen += 1;
                if seen == j {
                    return Ok(m);
                }
            }
        }
        Err(TableError::NotFound(format!("fewer than {j} numbers with complexity <= {k}")))
    }

    /// Smallest `m` with complexity exactly `k`.
    pub fn e_min(&self, k: u8) -> Result<u64, TableError> {
        self.values
            .iter()
            .skip(1)
            .position(|&v| v == k)
            .map(|i| i as u64 + 1)
            .ok_or_else(|| TableError::NotFound(format!("no n <= {} with complexity {k}", self.limit())))
    }

    /// `e_min` for every rank present, in one pass (`result[k]`).
    pub fn e_min_all(&self) -> Vec<Option<u64>> {
        let max = self.values.iter().copied().max().unwrap_or(0) as usize;
        let mut out = vec![None; max + 1];
        for (n, &v) in self.values.iter().enumerate().skip(1) {
            let slot = &mut out[v as usize];
            if slot.is_none() {
                *slot = Some(n as u64);
            }
        }
        out
    }

    /// The `top` entries of `2..=bound` with the largest log-complexity.
    pub fn champions(&self, bound: u64, top: usize) -> Result<Vec<ChampionRecord>, TableError> {
        self.check(bound)?;
        let mut best: Vec<ChampionRecord> = Vec::with_capacity(top + 1);
        if top == 0 {
            return Ok(best);
        }
        for n in 2..=bound {
            let rec = ChampionRecord::new(n, self.values[n as usize]);
            if best.len() == top && rec.rank_cmp(best.last().unwrap()) != Ordering::Less {
                continue;
            }
            let at = best.partition_point(|b| b.rank_cmp(&rec) == Ordering::Less);
            best.insert(at, rec);
            best.truncate(top);
        }
        Ok(best)
    }
}
