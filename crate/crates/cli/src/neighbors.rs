// SPDX-License-Identifier: Apache-2.0

//! Factorizations around the smallest number of each complexity.

use onecount::{ComplexityTable, TableError};

use crate::factor::{factorize, format_factorization};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborRow {
    pub k: u8,
    pub e: u64,
    /// Factorizations of `e-2, e-1, e, e+1`. Empty below 1, `"1"` for 1.
    pub factors: [String; 4],
}

pub fn describe(v: i128) -> String {
    match v {
        v if v < 1 => String::new(),
        1 => "1".into(),
        v => format_factorization(&factorize(v as u64)),
    }
}

/// One row per `k = 1..=k_max`.
pub fn neighbors_report(t: &ComplexityTable, k_max: u8) -> Result<Vec<NeighborRow>, TableError> {
    (1..=k_max)
        .map(|k| {
            let e = t.e_min(k)?;
            let at = |d: i128| describe(e as i128 + d);
            Ok(NeighborRow {
                k,
                e,
                factors: [at(-2), at(-1), at(0), at(1)],
            })
        })
        .collect()
}
