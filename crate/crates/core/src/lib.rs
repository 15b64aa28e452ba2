// SPDX-License-Identifier: Apache-2.0

//! Integer complexity in the bases `{1,+,*}` and `{1,+,*,-}`.
//!
//! * [`expr`]: expression trees, the witness format for every value.
//! * [`tables`]: byte-per-integer complexity tables built by a rank sieve.
//! * [`palgo`]: deterministic P-algorithms (divide by a prime set or subtract one).
//! * [`powerdigits`]: base-q digit statistics of prime powers.

pub mod arith;
pub mod expr;
pub mod palgo;
pub mod powerdigits;
pub mod tables;

pub use expr::{Basis, ExprError, Expression};
pub use tables::{build_table, selfridge_e, ChampionRecord, ComplexityTable, TableError};
