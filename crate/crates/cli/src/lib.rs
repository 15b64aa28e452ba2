// SPDX-License-Identifier: Apache-2.0

//! The `onecount` command-line tool.

pub mod commands;
pub mod factor;
pub mod neighbors;
pub mod output;

pub use commands::{run, Cli};
pub use factor::{factorize, format_factorization};
pub use neighbors::{neighbors_report, NeighborRow};
