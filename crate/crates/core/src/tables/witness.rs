// SPDX-License-Identifier: Apache-2.0

//! Shortest-expression reconstruction from a finished table.
//!
//! Splits are tried in a fixed order: products, then sums, then differences,
//! each with the smaller first operand first. A difference may need a minuend
//! above the table limit; its complexity is then recovered by a bounded search
//! that uses the table for everything inside the limit.

use super::{ComplexityTable, TableError};
use crate::expr::Expression;

/// `m` can have complexity `<= budget` only if `m^3 <= 3^budget`.
fn within_lower_bound(m: u64, budget: u8) -> bool {
    3.0 * (m as f64).ln() / 3f64.ln() <= budget as f64 + 1e-9
}

fn pair_bound(budget: u8) -> f64 {
    3f64.powf(budget as f64 / 3.0) * (1.0 + 1e-9)
}

/// One way of splitting `m` into two operands.
#[derive(Clone, Copy)]
enum Split {
    Mul(u64, u64),
    Add(u64, u64),
    Sub(u64, u64),
}

impl Split {
    fn operands(self) -> (u64, u64) {
        match self {
            Split::Mul(a, b) | Split::Add(a, b) | Split::Sub(a, b) => (a, b),
        }
    }
}

/// Candidate splits of `m` whose operand product respects `3^(budget/3)`,
/// in tie-break order.
fn splits(m: u64, budget: u8, subtraction: bool) -> impl Iterator<Item = Split> {
    let bound = pair_bound(budget);
    let products = (2..)
        .take_while(move |d: &u64| d.saturating_mul(*d) <= m)
        .filter(move |d| m % d == 0)
        .map(move |d| Split::Mul(d, m / d));
    let sums = (1..=m / 2)
        .take_while(move |&s| (s as f64) * ((m - s) as f64) <= bound)
        .map(move |s| Split::Add(s, m - s));
    let differences = (1..)
        .take_while(move |&b: &u64| subtraction && (b as f64) * ((m + b) as f64) <= bound)
        .map(move |b| Split::Sub(m + b, b));
    products.chain(sums).chain(differences)
}

impl ComplexityTable {
    /// A minimal expression for `n` in the table's basis.
    pub fn shortest_expression(&self, n: u64) -> Result<Expression, TableError> {
        if n == 0 || n > self.limit() {
            return Err(TableError::OutOfRange { n, limit: self.limit() });
        }
        self.express(n, self.values[n as usize])
    }

    /// Minimal one-count of `m` if it is at most `budget`; `m` may exceed the limit.
    fn min_cost(&self, m: u64, budget: u8) -> Option<u8> {
        if m <= self.limit() {
            let v = self.values[m as usize];
            return (v <= budget).then_some(v);
        }
        if budget < 2 || !within_lower_bound(m, budget) {
            return None;
        }
        let mut best: Option<u8> = None;
        let mut cap = budget;
        for split in splits(m, budget, self.basis.allows_subtraction()) {
            if cap < 2 {
                break;
            }
            let (a, b) = split.operands();
            let Some(ca) = self.min_cost(a, cap - 1) else { continue };
            let Some(cb) = self.min_cost(b, cap - ca) else { continue };
            let total = ca + cb;
            if best.is_none_or(|c| total < c) {
                best = Some(total);
                cap = total - 1;
            }
        }
        best
    }

    /// Expression for `m` with exactly `cost` ones, where `cost` is its complexity.
    fn express(&self, m: u64, cost: u8) -> Result<Expression, TableError> {
        if m == 1 {
            return Ok(Expression::One);
        }
        let subtraction = self.basis.allows_subtraction();
        for split in splits(m, cost, subtraction) {
            let (a, b) = split.operands();
            let Some(ca) = self.min_cost(a, cost - 1) else { continue };
            if self.min_cost(b, cost - ca) != Some(cost - ca) {
                continue;
            }
            let (left, right) = (self.express(a, ca)?, self.express(b, cost - ca)?);
            return Ok(match split {
                Split::Mul(..) => Expression::mul(left, right),
                Split::Add(..) => Expression::add(left, right),
                Split::Sub(..) => Expression::sub(left, right),
            });
        }
        Err(TableError::WitnessNotFound(m))
    }
}

#[cfg(test)]
mod tests {
    use crate::expr::Basis;
    use crate::tables::{build_table, ComplexityTable};

    #[test]
    fn six_is_two_times_three() {
        let t = build_table(6, Basis::PlusTimes).unwrap();
        let e = t.shortest_expression(6).unwrap();
        assert_eq!(e.render(), "((1+1)*(1+(1+1)))");
        assert_eq!(e.count_ones(), 5);
    }

    #[test]
    fn one_is_a_leaf() {
        for b in [Basis::PlusTimes, Basis::PlusTimesMinus] {
            let t = build_table(1, b).unwrap();
            assert_eq!(t.shortest_expression(1).unwrap().render(), "1");
        }
    }

    #[test]
    fn twenty_three_uses_subtraction() {
        let t = build_table(23, Basis::PlusTimesMinus).unwrap();
        let e = t.shortest_expression(23).unwrap();
        assert_eq!(e.evaluate(), Ok(23));
        assert_eq!(e.count_ones(), 10);
        assert!(e.validate(Basis::PlusTimesMinus));
        assert!(e.contains_subtraction());
    }

    #[test]
    fn minuend_beyond_the_limit_is_recovered() {
        // 23 = 24 - 1 and 24 lies outside a table that stops at 23
        let t = ComplexityTable::from_values(
            Basis::PlusTimesMinus,
            build_table(23, Basis::PlusTimesMinus).unwrap().values()[1..].to_vec(),
        )
        .unwrap();
        assert_eq!(t.shortest_expression(23).unwrap().count_ones(), 10);
    }

    #[test]
    fn witnesses_are_sound_for_every_entry() {
        for b in [Basis::PlusTimes, Basis::PlusTimesMinus] {
            let t = build_table(3000, b).unwrap();
            for n in 1..=3000 {
                let e = t.shortest_expression(n).unwrap();
                assert_eq!(e.evaluate(), Ok(n), "{b} {n}");
                assert_eq!(e.count_ones(), t.complexity(n).unwrap() as u64, "{b} {n}");
                assert!(e.validate(b));
            }
        }
    }
}
