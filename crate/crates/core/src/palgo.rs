// SPDX-License-Identifier: Apache-2.0

//! P-algorithms: build a `{1,+,*}` expression for `n` by dividing by members
//! of a prime set `P` whenever possible and subtracting one otherwise.
//!
//! The steps are, in order: `n = 1` gives `1`; `n` in `P` gives the stored
//! shortest expression of `n`; `n` divisible by a member `p` gives
//! `ex(p) * (n / p)`; otherwise `1 + (n - 1)`. When several members divide
//! `n` the smallest one is used.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::arith::{crt, is_prime};
use crate::expr::{Basis, Expression};
use crate::tables::{log3, ComplexityTable, TableError};

/// Largest dense-point number, in bits, that [`dense_point`] will construct.
pub const DEFAULT_DENSE_BIT_BUDGET: u64 = 1 << 20;

/// Float slack used when checking inequalities between log-complexities.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum PalgoError {
    #[error("the prime set is empty")]
    Empty,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} appears twice in the prime set")]
    Duplicate(u64),
    #[error("{0} is not a member of the prime set")]
    NotMember(u64),
    #[error("shortest member expressions need a plus-times table")]
    WrongBasis,
    #[error("n must be positive")]
    ZeroInput,
    #[error("construction exceeds the budget of {budget} bits (needs about {needed})")]
    OutOfBudget { needed: u64, budget: u64 },
    #[error(transparent)]
    Table(#[from] TableError),
}

/// A nonempty set of primes with a shortest `{1,+,*}` expression per member.
#[derive(Debug, Clone)]
pub struct PSet {
    primes: Vec<u64>,
    ones: Vec<u64>,
    ex: Vec<Expression>,
}

impl PSet {
    /// Member expressions come from `table`, which must use the plus-times
    /// basis and cover every member.
    pub fn new(primes: &[u64], table: &ComplexityTable) -> Result<PSet, PalgoError> {
        if primes.is_empty() {
            return Err(PalgoError::Empty);
        }
        if table.basis() != Basis::PlusTimes {
            return Err(PalgoError::WrongBasis);
        }
        let mut sorted = primes.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PalgoError::Duplicate(w[0]));
        }
        if let Some(&p) = sorted.iter().find(|&&p| !is_prime(p)) {
            return Err(PalgoError::NotPrime(p));
        }
        let mut ones = Vec::with_capacity(sorted.len());
        let mut ex = Vec::with_capacity(sorted.len());
        for &p in &sorted {
            ones.push(table.complexity(p)? as u64);
            ex.push(table.shortest_expression(p)?);
        }
        Ok(PSet {
            primes: sorted,
            ones,
            ex,
        })
    }

    /// Members in ascending order.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The smallest member.
    pub fn q(&self) -> u64 {
        self.primes[0]
    }

    fn index_of(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.index_of(p).is_some()
    }

    /// `||p||` for a member.
    pub fn member_ones(&self, p: u64) -> Option<u64> {
        self.index_of(p).map(|i| self.ones[i])
    }

    pub fn ex(&self, p: u64) -> Option<&Expression> {
        self.index_of(p).map(|i| &self.ex[i])
    }

    fn member_log(&self, i: usize) -> f64 {
        self.ones[i] as f64 / log3(self.primes[i] as f64)
    }

    /// Member with the smallest `||p||_log` (smaller prime on ties).
    pub fn min_log_member(&self) -> u64 {
        let i = (0..self.primes.len())
            .min_by(|&a, &b| self.member_log(a).total_cmp(&self.member_log(b)))
            .unwrap();
        self.primes[i]
    }

    /// Member with the largest `||p||_log` (smaller prime on ties).
    pub fn max_log_member(&self) -> u64 {
        let i = (0..self.primes.len())
            .rev()
            .max_by(|&a, &b| self.member_log(a).total_cmp(&self.member_log(b)))
            .unwrap();
        self.primes[i]
    }

    fn smallest_divisor(&self, n: u64) -> Option<usize> {
        self.primes.iter().position(|&p| n % p == 0)
    }
}

/// One step of a P-algorithm run, from `value` toward 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOp {
    /// `value = 1`
    One,
    /// `value` is a member; its stored expression ends the run.
    Member,
    /// `value = p * next`
    Divide(u64),
    /// `value = 1 + next`
    Decrement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub value: u64,
    pub op: StepOp,
    /// `||value||_P`
    pub ones: u64,
}

fn classify(ps: &PSet, n: u64) -> StepOp {
    if n == 1 {
        StepOp::One
    } else if ps.contains(n) {
        StepOp::Member
    } else if let Some(i) = ps.smallest_divisor(n) {
        StepOp::Divide(ps.primes[i])
    } else {
        StepOp::Decrement
    }
}

/// The full run for `n`, first step first. Each step records `||value||_P`.
pub fn p_trace(ps: &PSet, n: u64) -> Result<Vec<TraceStep>, PalgoError> {
    if n == 0 {
        return Err(PalgoError::ZeroInput);
    }
    let mut steps = Vec::new();
    let mut value = n;
    loop {
        let op = classify(ps, value);
        steps.push(TraceStep { value, op, ones: 0 });
        match op {
            StepOp::One | StepOp::Member => break,
            StepOp::Divide(p) => value /= p,
            StepOp::Decrement => value -= 1,
        }
    }
    let mut acc = 0;
    for step in steps.iter_mut().rev() {
        acc += match step.op {
            StepOp::One => 1,
            StepOp::Member => ps.member_ones(step.value).unwrap(),
            StepOp::Divide(p) => ps.member_ones(p).unwrap(),
            StepOp::Decrement => 1,
        };
        step.ones = acc;
    }
    Ok(steps)
}

/// `||n||_P` and the expression the algorithm builds for `n`.
pub fn p_complexity(ps: &PSet, n: u64) -> Result<(u64, Expression), PalgoError> {
    let steps = p_trace(ps, n)?;
    let mut expr: Option<Expression> = None;
    for step in steps.iter().rev() {
        expr = Some(match (step.op, expr) {
            (StepOp::One, _) => Expression::One,
            (StepOp::Member, _) => ps.ex(step.value).unwrap().clone(),
            (StepOp::Divide(p), Some(rest)) => Expression::mul(ps.ex(p).unwrap().clone(), rest),
            (StepOp::Decrement, Some(rest)) => Expression::add(Expression::One, rest),
            (_, None) => unreachable!("runs end in a terminal step"),
        });
    }
    Ok((steps[0].ones, expr.unwrap()))
}

/// `||n||_P` for every `n` in `0..=limit` (index 0 is unused).
pub fn p_complexity_counts(ps: &PSet, limit: u64) -> Vec<u64> {
    let mut counts = vec![0u64; limit as usize + 1];
    for n in 1..=limit {
        counts[n as usize] = match classify(ps, n) {
            StepOp::One => 1,
            StepOp::Member => ps.member_ones(n).unwrap(),
            StepOp::Divide(p) => ps.member_ones(p).unwrap() + counts[(n / p) as usize],
            StepOp::Decrement => 1 + counts[n as usize - 1],
        };
    }
    counts
}

/// Numbers `n <= limit` where dividing by different applicable members
/// along the way can give different one-counts. Every branch of every
/// choice point is explored.
pub fn divisor_choice_counterexamples(ps: &PSet, limit: u64) -> Vec<u64> {
    let mut lo = vec![0u64; limit as usize + 1];
    let mut hi = vec![0u64; limit as usize + 1];
    let mut out = Vec::new();
    for n in 1..=limit {
        let i = n as usize;
        let (a, b) = if n == 1 {
            (1, 1)
        } else if let Some(c) = ps.member_ones(n) {
            (c, c)
        } else {
            let mut range: Option<(u64, u64)> = None;
            for (j, &p) in ps.primes.iter().enumerate() {
                if n % p == 0 {
                    let c = ps.ones[j];
                    let (l, h) = (c + lo[(n / p) as usize], c + hi[(n / p) as usize]);
                    range = Some(range.map_or((l, h), |(x, y)| (x.min(l), y.max(h))));
                }
            }
            range.unwrap_or((1 + lo[i - 1], 1 + hi[i - 1]))
        };
        lo[i] = a;
        hi[i] = b;
        if a != b {
            out.push(n);
        }
    }
    out
}

/// `d_p(n) = ||n||_P - ||p|| log_p n` for a member `p_star`.
pub fn p_defect(ps: &PSet, n: u64, p_star: u64) -> Result<f64, PalgoError> {
    let (ones, _) = p_complexity(ps, n)?;
    defect_from_ones(ps, ones, n, p_star)
}

fn defect_from_ones(ps: &PSet, ones: u64, n: u64, p_star: u64) -> Result<f64, PalgoError> {
    let star_ones = ps.member_ones(p_star).ok_or(PalgoError::NotMember(p_star))?;
    Ok(ones as f64 - star_ones as f64 * (n as f64).ln() / (p_star as f64).ln())
}

/// Outcome of scanning a range against the conjectured and the proven upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBoundReport {
    pub checked: u64,
    /// `||q||_log + (q - 1) / log_3 q`
    pub hypothesis_bound: f64,
    /// `||Q||_log + (q - 1) / log_3 q`, `Q` the member with the largest `||Q||_log`
    pub theorem_bound: f64,
    pub hypothesis_violations: u64,
    pub theorem_violations: u64,
    /// First few violating `n` of the conjectured bound.
    pub examples: Vec<u64>,
    pub max_log_complexity: f64,
    pub argmax: u64,
}

const REPORT_EXAMPLES: usize = 32;

/// Largest range scanned with a single counts table; beyond it each `n` is traced.
const DP_SCAN_LIMIT: u64 = 50_000_000;

pub fn check_upper_bound(ps: &PSet, n_from: u64, n_to: u64) -> UpperBoundReport {
    let n_from = n_from.max(2);
    let q = ps.q();
    let tail = (q - 1) as f64 / log3(q as f64);
    let hypothesis_bound = ps.member_ones(q).unwrap() as f64 / log3(q as f64) + tail;
    let big_q = ps.max_log_member();
    let theorem_bound = ps.member_ones(big_q).unwrap() as f64 / log3(big_q as f64) + tail;

    let mut report = UpperBoundReport {
        checked: 0,
        hypothesis_bound,
        theorem_bound,
        hypothesis_violations: 0,
        theorem_violations: 0,
        examples: Vec::new(),
        max_log_complexity: f64::NEG_INFINITY,
        argmax: 0,
    };
    if n_from > n_to {
        return report;
    }
    let counts = (n_to <= DP_SCAN_LIMIT).then(|| p_complexity_counts(ps, n_to));
    for n in n_from..=n_to {
        let ones = match &counts {
            Some(c) => c[n as usize],
            None => p_trace(ps, n).unwrap()[0].ones,
        };
        let value = ones as f64 / log3(n as f64);
        report.checked += 1;
        if value > report.max_log_complexity {
            report.max_log_complexity = value;
            report.argmax = n;
        }
        if value > hypothesis_bound + BOUND_TOLERANCE {
            report.hypothesis_violations += 1;
            if report.examples.len() < REPORT_EXAMPLES {
                report.examples.push(n);
            }
        }
        if value > theorem_bound + BOUND_TOLERANCE {
            report.theorem_violations += 1;
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartlyConditionRow {
    pub p: u64,
    /// `(||p|| + q - 2) / log_q p`
    pub lhs: f64,
    pub holds: bool,
}

/// Per-member check of `(||p|| + q - 2) / log_q p <= ||q|| + q - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartlyConditionReport {
    pub q: u64,
    /// `||q|| + q - 1`
    pub rhs: f64,
    pub rows: Vec<PartlyConditionRow>,
}

impl PartlyConditionReport {
    /// True when every member passes (vacuously for a singleton set).
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

pub fn check_partly_condition(ps: &PSet) -> PartlyConditionReport {
    let q = ps.q();
    let q_ones = ps.member_ones(q).unwrap();
    let rhs = (q_ones + q - 1) as f64;
    let rows = ps
        .primes
        .iter()
        .zip(&ps.ones)
        .skip(1)
        .map(|(&p, &ones)| {
            let log_q_p = (p as f64).ln() / (q as f64).ln();
            let lhs = (ones + q - 2) as f64 / log_q_p;
            PartlyConditionRow {
                p,
                lhs,
                holds: lhs <= rhs,
            }
        })
        .collect();
    PartlyConditionReport { q, rhs, rows }
}

/// A point of the log-complexity spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumPoint {
    pub n: BigUint,
    pub ones: u64,
    pub log_complexity: f64,
}

/// Natural logarithm of an arbitrary-size positive integer.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return (n.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

impl SpectrumPoint {
    pub fn new(n: BigUint, ones: u64) -> SpectrumPoint {
        let log_complexity = ones as f64 / (ln_big(&n) / 3f64.ln());
        SpectrumPoint {
            n,
            ones,
            log_complexity,
        }
    }
}

/// Power-pair spectrum `p^a q^b` for `a in 0..=a_max`, `b in 0..=b_max`
/// (excluding `a = b = 0`), with the trace cross-check for small members.
#[derive(Debug, Clone)]
pub struct PowerPairSpectrum {
    pub points: Vec<SpectrumPoint>,
    /// Grid points with `p^a q^b <= VERIFY_LIMIT` compared against a full trace.
    pub verified: usize,
    pub mismatches: Vec<(u32, u32)>,
}

pub const POWER_PAIR_VERIFY_LIMIT: u64 = 1_000_000;

pub fn spectrum_power_pairs(
    ps: &PSet,
    p: u64,
    q: u64,
    a_max: u32,
    b_max: u32,
) -> Result<PowerPairSpectrum, PalgoError> {
    let p_ones = ps.member_ones(p).ok_or(PalgoError::NotMember(p))?;
    let q_ones = ps.member_ones(q).ok_or(PalgoError::NotMember(q))?;
    let (lp, lq) = (log3(p as f64), log3(q as f64));
    let mut out = PowerPairSpectrum {
        points: Vec::new(),
        verified: 0,
        mismatches: Vec::new(),
    };
    for a in 0..=a_max {
        for b in 0..=b_max {
            if a == 0 && b == 0 {
                continue;
            }
            let n = BigUint::from(p).pow(a) * BigUint::from(q).pow(b);
            let ones = a as u64 * p_ones + b as u64 * q_ones;
            let log_complexity = ones as f64 / (a as f64 * lp + b as f64 * lq);
            if let Some(small) = n.to_u64().filter(|&v| v <= POWER_PAIR_VERIFY_LIMIT) {
                out.verified += 1;
                if p_trace(ps, small)?[0].ones != ones {
                    out.mismatches.push((a, b));
                }
            }
            out.points.push(SpectrumPoint {
                n,
                ones,
                log_complexity,
            });
        }
    }
    Ok(out)
}

/// A number built by `m` applications of `X -> q - 1 + qX` on top of
/// `q^(kl) n0`, with its predicted P-complexity.
#[derive(Debug, Clone, PartialEq)]
pub struct DensePoint {
    pub m: u64,
    pub l: u64,
    /// `prod (p - 1)` over members other than `q`
    pub k: u64,
    /// Least positive `n0` with `n0 = -1 (mod p)` for every member.
    pub n0: u64,
    pub n: BigUint,
    pub predicted_ones: u64,
    /// Full trace result when `n` fits in 64 bits.
    pub traced_ones: Option<u64>,
}

impl DensePoint {
    pub fn matches(&self) -> Option<bool> {
        self.traced_ones.map(|t| t == self.predicted_ones)
    }

    pub fn spectrum_point(&self) -> SpectrumPoint {
        SpectrumPoint::new(self.n.clone(), self.predicted_ones)
    }
}

pub fn dense_point(ps: &PSet, m: u64, l: u64) -> Result<DensePoint, PalgoError> {
    dense_point_with_budget(ps, m, l, DEFAULT_DENSE_BIT_BUDGET)
}

pub fn dense_point_with_budget(
    ps: &PSet,
    m: u64,
    l: u64,
    bit_budget: u64,
) -> Result<DensePoint, PalgoError> {
    let q = ps.q();
    let over = |needed: u64| PalgoError::OutOfBudget {
        needed,
        budget: bit_budget,
    };
    let k = ps.primes[1..]
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p - 1))
        .ok_or_else(|| over(u64::MAX))?;
    let residues: Vec<(u64, u64)> = ps.primes.iter().map(|&p| (p - 1, p)).collect();
    let (n0, _) = crt(&residues).ok_or_else(|| over(u64::MAX))?;
    // the least residue is 0 only when P is empty; keep n0 positive anyway
    let n0 = u64::try_from(n0.max(1)).map_err(|_| over(u64::MAX))?;

    let exponent = k
        .checked_mul(l)
        .and_then(|kl| kl.checked_add(m))
        .ok_or_else(|| over(u64::MAX))?;
    let approx_bits = (exponent as f64 * (q as f64).log2() + (n0 as f64).log2()).ceil();
    if approx_bits > bit_budget as f64 {
        return Err(over(approx_bits.min(u64::MAX as f64) as u64));
    }
    let q_pow_m = BigUint::from(q).pow(m as u32);
    let n = BigUint::from(q).pow(exponent as u32) * n0 + &q_pow_m - BigUint::one();

    let q_ones = ps.member_ones(q).unwrap();
    // with n0 = 1 the run stops at q itself (a member), so nothing is spent on n0
    let tail = if n0 > 1 { p_trace(ps, n0)?[0].ones } else { 0 };
    let predicted_ones = m * (q_ones + q - 1) + k * l * q_ones + tail;
    let traced_ones = match n.to_u64() {
        Some(small) => Some(p_trace(ps, small)?[0].ones),
        None => None,
    };
    Ok(DensePoint {
        m,
        l,
        k,
        n0,
        n,
        predicted_ones,
        traced_ones,
    })
}

/// How many `n <= limit` fall below `||p||_log - eps`, `p` the member with
/// the smallest log-complexity, with counts at each power of ten.
#[derive(Debug, Clone, PartialEq)]
pub struct LowSpectrumReport {
    pub eps: f64,
    pub threshold: f64,
    pub count: u64,
    /// Every qualifying `n`, ascending.
    pub hits: Vec<u64>,
    /// `(N, count of qualifying n <= N)` for `N = 10, 100, ...` up to `limit`.
    pub by_decade: Vec<(u64, u64)>,
}

pub fn low_spectrum_scan(ps: &PSet, limit: u64, eps: f64) -> LowSpectrumReport {
    let p = ps.min_log_member();
    let threshold = ps.member_ones(p).unwrap() as f64 / log3(p as f64) - eps;
    let counts = p_complexity_counts(ps, limit);
    let mut report = LowSpectrumReport {
        eps,
        threshold,
        count: 0,
        hits: Vec::new(),
        by_decade: Vec::new(),
    };
    let mut decade = 10;
    for n in 2..=limit {
        if counts[n as usize] as f64 / log3(n as f64) < threshold {
            report.count += 1;
            report.hits.push(n);
        }
        if n == decade {
            report.by_decade.push((n, report.count));
            decade = decade.saturating_mul(10);
        }
    }
    report
}

/// Defect behaviour along P-algorithm runs, measured with the member of
/// smallest log-complexity.
#[derive(Debug, Clone, PartialEq)]
pub struct DefectReport {
    pub p_star: u64,
    /// `1 / (p^(1/||p||) - 1)`: from here on `X -> X + 1` cannot lower the defect.
    pub increment_threshold: f64,
    pub divide_steps: u64,
    pub divide_decreases: Vec<u64>,
    pub increment_steps: u64,
    pub increment_decreases: Vec<u64>,
}

/// Checks every step `n -> next` taken by the algorithm for `2 <= n <= limit`.
/// Every run through a number below `limit` uses exactly these steps, so this
/// covers all runs started at or below `limit`.
pub fn defect_monotonicity(ps: &PSet, limit: u64) -> DefectReport {
    let p_star = ps.min_log_member();
    let star_ones = ps.member_ones(p_star).unwrap() as f64;
    let increment_threshold = 1.0 / ((p_star as f64).powf(1.0 / star_ones) - 1.0);
    let counts = p_complexity_counts(ps, limit);
    let defect = |n: u64| defect_from_ones(ps, counts[n as usize], n, p_star).unwrap();
    let mut report = DefectReport {
        p_star,
        increment_threshold,
        divide_steps: 0,
        divide_decreases: Vec::new(),
        increment_steps: 0,
        increment_decreases: Vec::new(),
    };
    for n in 2..=limit {
        match classify(ps, n) {
            StepOp::Divide(p) => {
                report.divide_steps += 1;
                if defect(n) < defect(n / p) - BOUND_TOLERANCE {
                    report.divide_decreases.push(n);
                }
            }
            StepOp::Decrement if (n - 1) as f64 >= increment_threshold => {
                report.increment_steps += 1;
                if defect(n) < defect(n - 1) - BOUND_TOLERANCE {
                    report.increment_decreases.push(n);
                }
            }
            _ => {}
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::build_table;
    use std::sync::OnceLock;

    fn table() -> &'static ComplexityTable {
        static T: OnceLock<ComplexityTable> = OnceLock::new();
        T.get_or_init(|| build_table(1000, Basis::PlusTimes).unwrap())
    }

    fn pset(primes: &[u64]) -> PSet {
        PSet::new(primes, table()).unwrap()
    }

    #[test]
    fn construction_validates_members() {
        assert!(matches!(PSet::new(&[], table()), Err(PalgoError::Empty)));
        assert!(matches!(PSet::new(&[4], table()), Err(PalgoError::NotPrime(4))));
        assert!(matches!(PSet::new(&[5, 5], table()), Err(PalgoError::Duplicate(5))));
        assert!(matches!(PSet::new(&[1009], table()), Err(PalgoError::Table(_))));
        let minus = build_table(20, Basis::PlusTimesMinus).unwrap();
        assert!(matches!(PSet::new(&[2], &minus), Err(PalgoError::WrongBasis)));
        let ps = pset(&[11, 5]);
        assert_eq!(ps.primes(), &[5, 11]);
        assert_eq!(ps.q(), 5);
        assert_eq!(ps.member_ones(11), Some(8));
        assert_eq!(ps.ex(5).unwrap().count_ones(), 5);
    }

    #[test]
    fn traces_the_worked_examples() {
        let two = pset(&[2]);
        let (ones, e) = p_complexity(&two, 7).unwrap();
        assert_eq!(ones, 6);
        assert_eq!(e.render(), "(1+((1+1)*(1+(1+1))))");

        let ps = pset(&[5, 11]);
        let (ones, e) = p_complexity(&ps, 157).unwrap();
        assert_eq!(ones, 19);
        assert_eq!(e.evaluate(), Ok(157));
        let five = ps.ex(5).unwrap().render();
        assert_eq!(
            e.render(),
            format!("(1+(1+({five}*(1+({five}*(1+{five}))))))")
        );
        let (ones, e) = p_complexity(&ps, 77).unwrap();
        assert_eq!(ones, 15);
        assert_eq!(e.evaluate(), Ok(77));
        assert_eq!(p_complexity(&ps, 1).unwrap().0, 1);
        assert!(matches!(p_complexity(&ps, 0), Err(PalgoError::ZeroInput)));
    }

    #[test]
    fn small_values_are_unary() {
        for primes in [&[2u64][..], &[3, 5], &[5, 11], &[7, 13]] {
            let ps = pset(primes);
            for n in 1..=5 {
                assert_eq!(p_complexity(&ps, n).unwrap().0, n, "{primes:?} {n}");
            }
        }
    }

    #[test]
    fn counts_table_matches_traces() {
        let ps = pset(&[3, 7]);
        let counts = p_complexity_counts(&ps, 5000);
        for n in 1..=5000 {
            assert_eq!(counts[n as usize], p_trace(&ps, n).unwrap()[0].ones);
        }
    }

    #[test]
    fn defects_at_the_base_cases() {
        let two = pset(&[2]);
        assert_eq!(p_defect(&two, 1, 2).unwrap(), 1.0);
        assert_eq!(p_defect(&two, 2, 2).unwrap(), 0.0);
        assert_eq!(p_defect(&two, 4, 2).unwrap(), 0.0);
        assert!(matches!(p_defect(&two, 4, 3), Err(PalgoError::NotMember(3))));
    }

    #[test]
    fn partly_condition_cases() {
        let wide = build_table(200, Basis::PlusTimes).unwrap();
        let ps = PSet::new(&[163, 167], &wide).unwrap();
        let r = check_partly_condition(&ps);
        assert_eq!(r.rhs, 177.0);
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0].p, 167);
        assert!(r.rows[0].lhs > 177.1 && r.rows[0].lhs < 177.2, "{}", r.rows[0].lhs);
        assert!(!r.holds());

        for p in [3u64, 5, 7, 11, 13, 101, 997] {
            assert!(check_partly_condition(&pset(&[2, p])).holds(), "p = {p}");
        }
        let single = check_partly_condition(&pset(&[7]));
        assert!(single.rows.is_empty() && single.holds());
    }

    #[test]
    fn upper_bound_at_a_member() {
        let ps = pset(&[5, 11]);
        let r = check_upper_bound(&ps, 5, 5);
        assert_eq!(r.checked, 1);
        assert_eq!(r.max_log_complexity, 5.0 / log3(5.0));
        assert!(r.max_log_complexity < r.hypothesis_bound);
        assert!(r.hypothesis_bound <= r.theorem_bound);
    }

    #[test]
    fn power_pairs_formula_and_trace() {
        let ps = pset(&[2, 3]);
        let s = spectrum_power_pairs(&ps, 2, 3, 1, 1).unwrap();
        let six = s.points.iter().find(|pt| pt.n == BigUint::from(6u32)).unwrap();
        assert_eq!(six.ones, 5);
        assert!((six.log_complexity - 5.0 / log3(6.0)).abs() < 1e-12);
        assert!((six.log_complexity - 3.0657).abs() < 1e-4);
        let same = spectrum_power_pairs(&ps, 3, 3, 1, 0).unwrap();
        assert_eq!(same.points[0].log_complexity, 3.0);
        assert!(matches!(spectrum_power_pairs(&ps, 5, 3, 1, 1), Err(PalgoError::NotMember(5))));

        let wide = spectrum_power_pairs(&pset(&[5, 11]), 5, 11, 12, 8).unwrap();
        assert!(wide.verified > 10);
        assert!(wide.mismatches.is_empty());
    }

    #[test]
    fn dense_points_for_small_sets() {
        let two = pset(&[2]);
        let d = dense_point(&two, 1, 1).unwrap();
        assert_eq!((d.n0, d.k, d.n.clone()), (1, 1, BigUint::from(5u32)));
        assert_eq!(d.predicted_ones, 5);
        assert_eq!(d.matches(), Some(true));
        let d = dense_point(&two, 2, 1).unwrap();
        assert_eq!(d.n, BigUint::from(11u32));
        assert_eq!(d.predicted_ones, 8);
        assert_eq!(d.matches(), Some(true));

        let ps = pset(&[5, 11]);
        let d = dense_point(&ps, 1, 1).unwrap();
        assert_eq!((d.n0, d.k), (54, 10));
        assert_eq!(d.n, BigUint::from(5u64.pow(11) * 54 + 4));
        assert_eq!(d.matches(), Some(true));

        assert!(matches!(
            dense_point_with_budget(&ps, 100, 100, 64),
            Err(PalgoError::OutOfBudget { .. })
        ));
        let big = dense_point(&ps, 40, 3).unwrap();
        assert_eq!(big.traced_ones, None);
        assert!(big.spectrum_point().log_complexity > 3.0);
    }

    #[test]
    fn big_logarithm() {
        let n = BigUint::from(3u32).pow(200);
        assert!((ln_big(&n) / 3f64.ln() - 200.0).abs() < 1e-9);
        assert_eq!(ln_big(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn member_extremes() {
        let ps = pset(&[2, 3, 5]);
        assert_eq!(ps.min_log_member(), 3);
        assert_eq!(ps.max_log_member(), 5);
    }
}
