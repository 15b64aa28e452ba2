// SPDX-License-Identifier: Apache-2.0

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use onecount::palgo::{
    check_partly_condition, check_upper_bound, defect_monotonicity, dense_point_with_budget,
    divisor_choice_counterexamples, low_spectrum_scan, p_complexity, p_complexity_counts,
    spectrum_power_pairs, PSet, DEFAULT_DENSE_BIT_BUDGET,
};
use onecount::powerdigits::{
    compression_profile, digit_sum_series, max_exponent, mean_std, Histogram,
};
use onecount::tables::{load_table, save_table};
use onecount::{build_table, selfridge_e, Basis, ComplexityTable};

use crate::neighbors::neighbors_report;
use crate::output::{Cell, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "onecount", version, about = "Integer complexity tables and related experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// plus = {1,+,*}, minus = {1,+,*,-}
    #[arg(long)]
    pub basis: Option<Basis>,
    /// Table file; defaults to <table-dir>/<basis>.ict
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[arg(long, env = "ONECOUNT_TABLE_DIR", default_value = ".")]
    pub table_dir: PathBuf,
}

impl TableArgs {
    fn basis(&self) -> Basis {
        self.basis.unwrap_or(Basis::PlusTimes)
    }

    fn path(&self) -> PathBuf {
        self.table
            .clone()
            .unwrap_or_else(|| self.table_dir.join(format!("{}.ict", self.basis())))
    }

    fn load(&self) -> Result<ComplexityTable> {
        let path = self.path();
        if !path.exists() {
            bail!(
                "no table at {}; create one with `onecount build --basis {} --limit N`",
                path.display(),
                self.basis()
            );
        }
        let t = load_table(&path).with_context(|| format!("loading {}", path.display()))?;
        if let Some(b) = self.basis {
            ensure!(t.basis() == b, "{} holds a {} table, not {b}", path.display(), t.basis());
        }
        Ok(t)
    }
}

#[derive(Debug, Args)]
pub struct OutArgs {
    /// Write here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

impl OutArgs {
    fn emit(&self, table: &Table) -> Result<()> {
        match &self.out {
            Some(path) => {
                let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                table.write(self.format, BufWriter::new(f))
            }
            None => table.write(self.format, std::io::stdout().lock()),
        }
    }
}

/// Inclusive range written `A..B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub from: u64,
    pub to: u64,
}

impl std::str::FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once("..").ok_or("expected A..B")?;
        let from = a.trim().parse::<u64>().map_err(|e| format!("range start: {e}"))?;
        let to = b.trim().parse::<u64>().map_err(|e| format!("range end: {e}"))?;
        if from > to {
            return Err(format!("empty range {from}..{to}"));
        }
        Ok(Range { from, to })
    }
}

/// Histogram bins written `lo:hi:width`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bins {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
}

impl std::str::FromStr for Bins {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, width] = parts[..] else {
            return Err("expected lo:hi:width".into());
        };
        let num = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v}: {e}"));
        Ok(Bins {
            lo: num(lo)?,
            hi: num(hi)?,
            width: num(width)?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanReport {
    /// n,ones,log_complexity for each n
    Series,
    /// Conjectured and proven upper bounds over the range
    Bounds,
    /// Per-member sufficient condition for the conjectured bound
    Partly,
    /// Defect changes along algorithm steps up to the range end
    Defects,
    /// Numbers whose count depends on the chosen divisor
    Choice,
    /// Count of numbers below the minimal member log-complexity
    Low,
    /// Analytic log-complexity of p^a q^b for the two smallest members
    Pairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stat {
    S3,
    Sigma,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a complexity table and save it
    Build {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Look up complexities
    #[command(group = clap::ArgGroup::new("which").required(true).args(["n", "range"]))]
    Query {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        range: Option<Range>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Print a shortest expression
    Expr {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Smallest number of each complexity
    ETable {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        k: Option<u8>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// j = 1: largest number of complexity k; otherwise j-th largest of complexity at most k
    Extremal {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        k: Option<u8>,
        #[arg(long, default_value_t = 1)]
        j: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Numbers with the largest log-complexity
    Champions {
        #[command(flatten)]
        table: TableArgs,
        /// Scan 2..=limit (default: the whole table)
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, default_value_t = 14)]
        top: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the P-algorithm on one number or a range
    #[command(group = clap::ArgGroup::new("which").required(true).args(["n", "range"]))]
    Palgo {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        range: Option<Range>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Range checks for a prime set
    PalgoScan {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value = "2..100000")]
        range: Range,
        #[arg(long, value_enum, default_value = "series")]
        report: ScanReport,
        #[arg(long, default_value_t = 0.01)]
        eps: f64,
        #[arg(long, default_value_t = 20)]
        a_max: u32,
        #[arg(long, default_value_t = 20)]
        b_max: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Dense-point construction with predicted and traced counts
    DensePoints {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long, default_value_t = 4)]
        m_max: u64,
        #[arg(long, default_value_t = 2)]
        l_max: u64,
        #[arg(long, default_value_t = DEFAULT_DENSE_BIT_BUDGET)]
        budget_bits: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Base-q digit sums of p^n for n = 1..=N
    Digitsum {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Histogram of the normed digit sums for n = 1..=N
    Histogram {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "-4:4:0.25", allow_hyphen_values = true)]
        bins: Bins,
        #[arg(long, value_enum, default_value = "s3")]
        stat: Stat,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compression points of the powers of p
    Compress {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        p: u64,
        /// Largest exponent (default: largest inside the table)
        #[arg(long)]
        n: Option<u32>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Factorizations next to the smallest number of each complexity
    Neighbors {
        #[command(flatten)]
        table: TableArgs,
        /// Largest rank (default: every rank present)
        #[arg(long)]
        k: Option<u8>,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn log_cell(t: &ComplexityTable, n: u64) -> Cell {
    Cell::opt_float(t.log_complexity(n).ok())
}

fn log3(n: f64) -> f64 {
    n.ln() / 3f64.ln()
}

fn member_table(primes: &[u64]) -> Result<PSet> {
    ensure!(!primes.is_empty(), "--primes needs at least one prime");
    let top = *primes.iter().max().unwrap();
    ensure!(top <= 100_000_000, "members above 10^8 are not supported");
    // shortest member expressions only depend on smaller numbers, so a table up to max(P) suffices
    let t = build_table(top, Basis::PlusTimes)?;
    Ok(PSet::new(primes, &t)?)
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build { table, limit, out } => {
            let path = table.path();
            let start = Instant::now();
            let t = build_table(limit, table.basis())?;
            let built = start.elapsed().as_secs_f64();
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            save_table(&t, &path).with_context(|| format!("writing {}", path.display()))?;
            eprintln!("built {} table to {limit} in {built:.2} s", t.basis());
            let mut o = Table::new(&["basis", "limit", "max_complexity", "path"]);
            o.push(vec![
                Cell::Text(t.basis().to_string()),
                Cell::int(limit),
                Cell::int(*t.values().iter().max().unwrap()),
                Cell::Text(path.display().to_string()),
            ]);
            out.emit(&o)
        }
        Command::Query { table, n, range, out } => {
            let t = table.load()?;
            let (from, to) = match (n, range) {
                (Some(n), _) => (n, n),
                (None, Some(r)) => (r.from, r.to),
                (None, None) => unreachable!("clap requires one of --n, --range"),
            };
            let mut o = Table::new(&["n", "ones", "log_complexity"]);
            for n in from..=to {
                o.push(vec![Cell::int(n), Cell::int(t.complexity(n)?), log_cell(&t, n)]);
            }
            out.emit(&o)
        }
        Command::Expr { table, n, out } => {
            let t = table.load()?;
            let e = t.shortest_expression(n)?;
            let mut o = Table::new(&["n", "ones", "expression"]);
            o.push(vec![Cell::int(n), Cell::int(e.count_ones()), Cell::Text(e.render())]);
            out.emit(&o)
        }
        Command::ETable { table, k, out } => {
            let t = table.load()?;
            let mut o = Table::new(&["k", "e", "log_complexity"]);
            let rows: Vec<(u8, u64)> = match k {
                Some(k) => vec![(k, t.e_min(k)?)],
                None => t
                    .e_min_all()
                    .iter()
                    .enumerate()
                    .filter_map(|(k, e)| e.map(|e| (k as u8, e)))
                    .collect(),
            };
            for (k, e) in rows {
                o.push(vec![Cell::int(k), Cell::int(e), log_cell(&t, e)]);
            }
            out.emit(&o)
        }
        Command::Extremal { table, k, j, out } => {
            let t = table.load()?;
            let ks: Vec<u8> = match k {
                Some(k) => vec![k],
                None => (1..=u8::MAX).take_while(|&k| selfridge_e(k) <= t.limit() as u128).collect(),
            };
            let mut o = Table::new(&["k", "j", "n", "ones"]);
            for k in ks {
                let n = t.e_kth(k, j)?;
                o.push(vec![Cell::int(k), Cell::int(j), Cell::int(n), Cell::int(t.complexity(n)?)]);
            }
            out.emit(&o)
        }
        Command::Champions { table, limit, top, out } => {
            let t = table.load()?;
            let bound = limit.unwrap_or(t.limit());
            let mut o = Table::new(&["rank", "n", "ones", "log_complexity"]);
            for (i, r) in t.champions(bound, top)?.iter().enumerate() {
                o.push(vec![
                    Cell::int(i as u64 + 1),
                    Cell::int(r.n),
                    Cell::int(r.ones),
                    Cell::Float(r.log_complexity),
                ]);
            }
            out.emit(&o)
        }
        Command::Palgo { primes, n, range, out } => {
            let ps = member_table(&primes)?;
            let o = if let Some(n) = n {
                let (ones, e) = p_complexity(&ps, n)?;
                let mut o = Table::new(&["n", "ones", "log_complexity", "expression"]);
                let log = (n > 1).then(|| ones as f64 / log3(n as f64));
                o.push(vec![Cell::int(n), Cell::int(ones), Cell::opt_float(log), Cell::Text(e.render())]);
                o
            } else {
                let r = range.unwrap();
                series_table(&ps, r)?
            };
            out.emit(&o)
        }
        Command::PalgoScan { primes, range, report, eps, a_max, b_max, out } => {
            let ps = member_table(&primes)?;
            out.emit(&scan_table(&ps, range, report, eps, a_max, b_max)?)
        }
        Command::DensePoints { primes, m_max, l_max, budget_bits, out } => {
            let ps = member_table(&primes)?;
            let mut o = Table::new(&["m", "l", "n", "predicted_ones", "traced_ones", "match"]);
            for m in 1..=m_max {
                for l in 1..=l_max {
                    let d = dense_point_with_budget(&ps, m, l, budget_bits)?;
                    o.push(vec![
                        Cell::int(m),
                        Cell::int(l),
                        Cell::Text(d.n.to_string()),
                        Cell::int(d.predicted_ones),
                        Cell::opt_int(d.traced_ones),
                        d.matches().map_or(Cell::Empty, Cell::Bool),
                    ]);
                }
            }
            out.emit(&o)
        }
        Command::Digitsum { p, q, n, out } => {
            let mut o = Table::new(&["n", "S", "s3", "sigma"]);
            for row in digit_sum_series(p, q, n)? {
                let row = row?;
                o.push(vec![Cell::int(row.n), Cell::int(row.s), Cell::opt_float(row.s3), Cell::opt_float(row.sigma)]);
            }
            out.emit(&o)
        }
        Command::Histogram { p, q, n, bins, stat, out } => {
            ensure!(
                stat != Stat::S3 || (p, q) == (2, 3),
                "s3 is defined for p = 2, q = 3 only; use --stat sigma"
            );
            let mut h = Histogram::new(bins.lo, bins.hi, bins.width)?;
            let mut values = Vec::with_capacity(n as usize);
            for row in digit_sum_series(p, q, n)? {
                let row = row?;
                let v = match stat {
                    Stat::S3 => row.s3,
                    Stat::Sigma => row.sigma,
                };
                if let Some(v) = v {
                    h.add(v);
                    values.push(v);
                }
            }
            if let Some((mean, std)) = mean_std(&values) {
                eprintln!(
                    "samples {}, mean {mean:.6}, std {std:.6}, underflow {}, overflow {}",
                    values.len(),
                    h.underflow,
                    h.overflow
                );
            }
            let mut o = Table::new(&["bin_lo", "bin_hi", "count"]);
            for (a, b, c) in h.bins() {
                o.push(vec![Cell::Float(a), Cell::Float(b), Cell::int(c)]);
            }
            out.emit(&o)
        }
        Command::Compress { table, p, n, out } => {
            let t = table.load()?;
            let n_max = n.unwrap_or_else(|| max_exponent(p, t.limit()));
            let mut o = Table::new(&["n", "ones", "best_split", "best", "compression"]);
            for r in compression_profile(p, n_max, &t)? {
                o.push(vec![
                    Cell::int(r.n),
                    Cell::int(r.ones),
                    Cell::opt_int(r.best_split),
                    Cell::int(r.best),
                    Cell::Bool(r.compression),
                ]);
            }
            out.emit(&o)
        }
        Command::Neighbors { table, k, out } => {
            let t = table.load()?;
            let k_max = match k {
                Some(k) => k,
                None => {
                    let all = t.e_min_all();
                    all.iter().skip(1).take_while(|e| e.is_some()).count() as u8
                }
            };
            let mut o = Table::new(&["k", "e", "e_minus_2", "e_minus_1", "e_factors", "e_plus_1"]);
            for r in neighbors_report(&t, k_max)? {
                let mut row = vec![Cell::int(r.k), Cell::int(r.e)];
                row.extend(r.factors.into_iter().map(Cell::Text));
                o.push(row);
            }
            out.emit(&o)
        }
    }
}

fn series_table(ps: &PSet, r: Range) -> Result<Table> {
    ensure!(r.from >= 1, "the range starts at 1");
    let counts = p_complexity_counts(ps, r.to);
    let mut o = Table::new(&["n", "ones", "log_complexity"]);
    for n in r.from..=r.to {
        let ones = counts[n as usize];
        let log = (n > 1).then(|| ones as f64 / log3(n as f64));
        o.push(vec![Cell::int(n), Cell::int(ones), Cell::opt_float(log)]);
    }
    Ok(o)
}

fn scan_table(ps: &PSet, r: Range, report: ScanReport, eps: f64, a_max: u32, b_max: u32) -> Result<Table> {
    Ok(match report {
        ScanReport::Series => series_table(ps, r)?,
        ScanReport::Bounds => {
            let b = check_upper_bound(ps, r.from, r.to);
            let mut o = Table::new(&[
                "n_from",
                "n_to",
                "checked",
                "hypothesis_bound",
                "theorem_bound",
                "hypothesis_violations",
                "theorem_violations",
                "max_log_complexity",
                "argmax",
            ]);
            o.push(vec![
                Cell::int(r.from.max(2)),
                Cell::int(r.to),
                Cell::int(b.checked),
                Cell::Float(b.hypothesis_bound),
                Cell::Float(b.theorem_bound),
                Cell::int(b.hypothesis_violations),
                Cell::int(b.theorem_violations),
                Cell::Float(b.max_log_complexity),
                Cell::int(b.argmax),
            ]);
            o
        }
        ScanReport::Partly => {
            let c = check_partly_condition(ps);
            let mut o = Table::new(&["q", "p", "lhs", "rhs", "holds"]);
            for row in &c.rows {
                o.push(vec![Cell::int(c.q), Cell::int(row.p), Cell::Float(row.lhs), Cell::Float(c.rhs), Cell::Bool(row.holds)]);
            }
            o
        }
        ScanReport::Defects => {
            let d = defect_monotonicity(ps, r.to);
            let mut o = Table::new(&[
                "p_star",
                "increment_threshold",
                "divide_steps",
                "divide_decreases",
                "increment_steps",
                "increment_decreases",
            ]);
            o.push(vec![
                Cell::int(d.p_star),
                Cell::Float(d.increment_threshold),
                Cell::int(d.divide_steps),
                Cell::int(d.divide_decreases.len() as u64),
                Cell::int(d.increment_steps),
                Cell::int(d.increment_decreases.len() as u64),
            ]);
            o
        }
        ScanReport::Choice => {
            let mut o = Table::new(&["n"]);
            for n in divisor_choice_counterexamples(ps, r.to) {
                if n >= r.from {
                    o.push(vec![Cell::int(n)]);
                }
            }
            o
        }
        ScanReport::Low => {
            let l = low_spectrum_scan(ps, r.to, eps);
            let mut o = Table::new(&["up_to", "count", "threshold"]);
            let ends_on_decade = l.by_decade.last().is_some_and(|&(n, _)| n == r.to);
            for (n, c) in l.by_decade {
                o.push(vec![Cell::int(n), Cell::int(c), Cell::Float(l.threshold)]);
            }
            if !ends_on_decade {
                o.push(vec![Cell::int(r.to), Cell::int(l.count), Cell::Float(l.threshold)]);
            }
            o
        }
        ScanReport::Pairs => {
            let members = ps.primes();
            let (p, q) = (members[0], *members.get(1).unwrap_or(&members[0]));
            let s = spectrum_power_pairs(ps, p, q, a_max, b_max)?;
            if !s.mismatches.is_empty() {
                bail!("trace disagrees with the formula at {:?}", s.mismatches);
            }
            let mut o = Table::new(&["a", "b", "n", "ones", "log_complexity"]);
            let mut it = s.points.into_iter();
            for a in 0..=a_max {
                for b in 0..=b_max {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let pt = it.next().unwrap();
                    o.push(vec![Cell::int(a), Cell::int(b), Cell::Text(pt.n.to_string()), Cell::int(pt.ones), Cell::Float(pt.log_complexity)]);
                }
            }
            o
        }
    })
}
