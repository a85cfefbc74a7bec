//! Verification suites over parameter grids derived from a single `max_n`.
//!
//! | suite        | grid                                                                     |
//! |--------------|--------------------------------------------------------------------------|
//! | `core`       | every key `1 <= n <= max_n`, `0 <= p <= n`, `0 <= k <= n`: all evaluators vs. the table, positivity, divisibility, closed forms, symmetry, recurrence |
//! | `gf`         | `1 <= n <= max_n`: bivariate and univariate generating functions, helper sequence, closing identity; contiguity for `-6 <= a <= 6`, `-8 <= b <= 0`, `c = 2`, degree 16 |
//! | `partition`  | moment theorem for `1 <= n <= max_n`, `0 <= r <= 4`, `1 <= s <= 4`; partition counts |
//! | `lemma`      | step lemma for `r + s <= max_n`, `1 <= k <= r+s+1`; sum identity for `n <= max_n` |
//! | `conjecture` | one and two orders up to weight `min(max_n, 8)` over `n <= max_n`; three orders up to weight `min(max_n, 9)` at `n = |r|, |r|+1, |r|+2` |
//!
//! Work is split into independent units that run through [`Exec`]; each unit
//! returns its own tally and the tallies are concatenated in grid order, so
//! reports are identical for every execution strategy and worker count.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use crate::exact::{binomial, ExactInt, ExactRat};
use crate::genbinom::{
    check_lemma, check_recurrence, check_sum_identity, divisibility_of, gb_canonical, gb_table,
    is_positive, special_values, Formula, GbKey, GbTable,
};
use crate::par::Exec;
use crate::partitions::{
    check_conjecture, check_moment_identity, conjecture_coeffs, enumerate_partitions,
    partition_count, MultiIndex,
};
use crate::series::{
    check_bipoly_recurrence, check_bivariate_gf_with, check_closing_identity, check_column_gf_at,
    check_contiguity, gb_bipoly_from, lucas_univariate_check,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Core,
    Gf,
    Partition,
    Lemma,
    Conjecture,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Core,
        Suite::Gf,
        Suite::Partition,
        Suite::Lemma,
        Suite::Conjecture,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Gf => "gf",
            Suite::Partition => "partition",
            Suite::Lemma => "lemma",
            Suite::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                format!("unknown suite `{s}` (expected core, gf, partition, lemma or conjecture)")
            })
    }
}

/// One failed case with both evaluated sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} != {}", self.case, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Default)]
struct Tally {
    cases: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn compare<T, C>(&mut self, case: C, lhs: &T, rhs: &T)
    where
        T: PartialEq + fmt::Display,
        C: FnOnce() -> String,
    {
        self.cases += 1;
        if lhs != rhs {
            self.fail(case(), lhs.to_string(), rhs.to_string());
        }
    }

    fn expect<C: FnOnce() -> (String, String, String)>(&mut self, ok: bool, witness: C) {
        self.cases += 1;
        if !ok {
            let (case, lhs, rhs) = witness();
            self.fail(case, lhs, rhs);
        }
    }

    fn fail(&mut self, case: String, lhs: String, rhs: String) {
        self.failures.push(Failure { case, lhs, rhs });
    }

    fn merge(units: Vec<Tally>) -> Tally {
        let mut out = Tally::default();
        for unit in units {
            out.cases += unit.cases;
            out.failures.extend(unit.failures);
        }
        out
    }
}

/// Overwrites one stored table entry with `entry + 1` before any suite reads
/// it. Exists to confirm the suites catch a corrupted value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableFault {
    pub n: u32,
    pub p: u32,
    pub k: u32,
}

#[derive(Debug, Clone)]
pub struct Verifier {
    max_n: u32,
    exec: Exec,
    faults: Vec<TableFault>,
}

impl Verifier {
    pub fn new(max_n: u32) -> Self {
        assert!(max_n >= 1, "max_n must be at least 1");
        Verifier {
            max_n,
            exec: Exec::default(),
            faults: Vec::new(),
        }
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_fault(mut self, fault: TableFault) -> Self {
        self.faults.push(fault);
        self
    }

    pub fn max_n(&self) -> u32 {
        self.max_n
    }

    /// Tables for `n = 1..=max_n` with faults applied; index `n - 1`.
    fn tables(&self) -> Vec<GbTable> {
        let ns: Vec<u32> = (1..=self.max_n).collect();
        let mut tables = self.exec.map(&ns, |&n| gb_table(n));
        for fault in &self.faults {
            if (1..=self.max_n).contains(&fault.n) && fault.p <= fault.n && fault.k <= fault.n {
                let table = &mut tables[fault.n as usize - 1];
                let bumped = table.get(fault.p, fault.k) + ExactInt::one();
                table.set_unchecked(fault.p, fault.k, bumped);
            }
        }
        tables
    }

    pub fn run(&self, suite: Suite) -> SuiteReport {
        let start = Instant::now();
        let tally = match suite {
            Suite::Core => self.core(),
            Suite::Gf => self.gf(),
            Suite::Partition => self.partition(),
            Suite::Lemma => self.lemma(),
            Suite::Conjecture => self.conjecture(),
        };
        SuiteReport {
            suite,
            cases: tally.cases,
            failures: tally.failures,
            wall_time: start.elapsed(),
        }
    }

    pub fn run_all(&self, suites: &[Suite]) -> Vec<SuiteReport> {
        suites.iter().map(|&s| self.run(s)).collect()
    }

    fn core(&self) -> Tally {
        let tables = self.tables();
        let rows: Vec<(u32, u32)> = (1..=self.max_n)
            .flat_map(|n| (0..=n).map(move |p| (n, p)))
            .collect();
        let units = self.exec.map(&rows, |&(n, p)| {
            let table = &tables[n as usize - 1];
            let mut t = Tally::default();
            for k in 0..=n {
                core_key(&mut t, table, GbKey::new(n, p, k).expect("p <= n"));
            }
            t
        });
        Tally::merge(units)
    }

    fn gf(&self) -> Tally {
        let tables = self.tables();
        let ns: Vec<u32> = (1..=self.max_n).collect();
        let mut units = self.exec.map(&ns, |&n| {
            let table = &tables[n as usize - 1];
            let mut t = Tally::default();
            let gf = check_bivariate_gf_with(table);
            t.compare(|| format!("bivariate gf n={n}"), &gf.lhs, &gf.rhs);
            let bipoly = gb_bipoly_from(table);
            t.compare(
                || format!("bivariate x-mirror n={n}"),
                &bipoly,
                &bipoly.mirror_x(n),
            );
            if n >= 3 {
                let rec = check_bipoly_recurrence(n);
                t.compare(|| format!("bivariate recurrence n={n}"), &rec.lhs, &rec.rhs);
            }
            for p in 0..=n {
                let col = check_column_gf_at(table, p);
                t.compare(|| format!("univariate gf n={n} p={p}"), &col.lhs, &col.rhs);
            }
            let helper = lucas_univariate_check(n);
            t.compare(
                || format!("helper sequence n={n}"),
                &helper.lhs,
                &helper.rhs,
            );
            let closing = check_closing_identity(n);
            t.compare(
                || format!("closing identity n={n}"),
                &closing.lhs,
                &closing.rhs,
            );
            t
        });
        let grid: Vec<(i64, i64)> = (-6..=6)
            .flat_map(|a| (-8..=0).map(move |b| (a, b)))
            .collect();
        units.extend(self.exec.map(&grid, |&(a, b)| {
            let mut t = Tally::default();
            let c = check_contiguity(a, b, 2, 16);
            t.compare(|| format!("contiguity a={a} b={b} c=2"), &c.lhs, &c.rhs);
            t
        }));
        Tally::merge(units)
    }

    fn partition(&self) -> Tally {
        let grid: Vec<(u32, u32, u32)> = (1..=self.max_n)
            .flat_map(|n| (0..=4).flat_map(move |r| (1..=4).map(move |s| (n, r, s))))
            .collect();
        let mut units = self.exec.map(&grid, |&(n, r, s)| {
            let mut t = Tally::default();
            let c = check_moment_identity(n, r, s);
            t.compare(
                || format!("moment theorem n={n} r={r} s={s}"),
                &c.lhs,
                &c.rhs,
            );
            t
        });
        let ns: Vec<u32> = (1..=self.max_n).collect();
        units.extend(self.exec.map(&ns, |&n| {
            let mut t = Tally::default();
            let count = ExactInt::from(enumerate_partitions(n).count());
            t.compare(
                || format!("partition count n={n}"),
                &count,
                &partition_count(n),
            );
            t
        }));
        Tally::merge(units)
    }

    fn lemma(&self) -> Tally {
        let lemma_grid: Vec<(u32, u32, u32)> = (0..self.max_n)
            .flat_map(|r| {
                (1..=self.max_n - r).flat_map(move |s| (1..=r + s + 1).map(move |k| (r, s, k)))
            })
            .collect();
        let mut units = self.exec.map(&lemma_grid, |&(r, s, k)| {
            let mut t = Tally::default();
            let c = check_lemma(r, s, k);
            t.compare(|| format!("step lemma r={r} s={s} k={k}"), &c.lhs, &c.rhs);
            t
        });
        let rows: Vec<(u32, u32)> = (1..=self.max_n)
            .flat_map(|n| (1..=n).map(move |p| (n, p)))
            .collect();
        units.extend(self.exec.map(&rows, |&(n, p)| {
            let mut t = Tally::default();
            for k in 1..=n {
                let c = check_sum_identity(n, p, k);
                t.compare(|| format!("sum identity n={n} p={p} k={k}"), &c.lhs, &c.rhs);
            }
            t
        }));
        Tally::merge(units)
    }

    fn conjecture(&self) -> Tally {
        let low = self.max_n.min(8);
        let mut grid: Vec<Vec<u32>> = (1..=low).map(|r| vec![r]).collect();
        for w in 2..=low {
            grid.extend((1..w).map(|r| vec![r, w - r]));
        }
        let max_n = self.max_n;
        let mut units = self.exec.map(&grid, |orders| {
            let mut t = Tally::default();
            let r = MultiIndex::new(orders.clone()).expect("positive orders");
            let w = r.weight();
            for n in 1..=max_n {
                let got = conjecture_coeffs(n, &r);
                t.expect(got.shape_ok(), || {
                    (
                        format!("conjecture shape r={r} n={n}"),
                        format!("{:?}", got.overflow),
                        "[]".into(),
                    )
                });
                for (k, c) in &got.coeffs {
                    let want = match orders.as_slice() {
                        [r1] => binomial(*r1 as i64, *k as i64),
                        [r1, s] => gb_canonical(GbKey::new(r1 + s, *s, *k).expect("s <= r+s")),
                        _ => unreachable!(),
                    };
                    t.compare(
                        || format!("conjecture r={r} n={n} k={k}"),
                        c,
                        &ExactRat::from_integer(want),
                    );
                }
                t.compare(
                    || format!("conjecture length r={r} n={n}"),
                    &got.coeffs.len(),
                    &(n.min(w) as usize),
                );
            }
            t
        });

        let top = self.max_n.min(9);
        let mut triples = Vec::new();
        for a in 1..=top {
            for b in a..=top {
                for c in b..=top {
                    if a + b + c <= top {
                        triples.push(vec![a, b, c]);
                    }
                }
            }
        }
        units.extend(self.exec.map(&triples, |orders| {
            let mut t = Tally::default();
            let r = MultiIndex::new(orders.clone()).expect("positive orders");
            let w = r.weight();
            let report = check_conjecture(&r, &[w, w + 1, w + 2], Exec::Sequential);
            t.expect(report.shape_ok(), || {
                (
                    format!("conjecture shape r={r}"),
                    "nonzero overflow".into(),
                    "none".into(),
                )
            });
            t.expect(report.all_integral(), || {
                (
                    format!("conjecture integrality r={r}"),
                    "non-integral c_k".into(),
                    "integers".into(),
                )
            });
            t.expect(report.all_positive(), || {
                (
                    format!("conjecture positivity r={r}"),
                    "c_k <= 0".into(),
                    "positive".into(),
                )
            });
            t.expect(report.stable, || {
                (
                    format!("conjecture stability r={r}"),
                    "c_k depends on n".into(),
                    "stable".into(),
                )
            });
            let mut reversed = orders.clone();
            reversed.reverse();
            let permuted = conjecture_coeffs(w, &MultiIndex::new(reversed).expect("positive"));
            t.compare(
                || format!("conjecture order symmetry r={r}"),
                &format!("{:?}", report.runs[0].coeffs.coeffs),
                &format!("{:?}", permuted.coeffs),
            );
            t
        }));
        Tally::merge(units)
    }
}

fn core_key(t: &mut Tally, table: &GbTable, key: GbKey) {
    let (n, p, k) = (key.n(), key.p(), key.k());
    let entry = table.get(p, k);
    if k == 0 {
        let want = if p == 0 || p == n {
            ExactInt::one()
        } else {
            ExactInt::zero()
        };
        t.compare(|| format!("k=0 convention at {key}"), &entry, &want);
        return;
    }
    for formula in Formula::ALL {
        if !formula.applies(key) {
            continue;
        }
        t.cases += 1;
        match formula.evaluate(key) {
            Ok(v) if v == entry => {}
            Ok(v) => t.fail(
                format!("consensus {formula} at {key}"),
                format!("table={entry}"),
                format!("{formula}={v}"),
            ),
            Err(e) => t.fail(
                format!("consensus {formula} at {key}"),
                format!("table={entry}"),
                format!("error: {e}"),
            ),
        }
    }
    t.expect(is_positive(&entry), || {
        (
            format!("positivity at {key}"),
            entry.to_string(),
            "> 0".into(),
        )
    });
    t.expect(divisibility_of(key, &entry), || {
        (
            format!("divisibility at {key}"),
            entry.to_string(),
            format!("n divides k*value and p*value (n={n}, k={k}, p={p})"),
        )
    });
    for (form, v) in special_values(key) {
        t.compare(
            || format!("closed form {} at {key}", form.name()),
            &entry,
            &v,
        );
    }
    t.compare(
        || format!("symmetry at {key}"),
        &entry,
        &table.get(n - p, k),
    );
    if n >= 2 && p >= 1 {
        let c = check_recurrence(n, p, k);
        t.compare(|| format!("recurrence at {key}"), &c.lhs, &c.rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>(), Ok(s));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let v = Verifier::new(5);
        for report in v.run_all(&Suite::ALL) {
            assert!(report.passed(), "{}: {:?}", report.suite, report.failures);
            assert!(report.cases > 0);
        }
    }

    #[test]
    fn fault_is_reported_with_its_key() {
        let v = Verifier::new(5).with_fault(TableFault { n: 4, p: 2, k: 3 });
        let report = v.run(Suite::Core);
        assert!(!report.passed());
        assert!(report
            .failures
            .iter()
            .any(|f| f.case == "consensus sum at gb(n=4,p=2,k=3)" && f.lhs == "table=17"));
    }

    #[test]
    fn strategies_agree() {
        let seq = Verifier::new(6)
            .with_exec(Exec::Sequential)
            .run(Suite::Core);
        let par = Verifier::new(6).with_exec(Exec::Parallel).run(Suite::Core);
        assert_eq!(seq.cases, par.cases);
        assert_eq!(seq.failures, par.failures);
    }
}
