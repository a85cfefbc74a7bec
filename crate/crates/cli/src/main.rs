//! `genbinom`: compute generalized binomial coefficients, print tables, run
//! the verification suites and probe the partition-moment coefficients.
//!
//! Exit codes: 0 success, 1 identity-check failure, 2 conjecture-shape
//! violation, 64 usage error.

mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use genbinom_core::genbinom::{gb_canonical, Formula, GbKey};
use genbinom_core::partitions::{check_conjecture, MultiIndex};
use genbinom_core::verify::{Suite, TableFault, Verifier};
use genbinom_core::{gb_table, Exec};

use crate::output::{Format, Printer};

pub const EXIT_IDENTITY: u8 = 1;
pub const EXIT_SHAPE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "genbinom",
    version,
    about = "Exact generalized binomial coefficients gb(n, p, k)"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,

    /// Worker threads for parallel sweeps [default: available parallelism].
    #[arg(long, global = true, env = "GENBINOM_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    Def,
    Sum,
    Alt,
    Second,
    Symmetric,
    All,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print gb(n, p, k) by one formula, or by every applicable formula with `--formula all`.
    Value {
        n: u32,
        p: u32,
        k: u32,
        /// `sum` is total on valid keys (k = 0 and k > n included); the others
        /// need 1 <= k <= n, and `second` also p >= 1.
        #[arg(long, value_enum, default_value_t = FormulaArg::Sum)]
        formula: FormulaArg,
    },
    /// Print the (n+1) x (n+1) table, rows p = 0..n, columns k = 0..n.
    Table {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
    },
    /// Run verification suites over grids determined by --max-n.
    ///
    /// core: every key with n <= max-n, all evaluators against the table,
    /// positivity, divisibility, closed forms, symmetry, p-recurrence.
    /// gf: generating functions for n <= max-n, contiguity grid
    /// |a| <= 6, -8 <= b <= 0, c = 2, degree 16.
    /// partition: moment theorem for n <= max-n, 0 <= r <= 4, 1 <= s <= 4.
    /// lemma: step lemma for r + s <= max-n, sum identity for n <= max-n.
    /// conjecture: one and two orders of weight <= min(max-n, 8) for
    /// n <= max-n; three orders of weight <= min(max-n, 9) at n = |r|..|r|+2.
    Verify {
        /// Comma-separated subset of core, gf, partition, lemma, conjecture.
        #[arg(long, value_delimiter = ',', value_parser = parse_suite,
              default_value = "core,gf,partition,lemma,conjecture")]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        /// Adds one to table entry N,P,K before verifying.
        #[arg(long, hide = true, value_delimiter = ',', num_args = 1, value_names = ["N,P,K"])]
        inject_fault: Vec<u32>,
    },
    /// Compute the binomial-basis coefficients c_k of the moment polynomial.
    Conjecture {
        /// Comma-separated orders r_1,...,r_m (each >= 1).
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u32>,
        /// Comma-separated values of n (each >= 1).
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

struct UsageError(String);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    let printer = Printer::new(cli.format);
    let workers = cli.workers;
    match cli.command {
        Command::Value { n, p, k, formula } => cmd_value(&printer, n, p, k, formula),
        Command::Table { n } => {
            printer.table(&gb_table(n));
            Ok(0)
        }
        Command::Verify {
            suites,
            max_n,
            inject_fault,
        } => {
            let mut verifier = Verifier::new(max_n);
            if !inject_fault.is_empty() {
                let [n, p, k] = inject_fault[..] else {
                    return Err(UsageError("--inject-fault takes N,P,K".into()));
                };
                verifier = verifier.with_fault(TableFault { n, p, k });
            }
            let reports = with_workers(workers, || verifier.run_all(&suites))?;
            printer.verify(max_n, &reports);
            let ok = reports.iter().all(|r| r.passed());
            Ok(if ok { 0 } else { EXIT_IDENTITY })
        }
        Command::Conjecture { r, n } => {
            let index = MultiIndex::new(r).map_err(|e| UsageError(e.to_string()))?;
            if n.contains(&0) {
                return Err(UsageError("every --n value must be >= 1".into()));
            }
            let report = with_workers(workers, || check_conjecture(&index, &n, Exec::Parallel))?;
            printer.conjecture(&report);
            if report.shape_ok() {
                Ok(0)
            } else {
                for run in report.runs.iter().filter(|run| !run.coeffs.shape_ok()) {
                    for (k, a) in &run.coeffs.overflow {
                        eprintln!(
                            "shape violation: r={} n={} nonzero basis coefficient a_{k} = {a}",
                            report.r, run.coeffs.n
                        );
                    }
                }
                Ok(EXIT_SHAPE)
            }
        }
    }
}

fn cmd_value(
    printer: &Printer,
    n: u32,
    p: u32,
    k: u32,
    formula: FormulaArg,
) -> Result<u8, UsageError> {
    let key = GbKey::new(n, p, k).map_err(|e| UsageError(e.to_string()))?;
    let single = |f: Formula| -> Result<Vec<(String, _)>, UsageError> {
        let v = f.evaluate(key).map_err(|e| UsageError(e.to_string()))?;
        Ok(vec![(f.name().to_string(), v)])
    };
    let values = match formula {
        FormulaArg::Sum => vec![("sum".to_string(), gb_canonical(key))],
        FormulaArg::Def => single(Formula::Def)?,
        FormulaArg::Alt => single(Formula::Alt)?,
        FormulaArg::Second => single(Formula::Second)?,
        FormulaArg::Symmetric => single(Formula::Symmetric)?,
        FormulaArg::All => {
            let mut out = Vec::new();
            for f in Formula::ALL.into_iter().filter(|f| f.applies(key)) {
                match f.evaluate(key) {
                    Ok(v) => out.push((f.name().to_string(), v)),
                    Err(e) => {
                        eprintln!("formula {f} failed at {key}: {e}");
                        return Ok(EXIT_IDENTITY);
                    }
                }
            }
            if out.is_empty() {
                out.push(("sum".to_string(), gb_canonical(key)));
            }
            out
        }
    };
    printer.values(key, &values);
    let first = &values[0].1;
    if let Some((name, v)) = values.iter().find(|(_, v)| v != first) {
        eprintln!(
            "formula disagreement at {key}: {}={first} but {name}={v}",
            values[0].0
        );
        return Ok(EXIT_IDENTITY);
    }
    Ok(0)
}

#[cfg(feature = "parallel")]
fn with_workers<R: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, UsageError> {
    match workers {
        None => Ok(f()),
        Some(0) => Err(UsageError("--workers must be >= 1".into())),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| UsageError(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn with_workers<R: Send>(
    workers: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, UsageError> {
    match workers {
        Some(0) => Err(UsageError("--workers must be >= 1".into())),
        _ => Ok(f()),
    }
}
