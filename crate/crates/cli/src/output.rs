//! Plain, CSV and JSON renderers. Data payloads never contain timing; wall
//! times go to their own line (plain), column (CSV) or field (JSON).

use std::io::{self, Write};

use clap::ValueEnum;
use genbinom_core::genbinom::{GbKey, GbTable};
use genbinom_core::partitions::ConjectureReport;
use genbinom_core::verify::SuiteReport;
use genbinom_core::{ExactInt, ExactRat};
use serde::Serialize;
use serde_json::{Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

pub struct Printer {
    format: Format,
}

fn int_json(v: &ExactInt) -> Number {
    v.to_string().parse().expect("integer literal")
}

fn rat_json(v: &ExactRat) -> Value {
    if v.is_integer() {
        Value::Number(int_json(v.numer()))
    } else {
        Value::String(v.to_string())
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Serialize)]
struct ValueEntry<'a> {
    formula: &'a str,
    value: Number,
}

#[derive(Serialize)]
struct ValueDoc<'a> {
    n: u32,
    p: u32,
    k: u32,
    values: Vec<ValueEntry<'a>>,
}

#[derive(Serialize)]
struct TableDoc {
    n: u32,
    rows: Vec<Vec<Number>>,
}

#[derive(Serialize)]
struct FailureDoc<'a> {
    case: &'a str,
    lhs: &'a str,
    rhs: &'a str,
}

#[derive(Serialize)]
struct SuiteDoc<'a> {
    suite: &'a str,
    cases: usize,
    passed: bool,
    failures: Vec<FailureDoc<'a>>,
    wall_ms: f64,
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    max_n: u32,
    passed: bool,
    suites: Vec<SuiteDoc<'a>>,
}

#[derive(Serialize)]
struct CoeffDoc {
    k: u32,
    c: Value,
}

#[derive(Serialize)]
struct RunDoc {
    n: u32,
    coeffs: Vec<CoeffDoc>,
    integral: bool,
    positive: bool,
}

#[derive(Serialize)]
struct ConjectureDoc<'a> {
    r: &'a [u32],
    results: Vec<RunDoc>,
    stable: bool,
}

impl Printer {
    pub fn new(format: Format) -> Self {
        Printer { format }
    }

    fn emit(&self, text: String) {
        let mut out = io::stdout().lock();
        // a closed pipe is not worth a panic
        let _ = out.write_all(text.as_bytes());
    }

    fn json<T: Serialize>(&self, doc: &T) {
        let mut text = serde_json::to_string(doc).expect("serializable");
        text.push('\n');
        self.emit(text);
    }

    pub fn values(&self, key: GbKey, values: &[(String, ExactInt)]) {
        match self.format {
            Format::Plain => self.emit(values.iter().map(|(_, v)| format!("{v}\n")).collect()),
            Format::Csv => {
                let mut text = String::from("formula,value\n");
                for (name, v) in values {
                    text += &format!("{name},{v}\n");
                }
                self.emit(text);
            }
            Format::Json => self.json(&ValueDoc {
                n: key.n(),
                p: key.p(),
                k: key.k(),
                values: values
                    .iter()
                    .map(|(name, v)| ValueEntry {
                        formula: name,
                        value: int_json(v),
                    })
                    .collect(),
            }),
        }
    }

    pub fn table(&self, table: &GbTable) {
        let n = table.n();
        match self.format {
            Format::Csv => {
                let mut text = String::from("p\\k");
                for k in 0..=n {
                    text += &format!(",{k}");
                }
                text.push('\n');
                for (p, row) in table.rows().iter().enumerate() {
                    let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    text += &format!("{p},{}\n", cells.join(","));
                }
                self.emit(text);
            }
            Format::Json => self.json(&TableDoc {
                n,
                rows: table
                    .rows()
                    .iter()
                    .map(|row| row.iter().map(int_json).collect())
                    .collect(),
            }),
            Format::Plain => {
                let width = table
                    .rows()
                    .iter()
                    .flatten()
                    .map(|v| v.to_string().len())
                    .max()
                    .unwrap_or(1)
                    .max(n.to_string().len());
                let mut text = format!("{:>4}", "p\\k");
                for k in 0..=n {
                    text += &format!(" {k:>width$}");
                }
                text.push('\n');
                for (p, row) in table.rows().iter().enumerate() {
                    text += &format!("{p:>4}");
                    for v in row {
                        text += &format!(" {:>width$}", v.to_string());
                    }
                    text.push('\n');
                }
                self.emit(text);
            }
        }
    }

    pub fn verify(&self, max_n: u32, reports: &[SuiteReport]) {
        let passed = reports.iter().all(|r| r.passed());
        let ms = |r: &SuiteReport| r.wall_time.as_secs_f64() * 1e3;
        match self.format {
            Format::Plain => {
                let mut text = String::new();
                for r in reports {
                    text += &format!(
                        "suite {}: {} cases, {} failures\n",
                        r.suite,
                        r.cases,
                        r.failures.len()
                    );
                    for f in &r.failures {
                        text += &format!("  FAIL {f}\n");
                    }
                }
                text += &format!(
                    "verify max-n={max_n}: {}\n",
                    if passed { "PASS" } else { "FAIL" }
                );
                for r in reports {
                    text += &format!("# wall time {}: {:.1} ms\n", r.suite, ms(r));
                }
                self.emit(text);
            }
            Format::Csv => {
                let mut text = String::from("suite,cases,failures,wall_ms\n");
                for r in reports {
                    text += &format!(
                        "{},{},{},{:.1}\n",
                        r.suite,
                        r.cases,
                        r.failures.len(),
                        ms(r)
                    );
                    for f in &r.failures {
                        eprintln!("FAIL {} {f}", r.suite);
                    }
                }
                self.emit(text);
            }
            Format::Json => self.json(&VerifyDoc {
                max_n,
                passed,
                suites: reports
                    .iter()
                    .map(|r| SuiteDoc {
                        suite: r.suite.name(),
                        cases: r.cases,
                        passed: r.passed(),
                        failures: r
                            .failures
                            .iter()
                            .map(|f| FailureDoc {
                                case: &f.case,
                                lhs: &f.lhs,
                                rhs: &f.rhs,
                            })
                            .collect(),
                        wall_ms: (ms(r) * 10.0).round() / 10.0,
                    })
                    .collect(),
            }),
        }
    }

    pub fn conjecture(&self, report: &ConjectureReport) {
        match self.format {
            Format::Plain => {
                let mut text = format!("r = {}\n", report.r);
                for run in &report.runs {
                    let coeffs: Vec<String> = run
                        .coeffs
                        .coeffs
                        .iter()
                        .map(|(k, c)| format!("c_{k}={c}"))
                        .collect();
                    text += &format!(
                        "n={}: {} [integral={}, positive={}]\n",
                        run.coeffs.n,
                        coeffs.join(" "),
                        run.integral,
                        run.positive
                    );
                }
                text += &format!("stable: {}\n", report.stable);
                self.emit(text);
            }
            Format::Csv => {
                let mut text = String::from("n,k,c\n");
                for run in &report.runs {
                    for (k, c) in &run.coeffs.coeffs {
                        text += &format!("{},{k},{}\n", run.coeffs.n, csv_field(&c.to_string()));
                    }
                }
                self.emit(text);
            }
            Format::Json => self.json(&ConjectureDoc {
                r: report.r.orders(),
                results: report
                    .runs
                    .iter()
                    .map(|run| RunDoc {
                        n: run.coeffs.n,
                        coeffs: run
                            .coeffs
                            .coeffs
                            .iter()
                            .map(|(k, c)| CoeffDoc {
                                k: *k,
                                c: rat_json(c),
                            })
                            .collect(),
                        integral: run.integral,
                        positive: run.positive,
                    })
                    .collect(),
                stable: report.stable,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn big_integers_stay_exact_in_json() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let text = serde_json::to_string(&int_json(&big)).unwrap();
        assert_eq!(text, "123456789012345678901234567890");
        let half = ExactRat::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rat_json(&half), Value::String("1/2".into()));
    }

    #[test]
    fn csv_quoting() {
        assert_eq!(csv_field("1/2"), "1/2");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
    }
}
