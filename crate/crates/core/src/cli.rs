//! Command-line driver. [`cli_dispatch`] does all the work and returns the
//! exit code and output instead of touching the process, so it is testable;
//! the `lightning` binary is a thin wrapper around it.
//!
//! Exit codes: 0 success, 1 a check or computation failed, 2 usage, I/O or
//! parse error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::decompose::{decompose, idempotent_oracle, split_free, verify_decomposition, DecomposeError, DEFAULT_ORACLE_BOUND};
use crate::field::Field;
use crate::io::{build_module, parse_module, print_module, to_dot};
use crate::module::{random_basis_change, shift, truncate_above, AlgebraParams, Generator, Module, Variant};
use crate::operators::{filtration, margolis_homology};
use crate::suite::{run_paper_checks, PaperCheckParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    A,
    B,
}

#[derive(Debug, Parser)]
#[command(name = "lightning", about = "Graded modules over E(e1,e2): flashes, filtrations, decompositions")]
struct Cli {
    /// Output format for results.
    #[arg(long, global = true, value_enum, default_value = "text")]
    report: ReportFormat,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a module from a flash expression or a document and print its document.
    Build {
        /// e.g. "M(0) + L(2,1,0)@4 + inf(0)@trunc=21"
        expr: Option<String>,
        /// Start from a module document instead of an expression.
        #[arg(long, conflicts_with = "expr")]
        from: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, default_value = "1,3")]
        degs: String,
        #[arg(long, value_enum, default_value = "b")]
        algebra: AlgebraArg,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
        /// Cut everything above this degree.
        #[arg(long, allow_hyphen_values = true)]
        truncate: Option<i64>,
        /// Apply a seeded random change of basis in every degree.
        #[arg(long)]
        randomize: bool,
        /// Write the document here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Decompose a module into flashes (and free modules over algebra A).
    Decompose {
        file: PathBuf,
        /// Verify the basis certificate.
        #[arg(long)]
        certify: bool,
        /// Cross-check against the endomorphism-ring oracle.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: usize,
    },
    /// Dimensions of the filtration term F_j.
    Filtration {
        file: PathBuf,
        #[arg(long)]
        j: usize,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Margolis homology of one operator.
    Margolis {
        file: PathBuf,
        #[arg(long)]
        op: Generator,
    },
    /// Split off the free summands of an algebra-A module.
    SplitFree { file: PathBuf },
    /// Run the finite-stage checks on M(0) + ... + M(N).
    PaperCheck {
        #[arg(long = "N")]
        n: usize,
        #[arg(long)]
        jmax: usize,
        #[arg(long, default_value_t = 2)]
        field: u64,
        #[arg(long, default_value = "1,3")]
        degs: String,
        /// Truncation degree for the infinite flash (default jmax·gap + |e2|).
        #[arg(long)]
        trunc: Option<i64>,
    },
    /// Emit a diagram of the module.
    Diagram {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: DiagramFormat,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(stdout: String, stderr: String) -> Self {
        Outcome { code: 1, stdout, stderr }
    }

    fn usage(stderr: String) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<DecomposeError> for Failure {
    fn from(e: DecomposeError) -> Self {
        Failure::Check(e.to_string())
    }
}

fn params_from(field: u64, degs: &str, algebra: AlgebraArg) -> Result<AlgebraParams, Failure> {
    let f = Field::new(field).map_err(|e| Failure::Usage(e.to_string()))?;
    let bad = || Failure::Usage(format!("--degs expects 'a,b', got '{degs}'"));
    let (a, b) = degs.split_once(',').ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    let variant = match algebra {
        AlgebraArg::A => Variant::A,
        AlgebraArg::B => Variant::B,
    };
    AlgebraParams::new(f, a, b, variant).map_err(|e| Failure::Usage(e.to_string()))
}

fn load(path: &Path) -> Result<Module, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_module(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Writes through a sibling temporary file so a failed run never leaves a partial file.
fn write_atomically(path: &Path, text: &str) -> Result<(), Failure> {
    let io = |e: std::io::Error| Failure::Usage(format!("{}: {e}", path.display()));
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

fn pretty(v: serde_json::Value) -> String {
    serde_json::to_string_pretty(&v).expect("json serializes") + "\n"
}

/// Runs one command line (`argv[0]` is the program name).
pub fn cli_dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome::ok(text) };
        }
    };
    match run(&cli) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => Outcome::usage(format!("error: {msg}\n")),
        Err(Failure::Check(msg)) => Outcome::fail(String::new(), format!("error: {msg}\n")),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let json = cli.report == ReportFormat::Json;
    match &cli.command {
        Command::Build { expr, from, field, degs, algebra, shift: by, truncate, randomize, output } => {
            let mut m = match (expr, from) {
                (Some(e), None) => {
                    let p = params_from(*field, degs, *algebra)?;
                    build_module(e, &p).map_err(|e| Failure::Usage(e.to_string()))?
                }
                (None, Some(path)) => load(path)?,
                _ => return Err(Failure::Usage("build needs an expression or --from FILE".into())),
            };
            if let Some(k) = by {
                m = shift(&m, *k);
            }
            if let Some(d) = truncate {
                m = truncate_above(&m, *d);
            }
            if *randomize {
                m = random_basis_change(&m, cli.seed);
            }
            let doc = print_module(&m);
            match output {
                Some(path) => {
                    write_atomically(path, &doc)?;
                    Ok(Outcome::ok(if json {
                        pretty(json!({"written": path.display().to_string(), "dims": m.dims()}))
                    } else {
                        format!("wrote {} (dims {})\n", path.display(), m.dims())
                    }))
                }
                None => Ok(Outcome::ok(doc)),
            }
        }
        Command::Decompose { file, certify, oracle, bound } => {
            let m = load(file)?;
            let d = decompose(&m)?;
            let ms = d.multiset();
            let mut failures = Vec::new();
            let mut extra = serde_json::Map::new();
            let mut text = ms.to_string();
            if *certify {
                let v = verify_decomposition(&m, &d);
                if v.holds() {
                    text += "certificate: verified\n";
                } else {
                    text += &format!("certificate: FAILED\n  {}\n", v.problems.join("\n  "));
                    failures.push("certificate failed".to_string());
                }
                extra.insert("certificate".into(), json!({"holds": v.holds(), "problems": v.problems}));
            }
            if *oracle {
                let o = idempotent_oracle(&m, *bound)?;
                let agrees = o.multiset() == ms;
                text += if agrees { "oracle: agrees\n" } else { "oracle: DISAGREES\n" };
                if !agrees {
                    text += &o.multiset().to_string();
                    failures.push("oracle disagrees".to_string());
                }
                extra.insert("oracle".into(), json!({"agrees": agrees, "multiset": o.multiset()}));
            }
            let out = if json {
                let mut obj = serde_json::Map::new();
                obj.insert("multiset".into(), json!(ms));
                obj.extend(extra);
                obj.insert("pass".into(), json!(failures.is_empty()));
                pretty(serde_json::Value::Object(obj))
            } else {
                text
            };
            Ok(if failures.is_empty() { Outcome::ok(out) } else { Outcome::fail(out, failures.join("; ") + "\n") })
        }
        Command::Filtration { file, j, degree } => {
            let m = load(file)?;
            let fj = filtration(&m, *j);
            Ok(Outcome::ok(match (degree, json) {
                (Some(d), false) => format!("dim {}\n", fj.part(*d).dim()),
                (Some(d), true) => pretty(json!({"j": j, "degree": d, "dim": fj.part(*d).dim()})),
                (None, false) => format!("F_{j} dims {}\n", fj.dims()),
                (None, true) => pretty(json!({"j": j, "dims": fj.dims()})),
            }))
        }
        Command::Margolis { file, op } => {
            let m = load(file)?;
            let h = margolis_homology(&m, *op);
            Ok(Outcome::ok(if json {
                pretty(json!({"op": op, "homology": h}))
            } else {
                format!("H(M; {op}) = {h}\n")
            }))
        }
        Command::SplitFree { file } => {
            let m = load(file)?;
            let s = split_free(&m)?;
            let e1e2_zero =
                s.complement.degrees().all(|d| s.complement.composite(Generator::E1, Generator::E2, d).is_zero());
            Ok(Outcome::ok(if json {
                pretty(json!({
                    "free_ranks": s.free_ranks,
                    "complement_dims": s.complement.dims(),
                    "complement_e1e2_zero": e1e2_zero,
                }))
            } else {
                format!(
                    "free ranks {}\ncomplement dims {}\ncomplement e1e2 = 0: {e1e2_zero}\n",
                    s.free_ranks,
                    s.complement.dims()
                )
            }))
        }
        Command::PaperCheck { n, jmax, field, degs, trunc } => {
            let p = params_from(*field, degs, AlgebraArg::B)?;
            let params = match trunc {
                Some(t) => PaperCheckParams::with_trunc(*n, *jmax, *t, p),
                None => PaperCheckParams::new(*n, *jmax, p),
            }
            .map_err(|e| Failure::Usage(e.to_string()))?;
            let report = run_paper_checks(&params);
            let out = if json { report.to_json() + "\n" } else { report.to_text() };
            Ok(match report.first_failure() {
                None => Outcome::ok(out),
                Some(item) => Outcome::fail(out, format!("first failing item: {}\n", item.id)),
            })
        }
        Command::Diagram { file, format: DiagramFormat::Dot } => Ok(Outcome::ok(to_dot(&load(file)?))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        cli_dispatch(std::iter::once("lightning").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&[]).code, 2);
        assert_eq!(run(&["frobnicate"]).code, 2);
        assert_eq!(run(&["paper-check", "--N", "4", "--jmax", "3"]).code, 2);
        assert_eq!(run(&["paper-check", "--N", "1", "--jmax", "3", "--field", "6"]).code, 2);
        assert_eq!(run(&["decompose", "/nonexistent/module.txt"]).code, 2);
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn build_prints_a_document() {
        let o = run(&["build", "M(1)"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("basis x0 0"));
        assert!(o.stdout.contains("e1 x1 = y0"));
        assert_eq!(run(&["build", "M(x)"]).code, 2);
        assert_eq!(run(&["build"]).code, 2);
    }

    #[test]
    fn paper_check_small() {
        let o = run(&["paper-check", "--N", "2", "--jmax", "4"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("all items pass"));
        let j = run(&["--report", "json", "paper-check", "--N", "2", "--jmax", "4", "--field", "5", "--degs", "2,5"]);
        let v: serde_json::Value = serde_json::from_str(&j.stdout).unwrap();
        assert_eq!(v["pass"], json!(true));
        assert_eq!(v["items"].as_array().unwrap().len(), 9);
    }
}
