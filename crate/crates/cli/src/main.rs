//! Command-line front end for the operator calculus: parse and print
//! operators in the canonical document format, run adjoints, compatibility
//! conditions and parametrization tests, build the gallery operators, and run
//! the registered identity checks.
//!
//! Exit codes: 0 all requested work passed; 1 a check or property failed;
//! 2 usage or input error; 3 a Gröbner budget was exceeded.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use diffdual::budget::Budget;
use diffdual::checks::{run_all, run_check, CheckResult, CHECK_NAMES};
use diffdual::coeff::parse_coeff;
use diffdual::engine::{op_rank, syzygy_module};
use diffdual::error::Error;
use diffdual::gallery::{
    algebraic_map, dual_operator, lie_operator, linearized_curvature, AlgebraicKind,
    CurvatureKind, DualKind, Metric, MetricKind,
};
use diffdual::op::DiffOp;
use diffdual::props::run_property;
use diffdual::seq::{diff_trd, parametrization_test};
use diffdual::textfmt::{entry_to_text, parse_operator, print_operator};

#[derive(Parser)]
#[command(name = "diffdual", version, about = "exact calculus for linear differential operators")]
struct Cli {
    /// Wall-clock bound in seconds for Gröbner runs (exit 3 when exceeded).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for the randomized property subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Omit timing lines so reports are byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Formal adjoint of an operator document.
    Adjoint {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Composition a ∘ b of two operator documents.
    Compose {
        #[arg(short, long)]
        a: PathBuf,
        #[arg(short, long)]
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generating compatibility conditions (iterated --depth times).
    Cc {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Five-step parametrization test.
    Paramtest {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Generic row rank over the skew fraction field.
    Rank {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Differential transcendence degree.
    Difftrd {
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Emit a gallery operator as an operator document.
    Gallery {
        /// killing | conformal-killing | christoffel | riemann | ricci |
        /// trace | einstein | dalembertian | bar | bar-inv | trace-free |
        /// elation-to-ricci | ricci-to-elation | decompose-t2 | cauchy |
        /// div | adricci-sigma
        name: String,
        #[arg(long)]
        n: usize,
        /// minkowski | euclid | path to an n x n metric file
        #[arg(long, default_value = "minkowski")]
        metric: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Closed-form dimension table.
    Dims {
        #[arg(long)]
        n: usize,
    },
    /// Run a registered identity check (or all of them).
    Check {
        /// Check name; see `check --list`.
        name: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "minkowski")]
        metric: String,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
    },
    /// Run a randomized property suite (involution | contravariance |
    /// divergence | nf-idempotence), seeded by --seed.
    Prop {
        name: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match cli.budget {
        Some(secs) => Budget::seconds(secs),
        None => Budget::unlimited(),
    };
    match dispatch(&cli, &budget) {
        Ok(code) => code,
        Err(Error::BudgetExceeded) => {
            eprintln!("error: budget exceeded");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: &Cli, budget: &Budget) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Cmd::Adjoint { input, output } => {
            let op = read_op(input)?;
            write_out(output.as_deref(), &print_operator(&op.adjoint()))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Compose { a, b, output } => {
            let a = read_op(a)?;
            let b = read_op(b)?;
            write_out(output.as_deref(), &print_operator(&a.compose(&b)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Cc { input, depth, output } => {
            let mut op = read_op(input)?;
            for _ in 0..*depth {
                op = syzygy_module(&op, budget)?;
            }
            write_out(output.as_deref(), &print_operator(&op))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Paramtest { input } => {
            let op = read_op(input)?;
            let report = parametrization_test(&op, budget)?;
            print!("{}", param_report_text(&report));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Rank { input } => {
            let op = read_op(input)?;
            println!("rank: {}", op_rank(&op, budget)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Difftrd { input } => {
            let op = read_op(input)?;
            println!("difftrd: {}", diff_trd(&op, budget)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Gallery { name, n, metric, output } => {
            let m = parse_metric(metric, *n)?;
            let op = gallery_op(name, &m)?;
            write_out(output.as_deref(), &print_operator(&op))?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Dims { n } => {
            let d = diffdual::gallery::dims_table(*n);
            println!("n: {}", d.n);
            println!("T: {}", d.t);
            println!("F0: {}", d.f0);
            println!("F0hat: {}", d.f0_hat);
            println!("F1: {}", d.f1);
            println!("F1hat: {}", d.f1_hat);
            println!("F2: {}", d.f2);
            println!("F2hat: {}", d.f2_hat);
            println!("g1: {}", d.g1);
            println!("g1hat: {}", d.g1_hat);
            println!("g2hat: {}", d.g2_hat);
            let sq: Vec<String> = d.s_q.iter().map(|v| v.to_string()).collect();
            println!("SqT*: {}", sq.join(","));
            let lr: Vec<String> = d.lambda_r.iter().map(|v| v.to_string()).collect();
            println!("LrT*: {}", lr.join(","));
            println!("F1-F1hat: {}", d.f1_minus_f1_hat);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check { name, n, metric, all, list } => {
            if *list {
                for c in CHECK_NAMES {
                    println!("{c}");
                }
                return Ok(ExitCode::SUCCESS);
            }
            let kind = metric_kind(metric)?;
            let results = if *all {
                run_all(kind, budget)?
            } else {
                let name = name
                    .as_deref()
                    .ok_or_else(|| Error::UnknownCheck("(missing name; see check --list)".into()))?;
                vec![run_check(name, *n, kind, budget)?]
            };
            let mut all_pass = true;
            for r in &results {
                print!("{}", check_text(r, cli.no_timing));
                all_pass &= r.pass;
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Prop { name, count } => {
            let report = run_property(name, cli.seed, *count, budget)?;
            println!("property: {}", report.name);
            println!("seed: {}", report.seed);
            println!("cases: {}", report.cases);
            println!("result: {}", if report.pass() { "pass" } else { "fail" });
            for f in &report.failures {
                println!("witness: {f}");
            }
            Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
    }
}

fn read_op(path: &PathBuf) -> Result<DiffOp, Error> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Unsupported(format!("stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?
    };
    parse_operator(&text)
}

fn write_out(path: Option<&std::path::Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::Unsupported(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn metric_kind(s: &str) -> Result<MetricKind, Error> {
    match s {
        "minkowski" => Ok(MetricKind::Minkowski),
        "euclid" => Ok(MetricKind::Euclid),
        other => Err(Error::Unsupported(format!(
            "metric must be minkowski or euclid here, got {other}"
        ))),
    }
}

/// minkowski | euclid | path to a metric file: n lines of n comma-separated
/// coefficient expressions.
fn parse_metric(s: &str, n: usize) -> Result<Metric, Error> {
    match s {
        "minkowski" => Ok(Metric::minkowski(n)),
        "euclid" => Ok(Metric::euclid(n)),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Unsupported(format!("{path}: {e}")))?;
            let mut rows = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let row: Result<Vec<_>, Error> =
                    line.split(',').map(|c| parse_coeff(c.trim(), n)).collect();
                rows.push(row?);
            }
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(Error::Unsupported(format!("metric file must be {n}x{n}")));
            }
            Metric::custom(n, rows)
        }
    }
}

fn gallery_op(name: &str, m: &Metric) -> Result<DiffOp, Error> {
    match name {
        "killing" => lie_operator(m, false),
        "conformal-killing" => lie_operator(m, true),
        "christoffel" => linearized_curvature(m, CurvatureKind::Christoffel),
        "riemann" => linearized_curvature(m, CurvatureKind::Riemann),
        "ricci" => linearized_curvature(m, CurvatureKind::Ricci),
        "trace" => linearized_curvature(m, CurvatureKind::Trace),
        "einstein" => linearized_curvature(m, CurvatureKind::Einstein),
        "dalembertian" => linearized_curvature(m, CurvatureKind::Dalembertian),
        "bar" => algebraic_map(m, AlgebraicKind::Bar),
        "bar-inv" => algebraic_map(m, AlgebraicKind::BarInv),
        "trace-free" => algebraic_map(m, AlgebraicKind::TraceFree),
        "elation-to-ricci" => algebraic_map(m, AlgebraicKind::ElationToRicci),
        "ricci-to-elation" => algebraic_map(m, AlgebraicKind::RicciToElation),
        "decompose-t2" => algebraic_map(m, AlgebraicKind::DecomposeT2),
        "cauchy" => dual_operator(m, DualKind::Cauchy),
        "div" => dual_operator(m, DualKind::Div),
        "adricci-sigma" => dual_operator(m, DualKind::AdRicciSigma),
        other => Err(Error::Unsupported(format!("unknown gallery operator {other}"))),
    }
}

fn indent_doc(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

fn param_report_text(r: &diffdual::seq::ParamReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("parametrizable: {}\n", r.parametrizable));
    out.push_str(&format!("witnesses: {}\n", r.witnesses.len()));
    out.push_str("input:\n");
    out.push_str(&indent_doc(&print_operator(&r.input)));
    out.push_str("adjoint1:\n");
    out.push_str(&indent_doc(&print_operator(&r.adjoint1)));
    out.push_str("candidate:\n");
    out.push_str(&indent_doc(&print_operator(&r.candidate)));
    out.push_str("parametrization:\n");
    out.push_str(&indent_doc(&print_operator(&r.parametrization)));
    out.push_str("recomputed-cc:\n");
    out.push_str(&indent_doc(&print_operator(&r.recomputed_cc)));
    for w in &r.witnesses {
        let parts: Vec<String> = w
            .comps()
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| format!("[{}] {}", i + 1, entry_to_text(p)))
            .collect();
        out.push_str(&format!("witness-row: {}\n", parts.join("; ")));
    }
    out
}

fn check_text(r: &CheckResult, no_timing: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!("check: {}\n", r.name));
    if !r.params.is_empty() {
        let ps: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        out.push_str(&format!("params: {}\n", ps.join(" ")));
    }
    out.push_str(&format!("result: {}\n", if r.pass { "pass" } else { "fail" }));
    if !no_timing {
        out.push_str(&format!("time: {:?}\n", r.elapsed));
    }
    for n in &r.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    for w in &r.witnesses {
        out.push_str(&format!("witness: {w}\n"));
    }
    out
}
