mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use weakcliff::expr::{parse_element, parse_generators};
use weakcliff::geometry::{metric_table, solve_f_constraint};
use weakcliff::quotient::QuotientContext;
use weakcliff::uea::{monopole_part, pbw_normal_form, MultipoleTable};
use weakcliff::verify::{self, Suite, VerifyConfig};
use weakcliff::HalfInteger;

use config::{Algebra, ConfigFile, Format, RunConfig, Signature};

/// Exact computations in tensor, Clifford and weak Clifford algebras.
#[derive(Parser, Debug)]
#[command(name = "weakcliff", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// free, clifford, weak, sym or spin:s
    #[arg(long, global = true)]
    algebra: Option<String>,
    /// Shorthand for `--algebra spin:s`.
    #[arg(long, global = true)]
    spin: Option<String>,
    /// Truncation degree D.
    #[arg(short = 'D', long = "degree", global = true)]
    degree: Option<usize>,
    /// Completion headroom H.
    #[arg(short = 'H', long = "headroom", global = true)]
    headroom: Option<usize>,
    /// text or json
    #[arg(long, global = true)]
    format: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Metric signature `p,q` (default 3,0).
    #[arg(long, global = true, allow_hyphen_values = false)]
    signature: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the multipole on a generator word: `multipole K I1 .. IK`.
    Multipole {
        k: usize,
        indices: Vec<u8>,
    },
    /// Reduce an expression to its normal form in the selected algebra.
    Reduce {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run a check suite and report.
    Verify {
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        kmax: Option<usize>,
        /// Random draws per identity in the reflection suite.
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Tabulate the extended metric on basis blades.
    MetricTable {
        /// Spins to substitute (default 0 1/2 1 3/2).
        spins: Vec<String>,
    },
    /// Cumulative quotient dimensions up to degree D, with the headroom audit.
    Dims,
    /// Solve the closure constraint on the cubic ansatz.
    SolveF,
    /// Monopole part of a generator expression, as a polynomial in C.
    Mon {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

/// Usage and input problems (exit 2) versus failed checks (exit 1).
enum Failure {
    Usage(String),
    Check(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

impl From<weakcliff::Error> for Failure {
    fn from(e: weakcliff::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Resolved {
    file: ConfigFile,
    algebra: Algebra,
    run: RunConfig,
}

fn resolve(g: &Global) -> Result<Resolved, Failure> {
    let file = ConfigFile::from_env()?;
    let spin: Option<HalfInteger> = file
        .pick(g.spin.clone(), "spin")?
        .map(|s: String| s.parse().map_err(|e: weakcliff::Error| e.to_string()))
        .transpose()?;
    let algebra: Algebra = match (file.pick(g.algebra.clone(), "algebra")?, spin) {
        (Some(a), None) => a.parse::<Algebra>()?,
        (None, Some(s)) => Algebra::Spin(s),
        (None, None) => Algebra::Weak,
        (Some(a), Some(s)) => {
            let a: Algebra = a.parse()?;
            if a != Algebra::Spin(s) {
                return Err(Failure::Usage(format!("--algebra {a} conflicts with --spin {s}")));
            }
            a
        }
    };
    let (algebra, note) = algebra.routed();
    if let Some(note) = note {
        eprintln!("{note}");
    }
    let signature: Signature = file
        .pick(g.signature.clone(), "signature")?
        .map(|s: String| s.parse())
        .transpose()?
        .unwrap_or(Signature { p: 3, q: 0 });
    let format: Format = file
        .pick(g.format.clone(), "format")?
        .map(|s: String| s.parse())
        .transpose()?
        .unwrap_or(Format::Text);
    let run = RunConfig {
        algebra: algebra.to_string(),
        signature,
        degree: file.pick(g.degree, "degree")?,
        headroom: file.pick(g.headroom, "headroom")?.unwrap_or(2),
        format,
        seed: file.pick(g.seed, "seed")?.unwrap_or(0),
    };
    Ok(Resolved { file, algebra, run })
}

fn report(command: &str, run: &RunConfig, results: Vec<Value>) -> Value {
    json!({
        "command": command,
        "config": run,
        "results": results,
        "version": env!("CARGO_PKG_VERSION"),
    })
}

fn emit(r: &Resolved, command: &str, text: &str, results: Vec<Value>) {
    match r.run.format {
        Format::Text => println!("{text}"),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report(command, &r.run, results)).expect("serialisable")
        ),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn context(r: &Resolved, degree: usize) -> Result<QuotientContext, Failure> {
    let space = r.run.signature.space();
    let relations = r.algebra.relations(&space)?;
    Ok(QuotientContext::build(&space, relations, degree, r.run.headroom))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let r = resolve(&cli.global)?;
    match cli.command {
        Command::Multipole { k, indices } => {
            if indices.len() != k {
                return Err(Failure::Usage(format!(
                    "multipole of order {k} needs {k} indices, got {}",
                    indices.len()
                )));
            }
            let t = MultipoleTable::new().get(&indices)?;
            emit(&r, "multipole", &t.to_string(), vec![json!({"word": indices, "value": t.to_string()})]);
        }
        Command::Reduce { expr } => {
            let n = r.run.signature.space().dim();
            let x = parse_element(&expr, n)?;
            let degree = r.run.degree.unwrap_or(x.degree().unwrap_or(0).max(1));
            let out = context(&r, degree)?.reduce(&x)?;
            emit(&r, "reduce", &out.to_string(), vec![json!({"input": expr, "output": out.to_string()})]);
        }
        Command::Verify { suite, kmax, cases } => {
            let suite: Suite = r
                .file
                .pick(suite, "suite")?
                .map(|s: String| s.parse::<Suite>())
                .transpose()?
                .unwrap_or(Suite::All);
            let defaults = VerifyConfig::default();
            let cfg = VerifyConfig {
                kmax: r.file.pick(kmax, "kmax")?.unwrap_or(defaults.kmax),
                seed: r.run.seed,
                cases: r.file.pick(cases, "cases")?.unwrap_or(defaults.cases),
                degree: r.run.degree,
                headroom: r.run.headroom,
            };
            let outcomes = verify::run(suite, &cfg);
            let failed = outcomes.iter().filter(|o| !o.pass).count();
            let mut text: Vec<String> = outcomes.iter().map(|o| o.to_string()).collect();
            text.push(format!("{} checks, {failed} failed", outcomes.len()));
            emit(&r, "verify", &text.join("\n"), outcomes.iter().map(to_value).collect());
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} check(s) failed")));
            }
        }
        Command::MetricTable { spins } => {
            let spins = if spins.is_empty() {
                ["0", "1/2", "1", "3/2"].map(String::from).to_vec()
            } else {
                spins
            };
            let spins: Vec<HalfInteger> = spins
                .iter()
                .map(|s| s.parse())
                .collect::<Result<_, weakcliff::Error>>()?;
            let table = metric_table(&spins)?;
            let mut lines = vec![format!(
                "{:<10} {:<10} {:<8} {}",
                "x",
                "y",
                "g_L",
                spins.iter().map(|s| format!("{:>6}", format!("s={s}"))).collect::<Vec<_>>().join(" ")
            )];
            for e in table.iter().filter(|e| e.symbolic != "0") {
                let vals: Vec<String> = spins.iter().map(|s| format!("{:>6}", e.values[&s.to_string()])).collect();
                lines.push(format!("{:<10} {:<10} {:<8} {}", e.left, e.right, e.symbolic, vals.join(" ")));
            }
            emit(&r, "metric-table", &lines.join("\n"), table.iter().map(to_value).collect());
        }
        Command::Dims => {
            let ctx = context(&r, r.run.degree.unwrap_or(4))?;
            let audit = ctx.audit();
            let dims: Vec<String> = ctx.dims().iter().map(|d| d.to_string()).collect();
            let status = if audit.stable { "stable" } else { "unstable" };
            let text = format!(
                "{}\naudit: {status} (H={} vs H={})",
                dims.join(" "),
                audit.headroom,
                audit.audit_headroom
            );
            emit(&r, "dims", &text, vec![to_value(&audit)]);
            if !audit.stable {
                return Err(Failure::Check(format!(
                    "dimensions change between H={} and H={}; increase headroom (-H)",
                    audit.headroom, audit.audit_headroom
                )));
            }
        }
        Command::SolveF => {
            let sol = solve_f_constraint(&r.run.signature.space())?;
            let text = format!("{sol}\n({} independent quadratic equations)", sol.equations);
            emit(&r, "solve-f", &text, vec![to_value(&sol)]);
        }
        Command::Mon { expr } => {
            let x = pbw_normal_form(&parse_generators(&expr)?);
            let mon = monopole_part(&x, x.degree().unwrap_or(0))?;
            emit(&r, "mon", &mon.to_string(), vec![json!({"input": expr, "mon": mon.to_string()})]);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}
