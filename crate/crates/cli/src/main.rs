//! `matel`: matrix elements of `|x-y|^α` and `ln|x-y|` in Legendre bases.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matel_core::exactnum::{format_rational, parse_rational, to_f64, Rational};
use matel_core::matelem::{
    assemble_matrix, evaluate, kernel_name, Basis, Entry, Kernel, KernelQuery, KernelSpec, Mode,
    Region, Value,
};
use matel_core::oracle::exact::{exact_log_l, exact_power_l};
use matel_core::oracle::{quad_log_l, quad_power_l, QuadConfig};
use matel_core::suites::{run_suite, table_entries, Suite, SuiteConfig, TABLE_FLAGGED};
use matel_core::{Error, Result};
use serde_json::{json, Value as Json};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MATH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "matel",
    version,
    about = "Legendre-basis matrix elements of |x-y|^alpha and ln|x-y|"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single matrix element.
    Compute(ComputeArgs),
    /// Assemble the size x size block of matrix elements.
    Matrix(MatrixArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Compare a closed-form triangle value with an independent oracle.
    Oracle(OracleArgs),
    /// The 4x4 log-kernel triangle table with its diff against the printed values.
    Table(TableArgs),
    /// Reserved: kernels exp(lambda|x-y|). Not implemented.
    #[command(name = "lambda-kernel")]
    LambdaKernel {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, hide = true)]
        rest: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    Power,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Standard,
    Shifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegionArg {
    Square,
    Triangle,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct KernelArgs {
    #[arg(long, value_enum)]
    kernel: KernelArg,
    /// Exponent of the power kernel as `p/q` (decimals are accepted in float mode).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value = "shifted")]
    basis: BasisArg,
    #[arg(long, value_enum, default_value = "square")]
    region: RegionArg,
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    k: KernelArgs,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    k: KernelArgs,
    #[arg(long)]
    size: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    kernel: KernelArg,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "triangle")]
    region: RegionArg,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidQuery(_) | Error::Parse(_) => EXIT_USAGE,
            _ => EXIT_MATH,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// `p/q`, an integer, or in float mode a plain decimal (read exactly).
fn parse_alpha(s: &str, mode: ModeArg) -> Result<Rational> {
    if let Some((int_part, frac)) = s.split_once('.') {
        if mode == ModeArg::Exact {
            return Err(Error::Parse(format!(
                "exact mode takes alpha as p/q, got {s:?}"
            )));
        }
        let digits = format!("{int_part}{frac}");
        let scale = format!("1{}", "0".repeat(frac.len()));
        return parse_rational(&format!("{digits}/{scale}"));
    }
    parse_rational(s)
}

fn kernel_from(kernel: KernelArg, alpha: Option<&str>, mode: ModeArg) -> Result<Kernel> {
    match (kernel, alpha) {
        (KernelArg::Log, None) => Ok(Kernel::Log),
        (KernelArg::Log, Some(_)) => Err(Error::InvalidQuery(
            "--alpha only applies to the power kernel".into(),
        )),
        (KernelArg::Power, None) => {
            Err(Error::InvalidQuery("the power kernel needs --alpha".into()))
        }
        (KernelArg::Power, Some(a)) => Ok(Kernel::Power(parse_alpha(a, mode)?)),
    }
}

fn spec_from(k: &KernelArgs) -> Result<KernelSpec> {
    let basis = match k.basis {
        BasisArg::Standard => Basis::Standard,
        BasisArg::Shifted => Basis::Shifted,
    };
    let region = match k.region {
        RegionArg::Square => Region::Square,
        RegionArg::Triangle => Region::Triangle,
    };
    KernelSpec::new(
        kernel_from(k.kernel, k.alpha.as_deref(), k.mode)?,
        basis,
        region,
    )
}

fn mode_of(m: ModeArg) -> Mode {
    match m {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    }
}

fn quad_config() -> std::result::Result<QuadConfig, Failure> {
    let mut cfg = QuadConfig::default();
    if let Ok(v) = std::env::var("MATEL_QUAD_NODES") {
        cfg.nodes_per_panel = v
            .trim()
            .parse()
            .map_err(|_| usage(format!("MATEL_QUAD_NODES={v:?} is not an integer")))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn entry_json(q: &KernelQuery, e: &Entry) -> Json {
    json!({
        "m": q.m,
        "n": q.n,
        "kernel": kernel_name(&q.spec.kernel),
        "alpha": q.spec.alpha().map(format_rational),
        "basis": q.spec.basis.to_string(),
        "region": q.spec.region.to_string(),
        "value": e.value.to_json(),
        "route": e.route,
    })
}

fn cmd_compute(a: &ComputeArgs) -> std::result::Result<String, Failure> {
    let q = spec_from(&a.k)?.at(a.m, a.n);
    let e = evaluate(&q, mode_of(a.k.mode))?;
    Ok(match a.format {
        Format::Json => entry_json(&q, &e).to_string(),
        Format::Csv => format!(
            "m,n,kernel,alpha,basis,region,value,route\n{},{},{},{},{},{},{},{}",
            q.m,
            q.n,
            kernel_name(&q.spec.kernel),
            q.spec.alpha().map(format_rational).unwrap_or_default(),
            q.spec.basis,
            q.spec.region,
            e.value.csv_cell(),
            e.route
        ),
    })
}

fn cmd_matrix(a: &MatrixArgs) -> std::result::Result<String, Failure> {
    let spec = spec_from(&a.k)?;
    let r = assemble_matrix(&spec, a.size, mode_of(a.k.mode), Default::default())?;
    let text = match a.format {
        Format::Json => r.to_json().to_string(),
        Format::Csv => r.to_csv().trim_end().to_string(),
    };
    match &a.out {
        Some(path) => {
            fs::write(path, text + "\n")
                .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_verify(a: &VerifyArgs) -> std::result::Result<(String, bool), Failure> {
    let suite: Suite = a.suite.parse()?;
    let cfg = SuiteConfig {
        max_n: a.max_n,
        trials: a.trials,
        seed: a.seed,
        quad: quad_config()?,
        ..SuiteConfig::default()
    };
    let report = run_suite(suite, &cfg);
    let text = match a.format {
        ReportFormat::Text => report.to_string().trim_end().to_string(),
        ReportFormat::Json => report.to_json().to_string(),
    };
    Ok((text, report.passed()))
}

/// Exact triangle oracle value, or `None` when only quadrature applies.
fn exact_triangle(kernel: &Kernel, m: usize, n: usize) -> Option<Rational> {
    match kernel {
        Kernel::Log => Some(exact_log_l(m, n)),
        Kernel::Power(a) => matel_core::exactnum::as_integer(a)
            .filter(|&k| k >= 0)
            .map(|k| exact_power_l(m, n, k as u64)),
    }
}

fn quad_triangle(kernel: &Kernel, m: usize, n: usize, cfg: &QuadConfig) -> Result<f64> {
    match kernel {
        Kernel::Log => quad_log_l(m, n, cfg),
        Kernel::Power(a) => quad_power_l(m, n, to_f64(a), cfg),
    }
}

fn cmd_oracle(a: &OracleArgs) -> std::result::Result<(String, bool), Failure> {
    let kernel = kernel_from(a.kernel, a.alpha.as_deref(), ModeArg::Exact)?;
    let region = match a.region {
        RegionArg::Triangle => Region::Triangle,
        RegionArg::Square => Region::Square,
    };
    let q = KernelQuery::new(kernel.clone(), Basis::Shifted, region, a.m, a.n)?;
    let closed = evaluate(&q, Mode::Exact)?;
    let Value::Rational(closed_q) = &closed.value else {
        return Err(usage("the oracle compares shifted-basis values only"));
    };
    // The square is the sum of the two triangles.
    let pairs: Vec<(usize, usize)> = match region {
        Region::Triangle => vec![(a.m, a.n)],
        Region::Square => vec![(a.m, a.n), (a.n, a.m)],
    };
    let mut out = entry_json(&q, &closed);
    let obj = out.as_object_mut().expect("entry is an object");
    obj.insert("closed_form".into(), closed.value.to_json());
    let exact: Option<Rational> = pairs
        .iter()
        .map(|&(m, n)| exact_triangle(&kernel, m, n))
        .sum();
    let ok = match exact {
        Some(o) => {
            let equal = *closed_q == o;
            let diff = if *closed_q >= o {
                closed_q - &o
            } else {
                &o - closed_q
            };
            obj.insert("oracle".into(), json!("exact"));
            obj.insert(
                "oracle_value".into(),
                json!({ "rational": format_rational(&o) }),
            );
            obj.insert(
                "abs_diff".into(),
                json!({ "rational": format_rational(&diff) }),
            );
            obj.insert("equal".into(), json!(equal));
            equal
        }
        None => {
            let cfg = quad_config()?;
            let o: f64 = pairs
                .iter()
                .map(|&(m, n)| quad_triangle(&kernel, m, n, &cfg))
                .sum::<Result<f64>>()?;
            let diff = (to_f64(closed_q) - o).abs();
            let within = diff <= cfg.target_abs_err * pairs.len() as f64;
            obj.insert("oracle".into(), json!("quadrature"));
            obj.insert("oracle_value".into(), json!({ "float": o }));
            obj.insert("abs_diff".into(), json!({ "float": diff }));
            obj.insert(
                "tolerance".into(),
                json!(cfg.target_abs_err * pairs.len() as f64),
            );
            obj.insert("equal".into(), json!(within));
            within
        }
    };
    Ok((out.to_string(), ok))
}

fn cmd_table(a: &TableArgs) -> std::result::Result<String, Failure> {
    let entries = table_entries()?;
    Ok(match a.format {
        Format::Json => {
            let rows: Vec<Json> = entries
                .iter()
                .map(|e| {
                    json!({
                        "m": e.m,
                        "n": e.n,
                        "value": { "rational": format_rational(&e.value) },
                        "oracle": { "rational": format_rational(&e.oracle) },
                        "printed": { "rational": format_rational(&e.printed) },
                        "theorem_literal": { "rational": format_rational(&e.theorem_literal) },
                        "printed_match": e.matches_printed(),
                        "theorem_literal_match": e.matches_theorem_literal(),
                        "flagged": TABLE_FLAGGED.contains(&(e.m, e.n)),
                    })
                })
                .collect();
            json!({ "kernel": "log", "basis": "shifted", "region": "triangle", "entries": rows })
                .to_string()
        }
        Format::Csv => {
            let mut s = String::from(
                "m,n,value,oracle,printed,theorem_literal,printed_match,theorem_literal_match",
            );
            for e in &entries {
                s.push_str(&format!(
                    "\n{},{},{},{},{},{},{},{}",
                    e.m,
                    e.n,
                    format_rational(&e.value),
                    format_rational(&e.oracle),
                    format_rational(&e.printed),
                    format_rational(&e.theorem_literal),
                    e.matches_printed(),
                    e.matches_theorem_literal()
                ));
            }
            s
        }
    })
}

fn run(cli: Cli) -> std::result::Result<(String, bool), Failure> {
    match cli.command {
        Command::Compute(a) => cmd_compute(&a).map(|s| (s, true)),
        Command::Matrix(a) => cmd_matrix(&a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(&a),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Table(a) => cmd_table(&a).map(|s| (s, true)),
        Command::LambdaKernel { .. } => Err(usage(
            "lambda-kernel is reserved: matrix elements of exp(lambda|x-y|) in the Legendre basis are an open problem \
             and are not implemented",
        )),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            if !text.is_empty() && writeln!(std::io::stdout(), "{text}").is_err() {
                return ExitCode::SUCCESS;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
