//! struvine — evaluate generalized Struve / Fox-Wright series, apply
//! the Marichev–Saigo–Maeda operators on their evaluable slices,
//! assemble closed-form operator images, and run the verification
//! suites.
//!
//! Exit codes: 0 success, 1 domain error, 2 non-convergence,
//! 3 validity failure, 64 usage.

mod params;

use std::fmt;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use struvine::Complex64;

use struvine::images::fixtures::discrepancy_report;
use struvine::images::{eval_image, theorem_image, TheoremId};
use struvine::quadrature::QuadratureResult;
use struvine::series::{
    appell_f3, convergence_index, fox_wright, gauss_2f1, hypergeometric_pfq, struve_generalized,
    FoxWrightSpec, SeriesResult,
};
use struvine::verify::{
    oracle_derivative, oracle_quadrature, run_suite, IntegrandSpec, QuadTarget, SuiteId,
};
use struvine::images::LemmaId;

use params::{fmt_complex, parse_complex_arg, ParamArgs};

/// Errors surfaced to the shell, each carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(struvine::Error),
    Io(String),
    /// A library error hit at a specific sweep grid point; keeps the
    /// inner error's exit code.
    Sweep {
        point: String,
        inner: struvine::Error,
    },
}

fn lib_exit_code(e: &struvine::Error) -> i32 {
    match e {
        struvine::Error::NonConvergence { .. } | struvine::Error::Step { .. } => 2,
        struvine::Error::Validity { .. } => 3,
        _ => 1,
    }
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 64,
            CliError::Io(_) => 1,
            CliError::Lib(e) => lib_exit_code(e),
            CliError::Sweep { inner, .. } => lib_exit_code(inner),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Sweep { point, inner } => write!(f, "at grid point {point}: {inner}"),
        }
    }
}

impl From<struvine::Error> for CliError {
    fn from(e: struvine::Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Parser)]
#[command(
    name = "struvine",
    version,
    about = "Generalized Struve series, Fox-Wright images and MSM operator slices",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one of the underlying series functions
    Eval {
        #[command(subcommand)]
        which: EvalCommand,
    },
    /// Assemble a theorem's Fox-Wright image and evaluate it at x
    Image(ImageArgs),
    /// Operator quadrature (i-*) or closed-form derivative (d-*) of a
    /// power integrand on an evaluable slice
    Quad(QuadArgs),
    /// Run a verification suite and report per-case results
    Verify(VerifyArgs),
    /// Evaluate a theorem image over a one-parameter grid, as CSV
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Generalized Struve series aW(z)
    Struve(StruveArgs),
    /// Fox-Wright series pΨq(z) (unnormalized convention)
    Foxwright(FoxwrightArgs),
    /// Generalized hypergeometric pFq(z)
    Pfq(PfqArgs),
    /// Appell F3 double series
    F3(F3Args),
    /// Gauss 2F1 for real argument w ∈ [0, 1)
    #[command(name = "2f1")]
    Gauss2f1(Gauss2f1Args),
}

#[derive(Args)]
struct StruveArgs {
    /// Weight index a (positive integer)
    #[arg(long, default_value_t = 1)]
    a: u32,
    /// Weight α (positive real)
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    alpha: f64,
    /// Gamma offset μ
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true, default_value = "1.5")]
    mu: Complex64,
    /// Scale ξ_s (positive real)
    #[arg(long = "xi-s", default_value_t = 1.0, allow_hyphen_values = true)]
    xi_s: f64,
    /// Offset b
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true, default_value = "1")]
    b: Complex64,
    /// Alternation parameter c
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true, default_value = "1")]
    c: Complex64,
    /// Order p
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true, default_value = "0")]
    p: Complex64,
    /// Argument z
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Emit a JSON object instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FoxwrightArgs {
    /// Upper pairs as "offset:weight,offset:weight,…" ("" for none)
    #[arg(long, allow_hyphen_values = true)]
    upper: String,
    /// Lower pairs, same format
    #[arg(long, allow_hyphen_values = true)]
    lower: String,
    /// Argument z
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PfqArgs {
    /// Upper parameters, comma-separated ("" for none)
    #[arg(long, allow_hyphen_values = true)]
    upper: String,
    /// Lower parameters, comma-separated ("" for none)
    #[arg(long, allow_hyphen_values = true)]
    lower: String,
    /// Argument z
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct F3Args {
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    a: Complex64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    a2: Complex64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    b: Complex64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    b2: Complex64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    c: Complex64,
    /// First argument w, |w| < 1
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    w: Complex64,
    /// Second argument z, |z| < 1
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    z: Complex64,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Gauss2f1Args {
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    a: Complex64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    b: Complex64,
    #[arg(long, value_parser = parse_complex_arg, allow_hyphen_values = true)]
    c: Complex64,
    /// Real argument w ∈ [0, 1)
    #[arg(long, allow_hyphen_values = true)]
    w: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ImageArgs {
    /// Theorem id: T1 | T2 | T3 | T4
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QuadOp {
    /// Left-sided MSM fractional integral over (0, x)
    ILeft,
    /// Right-sided MSM fractional integral over (x, ∞)
    IRight,
    /// Left-sided MSM fractional derivative (closed-form composition)
    DLeft,
    /// Right-sided MSM fractional derivative (closed-form composition)
    DRight,
}

#[derive(Args)]
struct QuadArgs {
    /// Operator: i-left | i-right | d-left | d-right
    #[arg(value_enum)]
    op: QuadOp,
    #[command(flatten)]
    params: ParamArgs,
    /// Replace the monomial integrand by the Struve factor truncated
    /// at K series terms (integral operators only)
    #[arg(long, value_name = "K")]
    struve_k: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id (gamma, foxwright, struve, L1-quadrature,
    /// L2-quadrature, D1, D2, T1-termwise … T4-termwise, T1-closure)
    #[arg(long)]
    suite: String,
    /// Case count (default: the suite's standard size)
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tolerance (default: the suite's standard tolerance)
    #[arg(long)]
    tol: Option<f64>,
    /// Write the per-case report here (.json → JSON, otherwise CSV);
    /// without it the CSV report goes to stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Suppress the timestamp header line
    #[arg(long)]
    no_header: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Theorem id: T1 | T2 | T3 | T4
    #[arg(long)]
    theorem: String,
    #[command(flatten)]
    params: ParamArgs,
    /// Grid "key=lo:hi:n"; the key takes n evenly spaced real values
    /// from lo to hi (complex parameters get a zero imaginary part)
    #[arg(long, value_name = "KEY=LO:HI:N")]
    grid: String,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Write the CSV here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Eval { which } => run_eval(which),
        Command::Image(args) => run_image(args),
        Command::Quad(args) => run_quad(args),
        Command::Verify(args) => run_verify(args),
        Command::Sweep(args) => run_sweep(args),
    }
}

/// stdout writer that treats a broken pipe (reader went away) as a
/// normal early exit instead of a panic.
fn emit(text: &str) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_all(text.as_bytes()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

macro_rules! emitln {
    ($($arg:tt)*) => { emit(&format!("{}\n", format_args!($($arg)*))) };
}

/// The CommandConfig tolerance window, exclusive on both ends.
fn checked_tol(tol: f64) -> Result<f64, CliError> {
    if tol > 1e-14 && tol < 1e-2 {
        Ok(tol)
    } else {
        Err(CliError::usage(format!(
            "--tol must lie in (1e-14, 1e-2), got {tol}"
        )))
    }
}

fn parse_theorem(s: &str) -> Result<TheoremId, CliError> {
    match s {
        "T1" => Ok(TheoremId::T1),
        "T2" => Ok(TheoremId::T2),
        "T3" => Ok(TheoremId::T3),
        "T4" => Ok(TheoremId::T4),
        other => Err(CliError::usage(format!(
            "unknown theorem '{other}' (expected T1, T2, T3 or T4)"
        ))),
    }
}

/// "offset:weight,…" → Fox-Wright parameter pairs.
fn parse_pairs(which: &str, text: &str) -> Result<Vec<(Complex64, f64)>, CliError> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let Some((offset, weight)) = item.rsplit_once(':') else {
            return Err(CliError::usage(format!(
                "--{which}: '{item}' is not an offset:weight pair"
            )));
        };
        let offset = parse_complex_arg(offset)
            .map_err(|e| CliError::usage(format!("--{which}: {e}")))?;
        let weight: f64 = weight
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("--{which}: bad weight in '{item}'")))?;
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(CliError::usage(format!(
                "--{which}: weight must be positive, got {weight}"
            )));
        }
        out.push((offset, weight));
    }
    Ok(out)
}

/// Comma-separated complex parameters.
fn parse_list(which: &str, text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_complex_arg(s).map_err(|e| CliError::usage(format!("--{which}: {e}"))))
        .collect()
}

fn complex_json(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

fn print_series_result(r: &SeriesResult, json: bool) {
    if json {
        let doc = serde_json::json!({
            "value": complex_json(r.value),
            "terms_used": r.terms_used,
            "truncation_estimate": r.truncation_estimate,
            "converged": r.converged,
        });
        emitln!("{doc}");
    } else {
        emitln!("value = {}", fmt_complex(r.value));
        emitln!("terms_used = {}", r.terms_used);
        emitln!("truncation_estimate = {}", r.truncation_estimate);
        emitln!("converged = {}", r.converged);
    }
}

fn run_eval(which: EvalCommand) -> Result<i32, CliError> {
    match which {
        EvalCommand::Struve(a) => {
            let tol = checked_tol(a.tol)?;
            let sp = struvine::series::StruveParams {
                a: a.a,
                p: a.p,
                b: a.b,
                c: a.c,
                xi_s: a.xi_s,
                alpha: a.alpha,
                mu: a.mu,
            };
            let r = struve_generalized(&sp, a.z, tol)?;
            print_series_result(&r, a.json);
        }
        EvalCommand::Foxwright(a) => {
            let tol = checked_tol(a.tol)?;
            let spec = FoxWrightSpec::new(
                parse_pairs("upper", &a.upper)?,
                parse_pairs("lower", &a.lower)?,
            );
            let r = fox_wright(&spec, a.z, tol)?;
            print_series_result(&r, a.json);
        }
        EvalCommand::Pfq(a) => {
            let tol = checked_tol(a.tol)?;
            let upper = parse_list("upper", &a.upper)?;
            let lower = parse_list("lower", &a.lower)?;
            let r = hypergeometric_pfq(&upper, &lower, a.z, tol)?;
            print_series_result(&r, a.json);
        }
        EvalCommand::F3(a) => {
            let tol = checked_tol(a.tol)?;
            let r = appell_f3(a.a, a.a2, a.b, a.b2, a.c, a.w, a.z, tol)?;
            print_series_result(&r, a.json);
        }
        EvalCommand::Gauss2f1(a) => {
            let value = gauss_2f1(a.a, a.b, a.c, a.w)?;
            if a.json {
                emitln!("{}", serde_json::json!({ "value": complex_json(value) }));
            } else {
                emitln!("value = {}", fmt_complex(value));
            }
        }
    }
    Ok(0)
}

fn run_image(args: ImageArgs) -> Result<i32, CliError> {
    let theorem = parse_theorem(&args.theorem)?;
    let tol = checked_tol(args.tol)?;
    let resolved = args.params.resolve()?;
    let msm = resolved.msm()?;
    let rho = resolved.require_rho()?;
    let x = resolved.require_x()?;
    let img = theorem_image(theorem, &msm, &resolved.sp, rho)?;
    let value = eval_image(&img, x, tol)?;
    let fixture = discrepancy_report(theorem)?;
    if args.json {
        let doc = serde_json::json!({
            "theorem": theorem.to_string(),
            "prefactor_coefficient": complex_json(img.prefactor_coefficient),
            "prefactor_power": complex_json(img.prefactor_power),
            "upper": img.spec.upper.iter()
                .map(|&(o, w)| serde_json::json!([complex_json(o), w]))
                .collect::<Vec<_>>(),
            "lower": img.spec.lower.iter()
                .map(|&(o, w)| serde_json::json!([complex_json(o), w]))
                .collect::<Vec<_>>(),
            "argument_rule": img.argument_rule.token(),
            "convergence_index": convergence_index(&img.spec),
            "x": x,
            "argument": complex_json(img.argument_at(x)),
            "value": complex_json(value.value),
            "terms_used": value.terms_used,
            "truncation_estimate": value.truncation_estimate,
            "converged": value.converged,
            "fixture": fixture.to_json(),
        });
        emitln!("{doc}");
    } else {
        emitln!("theorem = {theorem}");
        emitln!(
            "prefactor = {} * x^({})",
            fmt_complex(img.prefactor_coefficient),
            fmt_complex(img.prefactor_power)
        );
        let pairs = |side: &[(Complex64, f64)]| {
            side.iter()
                .map(|&(o, w)| format!("({}, {w})", fmt_complex(o)))
                .collect::<Vec<_>>()
                .join("; ")
        };
        emitln!("upper = {}", pairs(&img.spec.upper));
        emitln!("lower = {}", pairs(&img.spec.lower));
        emitln!(
            "argument = {} = {} at x = {x}",
            img.argument_rule.token(),
            fmt_complex(img.argument_at(x))
        );
        emitln!("convergence_index = {}", convergence_index(&img.spec));
        emitln!("value = {}", fmt_complex(value.value));
        emitln!("terms_used = {}", value.terms_used);
        emitln!("truncation_estimate = {}", value.truncation_estimate);
        emitln!("converged = {}", value.converged);
        emit(&format!("fixture comparison:\n{}", fixture.render()));
    }
    Ok(0)
}

fn print_quadrature_result(r: &QuadratureResult, json: bool) {
    if json {
        let doc = serde_json::json!({
            "value": complex_json(r.value),
            "abs_error_estimate": r.abs_error_estimate,
            "nodes": r.nodes,
            "converged": r.converged,
        });
        emitln!("{doc}");
    } else {
        emitln!("value = {}", fmt_complex(r.value));
        emitln!("abs_error_estimate = {}", r.abs_error_estimate);
        emitln!("nodes = {}", r.nodes);
        emitln!("converged = {}", r.converged);
    }
}

fn run_quad(args: QuadArgs) -> Result<i32, CliError> {
    let tol = checked_tol(args.tol)?;
    let resolved = args.params.resolve()?;
    let msm = resolved.msm()?;
    let rho = resolved.require_rho()?;
    let x = resolved.require_x()?;
    match args.op {
        QuadOp::ILeft | QuadOp::IRight => {
            let ascending = args.op == QuadOp::ILeft;
            let (target, f_spec) = match args.struve_k {
                None => (
                    if ascending { QuadTarget::L1 } else { QuadTarget::L2 },
                    IntegrandSpec::Monomial { rho },
                ),
                Some(k_terms) => (
                    if ascending { QuadTarget::T1 } else { QuadTarget::T2 },
                    IntegrandSpec::TruncatedStruve {
                        sp: resolved.sp,
                        rho,
                        k_terms,
                    },
                ),
            };
            let r = oracle_quadrature(target, &msm, &f_spec, x, tol)?;
            print_quadrature_result(&r, args.json);
        }
        QuadOp::DLeft | QuadOp::DRight => {
            if args.struve_k.is_some() {
                return Err(CliError::usage(
                    "--struve-k applies to the integral operators only; the derivative \
                     operators evaluate monomial integrands in closed form",
                ));
            }
            let lemma = if args.op == QuadOp::DLeft {
                LemmaId::D1
            } else {
                LemmaId::D2
            };
            let value = oracle_derivative(lemma, &msm, rho, x)?;
            let r = QuadratureResult {
                value,
                abs_error_estimate: 0.0,
                nodes: 0,
                converged: true,
            };
            print_quadrature_result(&r, args.json);
        }
    }
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<i32, CliError> {
    let suite: SuiteId = args.suite.parse().map_err(|_| {
        CliError::usage(format!(
            "unknown suite '{}' (expected gamma, foxwright, struve, L1-quadrature, \
             L2-quadrature, D1, D2, T1-termwise, T2-termwise, T3-termwise, T4-termwise \
             or T1-closure)",
            args.suite
        ))
    })?;
    let n = args.n.unwrap_or_else(|| suite.default_cases());
    let tol = checked_tol(args.tol.unwrap_or_else(|| suite.default_tolerance()))?;
    if !args.no_header {
        let unix = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        emitln!("# struvine verify suite={suite} seed={} n={n} unix={unix}", args.seed);
    }
    let report = run_suite(suite, n, args.seed, tol);
    match &args.out {
        None => emit(&report.render_csv()),
        Some(path) => {
            let body = if path.extension().is_some_and(|e| e == "json") {
                let cases: Vec<serde_json::Value> = report
                    .cases
                    .iter()
                    .enumerate()
                    .map(|(idx, c)| {
                        serde_json::json!({
                            "case": idx,
                            "params": c.draw.to_json(),
                            "expected": complex_json(c.expected),
                            "got": complex_json(c.got),
                            "rel_error": c.error,
                            "class": c.class.name(),
                            "detail": c.detail,
                        })
                    })
                    .collect();
                let doc = serde_json::json!({
                    "summary": report.summary_json(),
                    "cases": cases,
                });
                let text = serde_json::to_string_pretty(&doc)
                    .expect("report serialization cannot fail");
                text + "\n"
            } else {
                report.render_csv()
            };
            std::fs::write(path, body).map_err(|e| {
                CliError::Io(format!("cannot write report to {}: {e}", path.display()))
            })?;
        }
    }
    emitln!("{}", report.summary_json());
    let structural = report
        .cases
        .iter()
        .filter(|c| c.class == struvine::verify::CaseClass::Structural)
        .count();
    Ok(if structural == 0 { 0 } else { 1 })
}

/// Grid description "key=lo:hi:n".
struct Grid {
    key: String,
    lo: f64,
    hi: f64,
    n: usize,
}

fn parse_grid(text: &str) -> Result<Grid, CliError> {
    let bad = || CliError::usage(format!("--grid '{text}' must have the form key=lo:hi:n"));
    let (key, range) = text.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    let [lo, hi, n] = parts.as_slice() else {
        return Err(bad());
    };
    let grid = Grid {
        key: key.trim().to_string(),
        lo: lo.trim().parse().map_err(|_| bad())?,
        hi: hi.trim().parse().map_err(|_| bad())?,
        n: n.trim().parse().map_err(|_| bad())?,
    };
    if grid.n == 0 {
        return Err(CliError::usage("--grid needs at least one point"));
    }
    Ok(grid)
}

fn run_sweep(args: SweepArgs) -> Result<i32, CliError> {
    let theorem = parse_theorem(&args.theorem)?;
    let tol = checked_tol(args.tol)?;
    let grid = parse_grid(&args.grid)?;
    let resolved = args.params.resolve()?;
    let mut out = format!("{},value_re,value_im\n", grid.key);
    for i in 0..grid.n {
        let v = if grid.n == 1 {
            grid.lo
        } else {
            grid.lo + (grid.hi - grid.lo) * (i as f64) / ((grid.n - 1) as f64)
        };
        let mut point = resolved.clone();
        let c = Complex64::new(v, 0.0);
        match grid.key.as_str() {
            "lambda" => point.msm_numerators[0] = c,
            "lambda2" => point.msm_numerators[1] = c,
            "xi1" => point.msm_numerators[2] = c,
            "xi2" => point.msm_numerators[3] = c,
            "gamma" => point.gamma = Some(c),
            "p" => point.sp.p = c,
            "b" => point.sp.b = c,
            "c" => point.sp.c = c,
            "mu" => point.sp.mu = c,
            "xi_s" => point.sp.xi_s = v,
            "alpha" => point.sp.alpha = v,
            "rho" => point.rho = Some(c),
            "x" => point.x = Some(v),
            other => {
                return Err(CliError::usage(format!(
                    "--grid key '{other}' is not sweepable (use lambda, lambda2, xi1, xi2, \
                     gamma, p, b, c, mu, xi_s, alpha, rho or x)"
                )));
            }
        }
        let msm = point.msm()?;
        let rho = point.require_rho()?;
        let x = point.require_x()?;
        let at = |inner: struvine::Error| CliError::Sweep {
            point: format!("{} = {v}", grid.key),
            inner,
        };
        let img = theorem_image(theorem, &msm, &point.sp, rho).map_err(at)?;
        let value = eval_image(&img, x, tol).map_err(at)?;
        out.push_str(&format!("{v},{},{}\n", value.value.re, value.value.im));
    }
    match &args.out {
        None => emit(&out),
        Some(path) => std::fs::write(path, out).map_err(|e| {
            CliError::Io(format!("cannot write sweep to {}: {e}", path.display()))
        })?,
    }
    Ok(0)
}

