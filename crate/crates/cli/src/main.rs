//! `lfmorrey`: Morrey norms, kernel operators, bound constants and the
//! verification suite from the command line.
//!
//! Exit codes: 0 success, 1 usage or parameter error, 2 the function is not in
//! the space, an operator integral or constant diverges, or a verify check failed.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lfmorrey::bounds::{morrey_operator_constant, BoundResult};
use lfmorrey::morrey::divergent_side;
use lfmorrey::verify::{empirical_operator_norm, SearchConfig};
use lfmorrey::{
    apply_operator, apply_operator_truncated, main_bound_constant, morrey_norm, phi_certificate, verify_suite, Argmax, Error,
    FieldParams, KernelSpec, MorreyNorm, MorreyParams, PhiSpec, RadialFunction, VerifyConfig,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lfmorrey", version, about = "Weighted central Morrey norms and homogeneous-kernel operators on local fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized weighted central Morrey norm of a radial function.
    Norm {
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        function: FunctionArg,
        #[command(flatten)]
        out: Output,
    },
    /// Apply a kernel operator; prints the image as a radial-function JSON.
    Apply {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        kernel: KernelArg,
        #[command(flatten)]
        function: FunctionArg,
        /// Output window LO:HI for kernels without a closed form (default: input window ±10).
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
        window: Option<(i64, i64)>,
        /// Print only the values at these valuations.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        probe: Vec<i64>,
        #[command(flatten)]
        out: Output,
    },
    /// Operator-norm constant of a kernel on the weighted Lebesgue space.
    Bound {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        alpha: f64,
        #[command(flatten)]
        kernel: KernelArg,
        #[command(flatten)]
        out: Output,
    },
    /// Seeded search for functions with a large ‖Tf‖/‖f‖, compared with the bound.
    Search {
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        kernel: KernelArg,
        /// Candidate support LO:HI.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_window, default_value = "-12:12")]
        window: (i64, i64),
        #[arg(long, default_value_t = 20)]
        restarts: usize,
        #[arg(long, default_value_t = 12)]
        iters: usize,
        /// Random candidates tried before climbing.
        #[arg(long, default_value_t = 1000)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run the verification suite; exits 0 iff no check fails.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Small grid for smoke runs.
        #[arg(long)]
        quick: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct FieldArg {
    /// Residue field size, a prime power.
    #[arg(long)]
    q: u64,
    /// Relative tolerance for certified sums.
    #[arg(long, env = "LFMORREY_TOL", default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct Space {
    #[command(flatten)]
    field: FieldArg,
    #[arg(long)]
    r: f64,
    #[arg(long)]
    alpha: f64,
    /// lebesgue, lebesgue(r), central(t), envelope, envelope(r), or JSON.
    #[arg(long, default_value = "lebesgue")]
    phi: String,
}

#[derive(Args)]
struct KernelArg {
    /// hardy, hilbert, hlp, identity (one-point profile, so T = (1-1/q) id), or JSON.
    #[arg(long, default_value = "hardy")]
    kernel: String,
}

#[derive(Args)]
struct FunctionArg {
    /// zero, char_ball:<int>, char_sphere:<int>, bracket:<N>, or JSON.
    #[arg(long, allow_hyphen_values = true, default_value = "char_ball:0")]
    function: String,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo = a.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = b.trim().parse::<i64>().map_err(|e| e.to_string())?;
    if hi < lo {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// What a command produced and how it should exit.
struct Report {
    body: String,
    code: u8,
}

impl Report {
    fn ok(body: String) -> Self {
        Report { body, code: 0 }
    }
}

fn field(a: &FieldArg) -> Result<FieldParams, Error> {
    if !(a.tol > 0.0 && a.tol < 1.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be in (0, 1), got {}", a.tol)));
    }
    Ok(FieldParams::new(a.q)?.with_tol(a.tol))
}

fn params(s: &Space) -> Result<MorreyParams, Error> {
    let phi = PhiSpec::parse(&s.phi, s.r)?;
    MorreyParams::new(field(&s.field)?, s.r, s.alpha, phi)
}

fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v > 0.0 {
        json!("+inf")
    } else {
        json!(v.to_string())
    }
}

fn csv_rows<R: Serialize>(rows: &[R]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn argmax_label(a: Argmax) -> String {
    match a {
        Argmax::Finite(k) => k.to_string(),
        Argmax::TowardNegInfinity => "-inf".into(),
        Argmax::TowardPosInfinity => "+inf".into(),
        Argmax::Everywhere => "everywhere".into(),
    }
}

fn norm(space: &Space, function: &str, format: Format) -> Result<Report, Error> {
    let p = params(space)?;
    let f = RadialFunction::parse(function, &p.field)?;
    let n: MorreyNorm = morrey_norm(&f, &p)?;
    let side = divergent_side(&n);
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "value": num(n.value),
            "argmax": n.argmax,
            "exact": !n.truncated,
            "in_space": n.is_finite(),
            "divergent_side": side,
        }))?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                value: String,
                argmax: String,
                exact: bool,
                in_space: bool,
            }
            csv_rows(&[Row {
                value: if n.is_finite() { n.value.to_string() } else { "+inf".into() },
                argmax: argmax_label(n.argmax),
                exact: !n.truncated,
                in_space: n.is_finite(),
            }])?
        }
    };
    Ok(Report {
        body,
        code: if n.is_finite() { 0 } else { 2 },
    })
}

fn apply(
    field_arg: &FieldArg,
    kernel: &str,
    function: &str,
    window: Option<(i64, i64)>,
    probe: &[i64],
    format: Format,
) -> Result<Report, Error> {
    let fp = field(field_arg)?;
    let spec = KernelSpec::parse(kernel)?;
    let f = RadialFunction::parse(function, &fp)?;
    let (image, remainder) = match apply_operator(&spec, &fp, &f) {
        Ok(g) => (g, None),
        Err(Error::KernelNotExact(_)) => {
            let w = window.unwrap_or((f.lo() - 10, f.hi() + 10));
            let t = apply_operator_truncated(&spec, &fp, &f, w, fp.tol)?;
            (t.function, Some(t.remainder))
        }
        Err(e) => return Err(e),
    };
    if let Some(rem) = remainder {
        eprintln!("note: truncated evaluation; values only on the window, each within {rem:.3e}");
    }
    let body = if !probe.is_empty() {
        #[derive(Serialize)]
        struct Row {
            m: i64,
            value: f64,
        }
        let rows: Vec<Row> = probe.iter().map(|&m| Row { m, value: image.eval(m) }).collect();
        match format {
            Format::Json => serde_json::to_string_pretty(&rows.iter().map(|r| json!({"m": r.m, "value": r.value})).collect::<Vec<_>>())?,
            Format::Csv => csv_rows(&rows)?,
        }
    } else {
        match format {
            Format::Json => image.to_json()?,
            Format::Csv => {
                #[derive(Serialize)]
                struct Row {
                    m: i64,
                    value: f64,
                }
                csv_rows(&(image.lo()..=image.hi()).map(|m| Row { m, value: image.eval(m) }).collect::<Vec<_>>())?
            }
        }
    };
    Ok(Report::ok(body))
}

fn bound_body(b: &BoundResult, format: Format) -> Result<String, Error> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(b)?;
            if !b.condition_holds {
                v["message"] = json!(format!("+inf, condition {} violated", b.condition));
            }
            Ok(serde_json::to_string_pretty(&v)?)
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                value: String,
                mode: String,
                terms: Option<usize>,
                tail_bound: Option<f64>,
                finite: bool,
                condition: &'a str,
            }
            let mode = serde_json::to_value(b.mode)?.as_str().unwrap_or_default().to_string();
            csv_rows(&[Row {
                value: if b.finite { b.value.to_string() } else { "+inf".into() },
                mode,
                terms: b.terms,
                tail_bound: b.tail_bound,
                finite: b.finite,
                condition: &b.condition,
            }])
        }
    }
}

fn bound(field_arg: &FieldArg, r: f64, alpha: f64, kernel: &str, format: Format) -> Result<Report, Error> {
    let fp = field(field_arg)?;
    let spec = KernelSpec::parse(kernel)?;
    let b = main_bound_constant(&spec, &fp, r, alpha, fp.tol)?;
    Ok(Report {
        body: bound_body(&b, format)?,
        code: if b.finite { 0 } else { 2 },
    })
}

fn search(space: &Space, kernel: &str, config: SearchConfig, format: Format) -> Result<Report, Error> {
    let p = params(space)?;
    let spec = KernelSpec::parse(kernel)?;
    let b = main_bound_constant(&spec, &p.field, p.r, p.alpha, p.field.tol)?;
    let cert = phi_certificate(&p.phi, p.r, p.q());
    let limit = morrey_operator_constant(&cert, &b);
    let s = empirical_operator_norm(&spec, &p, &config)?;
    let within = limit.map(|c| s.ratio <= c);
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&json!({
            "seed": s.seed,
            "ratio": s.ratio,
            "start_ratio": s.start_ratio,
            "random_ratio": s.random_ratio,
            "evaluations": s.evaluations,
            "bound_constant": num(b.value),
            "operator_bound": limit.map(num),
            "within_bound": within,
            "best": serde_json::to_value(&s.best)?,
        }))?,
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                seed: u64,
                ratio: f64,
                operator_bound: Option<String>,
                within_bound: Option<bool>,
                evaluations: usize,
            }
            csv_rows(&[Row {
                seed: s.seed,
                ratio: s.ratio,
                operator_bound: limit.map(|c| if c.is_finite() { c.to_string() } else { "+inf".into() }),
                within_bound: within,
                evaluations: s.evaluations,
            }])?
        }
    };
    Ok(Report::ok(body))
}

fn verify(seed: u64, quick: bool, format: Format) -> Result<Report, Error> {
    let base = if quick { VerifyConfig::quick() } else { VerifyConfig::default() };
    let report = verify_suite(&VerifyConfig { seed, ..base })?;
    let body = match format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    for c in report.failures() {
        match &c.repro {
            Some(r) => eprintln!("FAIL {}: {r}", c.name),
            None => eprintln!("FAIL {}", c.name),
        }
    }
    Ok(Report {
        body,
        code: if report.passed() { 0 } else { 2 },
    })
}

/// Errors that say something about the mathematics rather than the input.
fn is_divergence(e: &Error) -> bool {
    matches!(e, Error::NonIntegrable(_) | Error::NotInSpace(_) | Error::OperatorDiverges(_))
}

fn run(cli: Cli) -> Result<Report, Error> {
    match cli.command {
        Command::Norm { space, function, out } => norm(&space, &function.function, out.format),
        Command::Apply {
            field,
            kernel,
            function,
            window,
            probe,
            out,
        } => apply(&field, &kernel.kernel, &function.function, window, &probe, out.format),
        Command::Bound {
            field,
            r,
            alpha,
            kernel,
            out,
        } => bound(&field, r, alpha, &kernel.kernel, out.format),
        Command::Search {
            space,
            kernel,
            window,
            restarts,
            iters,
            random,
            seed,
            out,
        } => search(
            &space,
            &kernel.kernel,
            SearchConfig {
                window,
                restarts,
                iters,
                random,
                seed,
            },
            out.format,
        ),
        Command::Verify { seed, quick, out } => verify(seed, quick, out.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(r) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{}", r.body.trim_end());
            ExitCode::from(r.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_divergence(&e) { 2 } else { 1 })
        }
    }
}
