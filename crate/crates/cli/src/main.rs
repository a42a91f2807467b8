use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use qzero_cli::{emit, parse_bounds, parse_coefficients, run_report, CliError, Form, Format, InputSpec};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Zero-inclusion regions and zero-free balls for quaternionic polynomials.
///
/// Coefficients are quadruples `w x y z` separated by commas or newlines,
/// listed from a_0 upward. Without --leading the polynomial is monic and the
/// leading 1 is implicit.
#[derive(Debug, Parser)]
#[command(name = "qzero", version)]
struct Args {
    /// Coefficient file; `-` or nothing reads stdin.
    input: Option<PathBuf>,
    /// Coefficients inline instead of a file, e.g. "0 0 1 0, 0 1 0 0".
    #[arg(long, conflicts_with = "input")]
    poly: Option<String>,
    /// Sphere radius for the zero-free ball.
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    /// Sample count for the max-modulus search.
    #[arg(long, default_value_t = qzero_core::zerofree::DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Oracle residual tolerance, relative to the residual scale.
    #[arg(long = "tol-res", default_value_t = 1e-8)]
    tol_res: f64,
    /// Comma list of bound names, or `all`.
    #[arg(long, default_value = "all")]
    bounds: String,
    /// Skip the root-finding oracle (bounds and zero-free ball only).
    #[arg(long)]
    no_oracle: bool,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// The last quadruple is the leading coefficient; normalize by it.
    #[arg(long)]
    leading: bool,
    /// Coefficients multiply on the left (`Σ a_k q^k`).
    #[arg(long)]
    g_form: bool,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

fn read_input(args: &Args) -> Result<String, CliError> {
    if let Some(p) = &args.poly {
        return Ok(p.clone());
    }
    match &args.input {
        Some(path) if path.as_os_str() != "-" => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            context: format!("reading {}", path.display()),
            source,
        }),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|source| CliError::Io {
                context: "reading stdin".into(),
                source,
            })?;
            Ok(s)
        }
    }
}

fn run(args: &Args) -> Result<bool, CliError> {
    if !(args.t > 0.0) || !args.t.is_finite() {
        return Err(CliError::Usage(format!("--t must be positive, got {}", args.t)));
    }
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if !(args.tol_res > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol-res must be positive, got {}",
            args.tol_res
        )));
    }
    let mut spec = InputSpec::new(parse_coefficients(&read_input(args)?)?);
    spec.leading = args.leading;
    spec.form = if args.g_form { Form::G } else { Form::F };
    spec.t = args.t;
    spec.samples = args.samples;
    spec.seed = args.seed;
    spec.tol_res = args.tol_res;
    spec.bounds = parse_bounds(&args.bounds)?;
    spec.oracle = !args.no_oracle;
    spec.timing = args.timing;

    let report = run_report(&spec)?;
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    print!("{}", emit(&report, format));
    let failures = report.failures();
    for f in &failures {
        eprintln!("qzero: CONTAINMENT FAILURE: {f}");
    }
    Ok(failures.is_empty())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("qzero: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
