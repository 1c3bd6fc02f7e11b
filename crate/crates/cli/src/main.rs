//! Command-line front end for the pull-in voltage solver.
//!
//! Exit codes: 0 success, 2 invalid configuration, 3 numeric failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // !(x >= 0) deliberately rejects NaN

use clap::{Parser, Subcommand, ValueEnum};
use pullin::benchmarks::{compute_row, exponential_rows, power_law_rows, BenchmarkRow};
use pullin::bifurcation::{
    continuation_trace, lambda_star_shooting, trace_branch_for_domain, BifurcationBranch,
};
use pullin::bounds::bounds_report;
use pullin::radial::{lambda_star_bisection, picard_minimal, MinimalStatus, RadialGrid};
use pullin::{asymptotics, Domain, Profile, ProfileKind};
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mems-pullin",
    about = "Pull-in voltage bounds, deflection solves, bifurcation diagrams, \
             and multiplicity regime classification for electrostatic membranes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Shooting,
    Continuation,
    Bisection,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic lower/upper bounds on the pull-in voltage (JSON).
    Bounds {
        /// Domain: slab | disk | ball:N or ball:N:R
        #[arg(long)]
        domain: String,
        /// Profile: const | power:ALPHA | exp:ALPHA
        #[arg(long)]
        profile: String,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Minimal deflection at a fixed voltage (CSV), or a collapse notice.
    Solve {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        profile: String,
        /// Voltage parameter.
        #[arg(long)]
        lambda: f64,
        #[arg(long, default_value_t = 2048)]
        grid_n: usize,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Bifurcation branch of center deflection versus voltage (CSV).
    Branch {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        profile: String,
        /// Largest shooting parameter (power-law profiles).
        #[arg(long, default_value_t = 1e4)]
        gamma_max: f64,
        /// Number of branch samples.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Grid size for continuation (exponential profiles).
        #[arg(long, default_value_t = 2048)]
        grid_n: usize,
        /// Continuation stops at this center deflection.
        #[arg(long, default_value_t = 0.999)]
        max_u0: f64,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Pull-in voltage with its method tag and analytic bracket (JSON).
    LambdaStar {
        #[arg(long)]
        domain: String,
        #[arg(long)]
        profile: String,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Cross-check with monotone-iteration bisection.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 2048)]
        grid_n: usize,
        #[arg(long, default_value_t = 1e4)]
        gamma_max: f64,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Solution-multiplicity regime for a dimension/exponent pair (JSON).
    Classify {
        #[arg(long = "N")]
        n: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Regenerate the benchmark tables with diffs against published values (CSV).
    Tables {
        #[arg(long, default_value_t = 2048)]
        grid_n: usize,
        #[arg(long, default_value_t = 1e3)]
        gamma_max: f64,
        #[arg(long)]
        output: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(err)) => {
            eprintln!("numeric failure: {err}");
            ExitCode::from(3)
        }
        Err(CliError::Io(err)) => {
            eprintln!("io error: {err}");
            ExitCode::from(3)
        }
    }
}

enum CliError {
    Config(String),
    Numeric(pullin::Error),
    Io(std::io::Error),
}

impl From<pullin::Error> for CliError {
    fn from(e: pullin::Error) -> Self {
        match e {
            pullin::Error::InvalidParameter(_)
            | pullin::Error::InvalidDimension(_)
            | pullin::Error::WrongProfile { .. } => CliError::Config(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn parse_domain(arg: &str) -> Result<Domain, CliError> {
    let lower = arg.to_ascii_lowercase();
    if lower == "slab" {
        return Ok(Domain::slab());
    }
    if lower == "disk" {
        return Ok(Domain::disk());
    }
    if let Some(rest) = lower.strip_prefix("ball:") {
        let mut parts = rest.split(':');
        let n: i64 = parts
            .next()
            .unwrap_or("")
            .parse()
            .map_err(|_| CliError::Config(format!("bad ball dimension in '{arg}'")))?;
        let radius = match parts.next() {
            Some(r) => r
                .parse()
                .map_err(|_| CliError::Config(format!("bad ball radius in '{arg}'")))?,
            None => 1.0,
        };
        if parts.next().is_some() {
            return Err(CliError::Config(format!("too many fields in '{arg}'")));
        }
        return Ok(Domain::ball(n, radius)?);
    }
    Err(CliError::Config(format!(
        "unknown domain '{arg}' (expected slab | disk | ball:N[:R])"
    )))
}

fn parse_profile(arg: &str, domain: &Domain) -> Result<Profile, CliError> {
    let lower = arg.to_ascii_lowercase();
    if lower == "const" {
        return Ok(Profile::constant());
    }
    if let Some(alpha) = lower.strip_prefix("power:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| CliError::Config(format!("bad power-law exponent in '{arg}'")))?;
        return Ok(Profile::power_law_unit_sup(domain, alpha)?);
    }
    if let Some(alpha) = lower.strip_prefix("exp:") {
        let alpha: f64 = alpha
            .parse()
            .map_err(|_| CliError::Config(format!("bad exponential rate in '{arg}'")))?;
        return Ok(Profile::exponential(domain, alpha)?);
    }
    Err(CliError::Config(format!(
        "unknown profile '{arg}' (expected const | power:ALPHA | exp:ALPHA)"
    )))
}

/// Worker-thread cap: MEMS_PULLIN_THREADS when set, otherwise the available
/// parallelism. Results are independent of the thread count.
fn thread_cap() -> Result<usize, CliError> {
    match std::env::var("MEMS_PULLIN_THREADS") {
        Ok(v) => v.parse::<usize>().map(|t| t.max(1)).map_err(|_| {
            CliError::Config(format!(
                "MEMS_PULLIN_THREADS must be a positive integer, got '{v}'"
            ))
        }),
        Err(_) => Ok(std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)),
    }
}

fn emit(output: Option<&std::path::Path>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, content)?,
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn require_format(format: Format, needed: Format, what: &str) -> Result<(), CliError> {
    match (format, needed) {
        (Format::Csv, Format::Csv) | (Format::Json, Format::Json) => Ok(()),
        (Format::Csv, Format::Json) => Err(CliError::Config(format!(
            "{what} output is a JSON object; csv is not supported"
        ))),
        (Format::Json, Format::Csv) => Err(CliError::Config(format!(
            "{what} output is tabular; json is not supported"
        ))),
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Bounds {
            domain,
            profile,
            output,
            format,
        } => {
            require_format(format, Format::Json, "bounds")?;
            let dom = parse_domain(&domain)?;
            let prof = parse_profile(&profile, &dom)?;
            let report = bounds_report(&dom, &prof)?;
            let mut text = serde_json::to_string_pretty(&report).expect("serializable");
            text.push('\n');
            emit(output.as_deref(), &text)
        }
        Command::Solve {
            domain,
            profile,
            lambda,
            grid_n,
            output,
            format,
        } => {
            require_format(format, Format::Csv, "solve")?;
            let dom = parse_domain(&domain)?;
            let prof = parse_profile(&profile, &dom)?;
            let grid = RadialGrid::new(&dom, grid_n)?;
            let outcome = picard_minimal(lambda, &grid, &prof, 10_000, 1e-6)?;
            match outcome.status {
                MinimalStatus::Converged => {
                    let sol = outcome.solution.expect("converged outcome has a solution");
                    emit(output.as_deref(), &sol.to_csv(&prof))
                }
                MinimalStatus::Collapsed => {
                    let text = format!(
                        "# collapsed: no steady state at lambda={lambda} \
                         (deflection reached {:.6} after {} iterations)\n",
                        outcome.final_max_u, outcome.iterations
                    );
                    emit(output.as_deref(), &text)
                }
                MinimalStatus::IterationLimit => {
                    let text = format!(
                        "# undecided: iteration limit at lambda={lambda} \
                         (deflection {:.6} after {} iterations)\n",
                        outcome.final_max_u, outcome.iterations
                    );
                    emit(output.as_deref(), &text)
                }
            }
        }
        Command::Branch {
            domain,
            profile,
            gamma_max,
            samples,
            grid_n,
            max_u0,
            output,
            format,
        } => {
            require_format(format, Format::Csv, "branch")?;
            let dom = parse_domain(&domain)?;
            let prof = parse_profile(&profile, &dom)?;
            let branch = branch_for(&dom, &prof, gamma_max, samples, grid_n, max_u0)?;
            emit(output.as_deref(), &branch.to_csv())
        }
        Command::LambdaStar {
            domain,
            profile,
            method,
            verify,
            grid_n,
            gamma_max,
            output,
            format,
        } => {
            require_format(format, Format::Json, "lambda-star")?;
            let dom = parse_domain(&domain)?;
            let prof = parse_profile(&profile, &dom)?;
            let report = bounds_report(&dom, &prof)?;
            let (value, tag) = match resolve_method(method, &prof) {
                Method::Shooting => (lambda_star_shooting(&dom, &prof, gamma_max)?, "shooting"),
                Method::Continuation => (
                    continuation_trace(&dom, &prof, grid_n, 0.995)?.lambda_star,
                    "continuation",
                ),
                Method::Bisection => {
                    let grid = RadialGrid::new(&dom, grid_n)?;
                    (lambda_star_bisection(&grid, &prof, 1e-4)?, "bisection")
                }
                Method::Auto => unreachable!("resolved above"),
            };
            let verify_value = if verify && tag != "bisection" {
                let grid = RadialGrid::new(&dom, grid_n)?;
                Some(lambda_star_bisection(&grid, &prof, 1e-4)?)
            } else {
                None
            };
            let mut obj = serde_json::json!({
                "lambda_star": value,
                "method": tag,
                "lower_bound": report.lower_best,
                "upper_bound": report.upper_best,
            });
            if let Some(v) = verify_value {
                obj["verify_bisection"] = serde_json::json!(v);
                obj["verify_rel_diff"] = serde_json::json!((v - value).abs() / value);
            }
            let mut text = serde_json::to_string_pretty(&obj).expect("serializable");
            text.push('\n');
            emit(output.as_deref(), &text)
        }
        Command::Classify {
            n,
            alpha,
            output,
            format,
        } => {
            require_format(format, Format::Json, "classify")?;
            if n < 1 {
                return Err(CliError::Config("dimension must be >= 1".into()));
            }
            if !(alpha >= 0.0) {
                return Err(CliError::Config("alpha must be >= 0".into()));
            }
            let report = asymptotics::classify_regime(n, alpha);
            let mut text = serde_json::to_string_pretty(&report).expect("serializable");
            text.push('\n');
            emit(output.as_deref(), &text)
        }
        Command::Tables {
            grid_n,
            gamma_max,
            output,
            format,
        } => {
            require_format(format, Format::Csv, "tables")?;
            let mut text = String::from(
                "family,domain,alpha,lower_best,lambda_star,upper_1,upper_2,\
                 lower_best_round,lambda_star_round,upper_1_round,upper_2_round,\
                 printed_lower,printed_lambda_star,printed_upper_1,printed_upper_2,max_rel_diff\n",
            );
            for row in exponential_rows().iter().chain(power_law_rows().iter()) {
                text.push_str(&table_line(row, grid_n, gamma_max)?);
            }
            emit(output.as_deref(), &text)
        }
    }
}

fn resolve_method(method: Method, profile: &Profile) -> Method {
    match method {
        Method::Auto => match profile.kind() {
            ProfileKind::Exponential => Method::Continuation,
            _ => Method::Shooting,
        },
        other => other,
    }
}

fn branch_for(
    dom: &Domain,
    prof: &Profile,
    gamma_max: f64,
    samples: usize,
    grid_n: usize,
    max_u0: f64,
) -> Result<BifurcationBranch, CliError> {
    match prof.kind() {
        ProfileKind::Exponential => Ok(continuation_trace(dom, prof, grid_n, max_u0)?),
        _ => Ok(trace_branch_for_domain(
            dom,
            prof,
            gamma_max,
            samples,
            thread_cap()?,
        )?),
    }
}

fn opt_cell(v: Option<f64>, f: impl Fn(f64) -> String) -> String {
    v.map(f).unwrap_or_default()
}

fn table_line(row: &BenchmarkRow, grid_n: usize, gamma_max: f64) -> Result<String, CliError> {
    let computed = compute_row(row, grid_n, gamma_max)?;
    let family = match row.family {
        pullin::benchmarks::Family::Exponential => "exponential",
        pullin::benchmarks::Family::PowerLaw => "power-law",
    };
    let domain = if row.slab { "slab" } else { "disk" };
    Ok(format!(
        "{family},{domain},{alpha},{lb:.17e},{ls:.17e},{u1},{u2:.17e},\
         {lb:.4},{ls:.4},{u1r},{u2:.4},\
         {plb},{pls},{pu1},{pu2},{diff:.3e}\n",
        alpha = row.alpha,
        lb = computed.lower_best,
        ls = computed.lambda_star,
        u1 = opt_cell(computed.upper_1, |v| format!("{v:.17e}")),
        u2 = computed.upper_2,
        u1r = opt_cell(computed.upper_1, |v| format!("{v:.4}")),
        plb = row.printed_lower,
        pls = row.printed_lambda_star,
        pu1 = opt_cell(row.printed_upper_1, |v| v.to_string()),
        pu2 = row.printed_upper_2,
        diff = computed.max_rel_diff,
    ))
}
