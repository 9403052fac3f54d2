//! `powersum`: batch front end for power-sum degree counting.

mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use powersum_core::counter::{self, BMContext, Limits, SeriesRow};
use powersum_core::function_field::height_capped;
use powersum_core::poly::factor;
use powersum_core::{Error, Polynomial, PowerSumSystem, RationalFunction};

#[derive(Parser)]
#[command(
    name = "powersum",
    version,
    about = "Degree counting for sums of polynomial power sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; `series` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Largest coefficient, in bits, the degree evaluator may produce.
    #[arg(long, global = true, env = "POWERSUM_COEFF_BUDGET", default_value_t = Limits::default().coeff_budget_bits)]
    coeff_budget: u64,

    /// Largest polynomial degree handed to the factorizer.
    #[arg(long, global = true, env = "POWERSUM_FACTOR_CAP", default_value_t = Limits::default().factor_degree_cap)]
    factor_cap: usize,

    /// Let exponents start at 0 instead of 1.
    #[arg(long, global = true)]
    include_zero_exponent: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SystemArg {
    /// System file: {"left": [{"a", "p"}], "right": [{"b", "q"}]}.
    #[arg(long)]
    system: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Count pairs with 0 <= D(n,m) <= d.
    Count {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        d: u64,
    },
    /// Degree of the sum at one exponent pair.
    Dvalue {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
    },
    /// A_d against d^2/(deg p1 * deg q1) over several d.
    Series {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long, value_delimiter = ',', required = true)]
        d_list: Vec<u64>,
    },
    /// The unit-equation constant and the bound on |S|.
    Bm {
        #[command(flatten)]
        system: SystemArg,
        #[arg(long)]
        d: u64,
    },
    /// Height of a rational function {"num": [...], "den": [...]}.
    Height {
        #[arg(long)]
        rf: PathBuf,
    },
    /// Run the built-in invariant suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Factor a polynomial over the rationals, e.g. "x^4 - 1".
    Factor {
        #[arg(long)]
        poly: String,
    },
}

/// Failure classes, each with its own exit code.
enum Failure {
    Validation(String, String),
    Resource(String),
    Internal(String),
    /// A completed run whose checks did not all pass; output already written.
    Unsuccessful,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Validation(..) => 2,
            Failure::Resource(_) => 3,
            Failure::Internal(_) | Failure::Unsuccessful => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        if e.is_resource_cap() {
            return Failure::Resource(message);
        }
        let kind = match e {
            Error::InvalidSystem { .. } => "invalid_system",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Parse(_) | Error::Json(_) => "parse",
            _ => "invalid_input",
        };
        Failure::Validation(kind.into(), message)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Validation("io".into(), format!("{}: {e}", path.display())))
}

fn load_system(arg: &SystemArg, zero_base: bool) -> Result<PowerSumSystem, Failure> {
    let sys = PowerSumSystem::from_json(&read(&arg.system)?)?;
    Ok(if zero_base {
        sys.with_exponent_base(0)?
    } else {
        sys
    })
}

fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))
}

fn json_only(format: Option<Format>, command: &str) -> Result<(), Failure> {
    match format {
        Some(Format::Csv) => Err(Failure::Validation(
            "invalid_config".into(),
            format!("{command} has no csv output"),
        )),
        _ => Ok(()),
    }
}

fn series_csv(rows: &[SeriesRow]) -> String {
    let mut out = String::from(SeriesRow::csv_header());
    for r in rows {
        out.push('\n');
        out.push_str(&r.csv_line());
    }
    out
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let limits = Limits {
        coeff_budget_bits: cli.coeff_budget,
        factor_degree_cap: cli.factor_cap,
    };
    let zero = cli.include_zero_exponent;
    match &cli.command {
        Command::Count { system, d } => {
            let sys = load_system(system, zero)?;
            let report = counter::count_certified(&sys, *d, &limits)?;
            match cli.format {
                Some(Format::Csv) => Ok(format!(
                    "d,A_d,rectangle_count,small_n_strip,small_m_strip,line_pairs,zero_sum_pairs\n{},{},{},{},{},{},{}",
                    report.d,
                    report.a_d,
                    report.rectangle_count,
                    report.small_n_strip,
                    report.small_m_strip,
                    report.line_pairs_counted.len(),
                    report.zero_sum_pairs.len()
                )),
                _ => to_json(&report),
            }
        }
        Command::Dvalue { system, n, m } => {
            json_only(cli.format, "dvalue")?;
            let sys = load_system(system, zero)?;
            to_json(&counter::d_value(&sys, *n, *m, &limits)?)
        }
        Command::Series { system, d_list } => {
            let sys = load_system(system, zero)?;
            let rows = counter::asymptotic_series(&sys, d_list, &limits)?;
            match cli.format {
                Some(Format::Json) => to_json(&rows),
                _ => Ok(series_csv(&rows)),
            }
        }
        Command::Bm { system, d } => {
            json_only(cli.format, "bm")?;
            let sys = load_system(system, zero)?;
            let ctx = BMContext::from_system(&sys, *d);
            to_json(&json!({ "c_bm": ctx.c_bm(), "s_size_bound": ctx.s_size_bound() }))
        }
        Command::Height { rf } => {
            json_only(cli.format, "height")?;
            let f = RationalFunction::from_json(&read(rf)?)?;
            to_json(&height_capped(&f, limits.factor_degree_cap)?)
        }
        Command::Verify { seed } => {
            json_only(cli.format, "verify")?;
            let summary = verify::run_all(*seed, &limits);
            let text = to_json(&summary)?;
            if summary.all_passed() {
                Ok(text)
            } else {
                emit(&text);
                Err(Failure::Unsuccessful)
            }
        }
        Command::Factor { poly } => {
            json_only(cli.format, "factor")?;
            let p: Polynomial = poly.parse()?;
            let fac = factor(&p, limits.factor_degree_cap)?;
            let factors: Vec<_> = fac
                .factors
                .iter()
                .map(|(q, e)| json!({ "factor": q.to_string(), "coeffs": q, "multiplicity": e }))
                .collect();
            to_json(&json!({
                "constant": powersum_core::poly::format_rational(&fac.constant),
                "factors": factors,
            }))
        }
    }
}

fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn report_error(kind: &str, message: &str) {
    let body = json!({ "error": kind, "message": message });
    let _ = writeln!(std::io::stderr(), "{body}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            report_error("usage", e.to_string().trim());
            return ExitCode::from(2);
        }
    };
    let outcome = std::panic::catch_unwind(|| run(&cli))
        .unwrap_or_else(|_| Err(Failure::Internal("unexpected panic".into())));
    match outcome {
        Ok(text) => {
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Validation(kind, msg) => report_error(kind, msg),
                Failure::Resource(msg) => report_error("resource_cap", msg),
                Failure::Internal(msg) => report_error("internal", msg),
                Failure::Unsuccessful => report_error("verify", "some checks failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
