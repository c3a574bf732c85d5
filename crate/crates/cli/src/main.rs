//! Command-line front end: compute coefficients, sweep parameter grids,
//! run the verification harness, and run the numerical self-tests.
//!
//! Exit codes: 0 success, 1 suite or verification failure, 2 usage or
//! domain error, 3 numerical (convergence) failure.

mod data_spec;
mod records;
mod selftest;
mod sweep;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heatsharp::coeff::{sharp_coefficient_for, Exponent, HeatPoint};
use heatsharp::{Error, Problem, QuadratureConfig};

use records::{CoeffRecord, Format};

#[derive(Parser)]
#[command(
    name = "heatsharp",
    version,
    about = "Sharp coefficients for gradient bounds on half-space heat-equation solutions",
    long_about = "Computes the sharp coefficient of the pointwise gradient bound for the \
                  Dirichlet problem (|grad(u/x_n)| in terms of the L^p norm of the boundary \
                  values) and the Neumann problem (|grad u| in terms of the L^p norm of the \
                  normal derivative) of the heat equation in the half-space, and verifies \
                  the bounds against the layer-potential solutions. Lengths (a*sqrt(time), \
                  xn) and times are in consistent arbitrary units; the Dirichlet coefficient \
                  scales as xn^-(2+(n+1)/p) and the Neumann one as xn^-((n+1)/p)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a single sharp coefficient
    Coeff(CoeffArgs),
    /// Compute coefficients over parameter grids and emit a table
    Sweep(sweep::SweepArgs),
    /// Evaluate both sides of the gradient bound for boundary data
    Verify(verify::VerifyArgs),
    /// Run the numerical self-test suites
    Selftest(selftest::SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Dirichlet,
    Neumann,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Dirichlet => Problem::Dirichlet,
            ProblemArg::Neumann => Problem::Neumann,
        }
    }
}

#[derive(Args)]
struct CoeffArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    /// Space dimension (>= 2)
    #[arg(long)]
    n: u32,
    /// Lebesgue exponent: a number, a ratio like 7/3, or "inf"
    #[arg(long)]
    p: String,
    /// Diffusion constant (length / sqrt(time))
    #[arg(long)]
    a: f64,
    /// Height above the boundary (length)
    #[arg(long)]
    xn: f64,
    /// Elapsed time, or "inf" for the infinite-horizon limit
    #[arg(long)]
    t: String,
    /// Use the direction search even where the closed form is proven
    #[arg(long)]
    force_maximize: bool,
    /// Relative quadrature tolerance (default 1e-9)
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

pub(crate) fn parse_time(text: &str) -> Result<f64, Error> {
    let s = text.trim();
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        return Ok(f64::INFINITY);
    }
    s.parse::<f64>()
        .map_err(|_| Error::Domain(format!("cannot parse time from {s:?}")))
}

pub(crate) fn quad_config(tol: Option<f64>) -> QuadratureConfig {
    let mut cfg = QuadratureConfig::default();
    if let Some(rel) = tol {
        cfg.rel_tol = rel;
        cfg.abs_tol = rel * 1e-3;
    }
    cfg
}

pub(crate) fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Convergence { .. } => 3,
        _ => 2,
    }
}

fn run_coeff(args: &CoeffArgs) -> i32 {
    let cfg = quad_config(args.tol);
    let result = (|| -> Result<CoeffRecord, Error> {
        let ex = Exponent::parse(&args.p)?;
        let t = parse_time(&args.t)?;
        let pt = HeatPoint::new(args.n, args.a, args.xn, t)?;
        let r = sharp_coefficient_for(args.problem.into(), &pt, &ex, &cfg, args.force_maximize)?;
        Ok(CoeffRecord::new(args.problem.into(), &pt, &ex, &r))
    })();
    match result {
        Ok(record) => {
            match args.format {
                Format::Csv => {
                    println!("{}", CoeffRecord::csv_header(false));
                    println!("{}", record.csv_row(false));
                }
                Format::Json => println!("{}", record.to_json()),
            }
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Error::Convergence { value, err_est, .. } = &e {
                eprintln!("partial result: value={value} err_est={err_est}");
            }
            exit_code_for(&e)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Coeff(args) => run_coeff(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Selftest(args) => selftest::run(args),
    };
    std::process::exit(code);
}
