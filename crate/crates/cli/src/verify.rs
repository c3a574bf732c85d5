//! The `verify` command: evaluates both sides of the gradient bound for
//! a chosen boundary datum and reports `lhs`, `rhs`, and their ratio.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;

use heatsharp::boundary::BoundaryData;
use heatsharp::coeff::{Exponent, HeatPoint};
use heatsharp::potential::{
    extremal_boundary_data, truncation_loss_envelope, verify_inequality, Truncation,
};
use heatsharp::Error;

use crate::data_spec::BoundaryDataSpec;
use crate::records::Format;
use crate::{exit_code_for, quad_config, ProblemArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataKind {
    /// Seeded random smooth bumps
    Gaussian,
    /// Constant one on a ball of radius 4 a sqrt(t)
    Constant,
    /// Near-extremal data for the chosen problem and exponent
    Extremal,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    problem: ProblemArg,
    #[arg(long)]
    n: u32,
    /// Lebesgue exponent: a number, a ratio, or "inf"
    #[arg(long)]
    p: String,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    xn: f64,
    /// Horizon (must be finite for potential evaluation)
    #[arg(long, default_value_t = 1.0)]
    t: f64,
    #[arg(long, value_enum, default_value_t = DataKind::Gaussian)]
    data: DataKind,
    /// JSON boundary-data expression overriding --data
    #[arg(long)]
    data_config: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Allowed slack on ratio <= 1
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    /// Relative quadrature tolerance (default 1e-6 for the harness)
    #[arg(long)]
    quad_tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Serialize)]
struct VerifyRecord {
    problem: String,
    n: u32,
    p: String,
    a: f64,
    xn: f64,
    t: f64,
    data: String,
    seed: u64,
    lhs: f64,
    rhs: f64,
    ratio: f64,
    /// Gaussian-envelope bound on the relative kernel mass beyond the
    /// truncation radius (near-extremal data only).
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_envelope: Option<f64>,
    pass: bool,
}

pub fn run(args: &VerifyArgs) -> i32 {
    let cfg = quad_config(Some(args.quad_tol.unwrap_or(1e-6)));
    let outcome = (|| -> Result<VerifyRecord, Error> {
        let ex = Exponent::parse(&args.p)?;
        let pt = HeatPoint::new(args.n, args.a, args.xn, args.t)?;
        let dim = args.n as usize - 1;

        let mut trunc_envelope = None;
        let (data, label): (BoundaryData, String) = if let Some(path) = &args.data_config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read data config {path:?}: {e}")))?;
            let spec: BoundaryDataSpec = serde_json::from_str(&text)
                .map_err(|e| Error::Domain(format!("cannot parse data config {path:?}: {e}")))?;
            (spec.build(dim)?, "config".into())
        } else {
            match args.data {
                DataKind::Gaussian => (
                    BoundaryData::random_smooth(
                        dim,
                        args.seed,
                        1.5 * args.a * args.t.sqrt(),
                        pt.t,
                    )?,
                    "gaussian".into(),
                ),
                DataKind::Constant => (
                    BoundaryData::constant(1.0, vec![0.0; dim], 4.0 * args.a * args.t.sqrt())?,
                    "constant".into(),
                ),
                DataKind::Extremal => {
                    let trunc = Truncation::default_for(&pt);
                    trunc_envelope = Some(truncation_loss_envelope(&pt, trunc.radius));
                    (
                        extremal_boundary_data(
                            args.problem.into(),
                            &pt,
                            &ex,
                            &vec![0.0; dim],
                            &trunc,
                            &cfg,
                        )?,
                        "extremal".into(),
                    )
                }
            }
        };

        let report = verify_inequality(args.problem.into(), &pt, &ex, &data, &cfg)?;
        let pass = report.ratio <= 1.0 + args.tol;
        Ok(VerifyRecord {
            problem: heatsharp::Problem::from(args.problem).to_string(),
            n: args.n,
            p: ex.to_string(),
            a: args.a,
            xn: args.xn,
            t: args.t,
            data: label,
            seed: args.seed,
            lhs: report.lhs,
            rhs: report.rhs,
            ratio: report.ratio,
            truncation_envelope: trunc_envelope,
            pass,
        })
    })();

    match outcome {
        Ok(record) => {
            match args.format {
                Format::Csv => {
                    println!("problem,n,p,a,xn,t,data,seed,lhs,rhs,ratio,pass");
                    println!(
                        "{},{},{},{},{},{},{},{},{},{},{},{}",
                        record.problem,
                        record.n,
                        record.p,
                        record.a,
                        record.xn,
                        record.t,
                        record.data,
                        record.seed,
                        record.lhs,
                        record.rhs,
                        record.ratio,
                        record.pass
                    );
                }
                Format::Json => {
                    println!("{}", serde_json::to_string(&record).expect("serialization"))
                }
            }
            if record.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
