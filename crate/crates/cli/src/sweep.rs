//! The `sweep` command: coefficients over a parameter grid, emitted in
//! deterministic lexicographic order with per-row error reporting.

use std::path::PathBuf;

use clap::Args;
use rayon::prelude::*;
use serde::Deserialize;

use heatsharp::coeff::{sharp_coefficient_for, Exponent, HeatPoint};
use heatsharp::{Error, Problem};

use crate::records::{records_to_json, CoeffRecord, Format};
use crate::{parse_time, quad_config, ProblemArg};

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    problem: Option<ProblemArg>,
    /// Comma-separated dimensions, e.g. "2,3,5"
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated exponents; each a number, ratio, or "inf"
    #[arg(long)]
    p: Option<String>,
    /// Comma-separated diffusion constants
    #[arg(long)]
    a: Option<String>,
    /// Comma-separated heights
    #[arg(long)]
    xn: Option<String>,
    /// Comma-separated times; "inf" allowed
    #[arg(long)]
    t: Option<String>,
    /// JSON sweep specification (flags override its fields)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Relative quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// The config-file form of a sweep.
#[derive(Debug, Clone, Deserialize)]
pub struct SweepSpec {
    pub problem: String,
    pub n: Vec<u32>,
    pub p: Vec<String>,
    pub a: Vec<f64>,
    pub xn: Vec<f64>,
    pub t: Vec<String>,
    #[serde(default)]
    pub rel_tol: Option<f64>,
    #[serde(default)]
    pub format: Option<String>,
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Error> {
    let items: Result<Vec<T>, _> = text.split(',').map(|s| s.trim().parse::<T>()).collect();
    items.map_err(|_| Error::Domain(format!("cannot parse {what} list from {text:?}")))
}

struct ResolvedSweep {
    problem: Problem,
    n: Vec<u32>,
    p: Vec<String>,
    a: Vec<f64>,
    xn: Vec<f64>,
    t: Vec<String>,
    rel_tol: Option<f64>,
    format: Format,
}

fn resolve(args: &SweepArgs) -> Result<ResolvedSweep, Error> {
    let spec: Option<SweepSpec> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Domain(format!("cannot read config {path:?}: {e}")))?;
            Some(
                serde_json::from_str(&text)
                    .map_err(|e| Error::Domain(format!("cannot parse config {path:?}: {e}")))?,
            )
        }
        None => None,
    };

    let problem = match (args.problem, &spec) {
        (Some(p), _) => p.into(),
        (None, Some(s)) => match s.problem.as_str() {
            "dirichlet" => Problem::Dirichlet,
            "neumann" => Problem::Neumann,
            other => {
                return Err(Error::Domain(format!(
                    "unknown problem {other:?} in config"
                )))
            }
        },
        (None, None) => return Err(Error::Domain("missing --problem (or --config)".into())),
    };

    let n = match (&args.n, &spec) {
        (Some(text), _) => parse_list::<u32>(text, "dimension")?,
        (None, Some(s)) => s.n.clone(),
        (None, None) => return Err(Error::Domain("missing --n".into())),
    };
    let p = match (&args.p, &spec) {
        (Some(text), _) => text.split(',').map(|s| s.trim().to_owned()).collect(),
        (None, Some(s)) => s.p.clone(),
        (None, None) => return Err(Error::Domain("missing --p".into())),
    };
    let a = match (&args.a, &spec) {
        (Some(text), _) => parse_list::<f64>(text, "diffusion constant")?,
        (None, Some(s)) => s.a.clone(),
        (None, None) => return Err(Error::Domain("missing --a".into())),
    };
    let xn = match (&args.xn, &spec) {
        (Some(text), _) => parse_list::<f64>(text, "height")?,
        (None, Some(s)) => s.xn.clone(),
        (None, None) => return Err(Error::Domain("missing --xn".into())),
    };
    let t = match (&args.t, &spec) {
        (Some(text), _) => text.split(',').map(|s| s.trim().to_owned()).collect(),
        (None, Some(s)) => s.t.clone(),
        (None, None) => return Err(Error::Domain("missing --t".into())),
    };
    if n.is_empty() || p.is_empty() || a.is_empty() || xn.is_empty() || t.is_empty() {
        return Err(Error::Domain("all sweep grids must be non-empty".into()));
    }

    let rel_tol = args.tol.or(spec.as_ref().and_then(|s| s.rel_tol));
    let format = match (args.format, &spec) {
        (Some(f), _) => f,
        (None, Some(s)) => match s.format.as_deref() {
            Some("json") => Format::Json,
            Some("csv") | None => Format::Csv,
            Some(other) => {
                return Err(Error::Domain(format!("unknown format {other:?} in config")))
            }
        },
        (None, None) => Format::Csv,
    };

    Ok(ResolvedSweep {
        problem,
        n,
        p,
        a,
        xn,
        t,
        rel_tol,
        format,
    })
}

pub fn run(args: &SweepArgs) -> i32 {
    let resolved = match resolve(args) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let cfg = quad_config(resolved.rel_tol);

    // Lexicographic over the grids in flag order: n, p, a, xn, t.
    let mut grid = Vec::new();
    for &n in &resolved.n {
        for p in &resolved.p {
            for &a in &resolved.a {
                for &xn in &resolved.xn {
                    for t in &resolved.t {
                        grid.push((n, p.clone(), a, xn, t.clone()));
                    }
                }
            }
        }
    }

    // Rows computed in parallel, emitted in grid order.
    let records: Vec<CoeffRecord> = grid
        .par_iter()
        .map(|(n, p, a, xn, t)| {
            let row = (|| -> Result<CoeffRecord, Error> {
                let ex = Exponent::parse(p)?;
                let time = parse_time(t)?;
                let pt = HeatPoint::new(*n, *a, *xn, time)?;
                let r = sharp_coefficient_for(resolved.problem, &pt, &ex, &cfg, false)?;
                Ok(CoeffRecord::new(resolved.problem, &pt, &ex, &r))
            })();
            row.unwrap_or_else(|e| {
                CoeffRecord::failed(
                    resolved.problem,
                    *n,
                    p,
                    *a,
                    *xn,
                    parse_time(t).unwrap_or(f64::NAN),
                    e.to_string(),
                )
            })
        })
        .collect();

    match resolved.format {
        Format::Csv => {
            println!("{}", CoeffRecord::csv_header(true));
            for r in &records {
                println!("{}", r.csv_row(true));
            }
        }
        Format::Json => println!("{}", records_to_json(&records)),
    }

    if records.iter().all(|r| r.error.is_some()) {
        3
    } else {
        0
    }
}
