//! Output records shared by the `coeff` and `sweep` commands.
//!
//! CSV columns: `problem,n,p,a,xn,t,kappa,lambda,value,theta_star,method,err_est`
//! (`sweep` appends an `error` column). JSON mirrors the same schema as
//! an array of objects. Floats print in shortest round-trip form, so
//! output is bit-stable and diff-friendly.

use clap::ValueEnum;
use serde::Serialize;

use heatsharp::coeff::{CoefficientResult, Exponent, HeatPoint};
use heatsharp::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffRecord {
    pub problem: String,
    pub n: u32,
    pub p: String,
    pub a: f64,
    pub xn: f64,
    pub t: String,
    pub kappa: Option<f64>,
    pub lambda: Option<f64>,
    pub value: Option<f64>,
    pub theta_star: Option<f64>,
    pub method: Option<String>,
    pub err_est: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn time_display(t: f64) -> String {
    if t.is_infinite() {
        "inf".into()
    } else {
        format!("{t}")
    }
}

impl CoeffRecord {
    pub fn new(problem: Problem, pt: &HeatPoint, ex: &Exponent, r: &CoefficientResult) -> Self {
        Self {
            problem: problem.to_string(),
            n: pt.n,
            p: ex.to_string(),
            a: pt.a,
            xn: pt.x_n,
            t: time_display(pt.t),
            kappa: Some(r.kappa),
            lambda: Some(r.lambda),
            value: Some(r.value),
            theta_star: Some(r.theta_star),
            method: Some(r.method.to_string()),
            err_est: Some(r.err_est),
            error: None,
        }
    }

    pub fn failed(
        problem: Problem,
        n: u32,
        p: &str,
        a: f64,
        xn: f64,
        t: f64,
        message: String,
    ) -> Self {
        Self {
            problem: problem.to_string(),
            n,
            p: p.to_owned(),
            a,
            xn,
            t: time_display(t),
            kappa: None,
            lambda: None,
            value: None,
            theta_star: None,
            method: None,
            err_est: None,
            error: Some(message),
        }
    }

    pub fn csv_header(with_error: bool) -> String {
        let base = "problem,n,p,a,xn,t,kappa,lambda,value,theta_star,method,err_est";
        if with_error {
            format!("{base},error")
        } else {
            base.to_owned()
        }
    }

    pub fn csv_row(&self, with_error: bool) -> String {
        fn opt_f(v: Option<f64>) -> String {
            v.map(|x| format!("{x}")).unwrap_or_default()
        }
        let mut row = format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.problem,
            self.n,
            self.p,
            self.a,
            self.xn,
            self.t,
            opt_f(self.kappa),
            opt_f(self.lambda),
            opt_f(self.value),
            opt_f(self.theta_star),
            self.method.clone().unwrap_or_default(),
            opt_f(self.err_est),
        );
        if with_error {
            row.push(',');
            if let Some(e) = &self.error {
                row.push_str(&format!("\"{}\"", e.replace('"', "'")));
            }
        }
        row
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

pub fn records_to_json(records: &[CoeffRecord]) -> String {
    serde_json::to_string_pretty(records).expect("record serialization cannot fail")
}
