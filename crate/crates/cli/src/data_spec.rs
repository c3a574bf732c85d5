//! Serialized vocabulary for boundary data, used by `verify
//! --data-config` and documented in the README.

use serde::Deserialize;

use heatsharp::boundary::{BoundaryData, GaussianBump};
use heatsharp::Error;

/// A boundary-data expression in the config file.
///
/// ```json
/// { "kind": "gaussian_bumps",
///   "bumps": [ { "amplitude": 1.0, "center": [0.0], "width": 0.8,
///                "t_center": 0.5, "t_width": 0.5 } ] }
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryDataSpec {
    Constant {
        value: f64,
        radius: f64,
        #[serde(default)]
        center: Option<Vec<f64>>,
    },
    GaussianBumps {
        bumps: Vec<BumpSpec>,
    },
    SignPattern {
        radius: f64,
        t: f64,
        cells_per_axis: usize,
        time_bins: usize,
        cells: Vec<i8>,
    },
}

#[derive(Debug, Clone, Deserialize)]
pub struct BumpSpec {
    pub amplitude: f64,
    pub center: Vec<f64>,
    pub width: f64,
    pub t_center: f64,
    pub t_width: f64,
}

impl BoundaryDataSpec {
    pub fn build(&self, dim: usize) -> Result<BoundaryData, Error> {
        match self {
            BoundaryDataSpec::Constant {
                value,
                radius,
                center,
            } => {
                let center = center.clone().unwrap_or_else(|| vec![0.0; dim]);
                if center.len() != dim {
                    return Err(Error::Domain(format!(
                        "constant data center has dimension {}, expected {dim}",
                        center.len()
                    )));
                }
                BoundaryData::constant(*value, center, *radius)
            }
            BoundaryDataSpec::GaussianBumps { bumps } => {
                let bumps = bumps
                    .iter()
                    .map(|b| GaussianBump {
                        amplitude: b.amplitude,
                        center: b.center.clone(),
                        width: b.width,
                        t_center: b.t_center,
                        t_width: b.t_width,
                    })
                    .collect();
                BoundaryData::gaussian_bumps(dim, bumps)
            }
            BoundaryDataSpec::SignPattern {
                radius,
                t,
                cells_per_axis,
                time_bins,
                cells,
            } => BoundaryData::sign_pattern(
                dim,
                *radius,
                *t,
                *cells_per_axis,
                *time_bins,
                cells.clone(),
            ),
        }
    }
}
