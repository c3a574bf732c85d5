//! Boundary data on the strip `R^{n-1} x (0, t)`.
//!
//! Data carries its own compact support so the layer-potential
//! quadrature can truncate soundly: evaluation is hard-clipped to zero
//! outside the declared ball.

use std::sync::Arc;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Coarse regularity tag; sign-pattern data is piecewise constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Smooth,
    SignPattern,
}

type EvalFn = dyn Fn(&[f64], f64) -> f64 + Send + Sync;

/// A boundary function `f(y', tau)` with declared spatial support.
#[derive(Clone)]
pub struct BoundaryData {
    eval: Arc<EvalFn>,
    /// Data vanishes for `|y' - center| > support_radius`.
    pub support_radius: f64,
    /// Center of the supporting ball in `R^{n-1}`.
    pub center: Vec<f64>,
    pub smoothness: Smoothness,
}

impl std::fmt::Debug for BoundaryData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BoundaryData")
            .field("support_radius", &self.support_radius)
            .field("center", &self.center)
            .field("smoothness", &self.smoothness)
            .finish_non_exhaustive()
    }
}

impl BoundaryData {
    /// Wraps a raw function, clipping it to the supporting ball.
    pub fn from_fn(
        eval: impl Fn(&[f64], f64) -> f64 + Send + Sync + 'static,
        center: Vec<f64>,
        support_radius: f64,
        smoothness: Smoothness,
    ) -> Result<Self> {
        if !support_radius.is_finite() || support_radius <= 0.0 {
            return Err(Error::Domain(format!(
                "support radius must be positive and finite, got {support_radius}"
            )));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("support center must be finite".into()));
        }
        Ok(Self {
            eval: Arc::new(eval),
            support_radius,
            center,
            smoothness,
        })
    }

    /// Spatial dimension `n - 1` of the boundary hyperplane.
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Evaluates the data; exactly zero outside the supporting ball.
    pub fn eval(&self, y: &[f64], tau: f64) -> f64 {
        debug_assert_eq!(y.len(), self.center.len());
        let mut dist_sq = 0.0;
        for (yi, ci) in y.iter().zip(&self.center) {
            let d = yi - ci;
            dist_sq += d * d;
        }
        if dist_sq > self.support_radius * self.support_radius {
            return 0.0;
        }
        (self.eval)(y, tau)
    }

    /// Constant value on the supporting ball.
    pub fn constant(value: f64, center: Vec<f64>, support_radius: f64) -> Result<Self> {
        Self::from_fn(
            move |_, _| value,
            center,
            support_radius,
            Smoothness::Smooth,
        )
    }

    /// Sum of space-time Gaussian bumps; the support radius encloses
    /// every bump out to where it is below double-precision resolution.
    pub fn gaussian_bumps(dim: usize, bumps: Vec<GaussianBump>) -> Result<Self> {
        if bumps.is_empty() {
            return Err(Error::Domain("need at least one bump".into()));
        }
        if bumps
            .iter()
            .any(|b| b.center.len() != dim || b.width <= 0.0 || b.t_width <= 0.0)
        {
            return Err(Error::Domain(
                "bump centers must match the dimension and widths must be positive".into(),
            ));
        }
        let mut radius = 0.0f64;
        for b in &bumps {
            let dist = b.center.iter().map(|c| c * c).sum::<f64>().sqrt();
            radius = radius.max(dist + 8.5 * b.width);
        }
        Self::from_fn(
            move |y, tau| {
                let mut sum = 0.0;
                for b in &bumps {
                    let mut d2 = 0.0;
                    for (yi, ci) in y.iter().zip(&b.center) {
                        let d = yi - ci;
                        d2 += d * d;
                    }
                    let dt = (tau - b.t_center) / b.t_width;
                    sum += b.amplitude * (-d2 / (b.width * b.width) - dt * dt).exp();
                }
                sum
            },
            vec![0.0; dim],
            radius,
            Smoothness::Smooth,
        )
    }

    /// Seeded random smooth data: one to three Gaussian bumps with
    /// signs, centers, and widths drawn from the seed. Spatial extent is
    /// of order `spatial_scale`; temporal structure lives inside `(0, t)`.
    pub fn random_smooth(dim: usize, seed: u64, spatial_scale: f64, t: f64) -> Result<Self> {
        if spatial_scale.is_nan() || spatial_scale <= 0.0 || !t.is_finite() || t <= 0.0 {
            return Err(Error::Domain(
                "random data needs a positive scale and a finite positive horizon".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut unit = || ((rng.next_u64() >> 11) as f64) * (1.0 / 9_007_199_254_740_992.0);
        let count = 1 + (unit() * 3.0) as usize % 3;
        let mut bumps = Vec::with_capacity(count);
        for _ in 0..count {
            let amplitude = (0.3 + 0.7 * unit()) * if unit() < 0.5 { -1.0 } else { 1.0 };
            let center: Vec<f64> = (0..dim)
                .map(|_| (2.0 * unit() - 1.0) * spatial_scale)
                .collect();
            let width = (0.3 + 0.7 * unit()) * spatial_scale;
            let t_center = (0.2 + 0.6 * unit()) * t;
            let t_width = (0.3 + 0.7 * unit()) * t;
            bumps.push(GaussianBump {
                amplitude,
                center,
                width,
                t_center,
                t_width,
            });
        }
        Self::gaussian_bumps(dim, bumps)
    }

    /// Piecewise-constant sign pattern on a regular space-time grid over
    /// `[-radius, radius]^dim x (0, t)`. `cells` is indexed time-major:
    /// `cells[time_bin * spatial_cells_total + spatial_index]` with the
    /// spatial index in row-major order; values are typically -1, 0, +1.
    pub fn sign_pattern(
        dim: usize,
        radius: f64,
        t: f64,
        cells_per_axis: usize,
        time_bins: usize,
        cells: Vec<i8>,
    ) -> Result<Self> {
        if cells_per_axis == 0 || time_bins == 0 {
            return Err(Error::Domain(
                "grid must have at least one cell per axis".into(),
            ));
        }
        let spatial_total = cells_per_axis.pow(dim as u32);
        if cells.len() != spatial_total * time_bins {
            return Err(Error::Domain(format!(
                "expected {} cells, got {}",
                spatial_total * time_bins,
                cells.len()
            )));
        }
        if radius.is_nan() || radius <= 0.0 || !t.is_finite() || t <= 0.0 {
            return Err(Error::Domain(
                "need positive radius and finite horizon".into(),
            ));
        }
        let enclosing = radius * (dim as f64).sqrt();
        Self::from_fn(
            move |y, tau| {
                if !(0.0..t).contains(&tau) {
                    return 0.0;
                }
                let mut spatial = 0usize;
                for &yi in y {
                    let rel = (yi + radius) / (2.0 * radius);
                    if !(0.0..1.0).contains(&rel) {
                        return 0.0;
                    }
                    let idx = (rel * cells_per_axis as f64) as usize;
                    spatial = spatial * cells_per_axis + idx.min(cells_per_axis - 1);
                }
                let tb = ((tau / t) * time_bins as f64) as usize;
                cells[tb.min(time_bins - 1) * spatial_total + spatial] as f64
            },
            vec![0.0; dim],
            enclosing,
            Smoothness::SignPattern,
        )
    }

    /// Pointwise linear combination `ca * a + cb * b`; the support is
    /// the smaller ball enclosing both.
    pub fn superpose(a: &BoundaryData, ca: f64, b: &BoundaryData, cb: f64) -> Result<Self> {
        if a.dim() != b.dim() {
            return Err(Error::Domain("dimension mismatch in superposition".into()));
        }
        let dist: f64 = a
            .center
            .iter()
            .zip(&b.center)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt();
        let radius = a.support_radius.max(dist + b.support_radius);
        let (aa, bb) = (a.clone(), b.clone());
        Self::from_fn(
            move |y, tau| ca * aa.eval(y, tau) + cb * bb.eval(y, tau),
            a.center.clone(),
            radius,
            if a.smoothness == Smoothness::Smooth && b.smoothness == Smoothness::Smooth {
                Smoothness::Smooth
            } else {
                Smoothness::SignPattern
            },
        )
    }

    /// Same data multiplied by a constant.
    pub fn scaled(&self, factor: f64) -> Self {
        let inner = self.clone();
        Self {
            eval: Arc::new(move |y, tau| factor * inner.eval(y, tau)),
            support_radius: self.support_radius,
            center: self.center.clone(),
            smoothness: self.smoothness,
        }
    }
}

/// One space-time Gaussian bump.
#[derive(Debug, Clone)]
pub struct GaussianBump {
    pub amplitude: f64,
    pub center: Vec<f64>,
    pub width: f64,
    pub t_center: f64,
    pub t_width: f64,
}
