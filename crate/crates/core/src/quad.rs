//! Adaptive 1-D quadrature (Gauss-Kronrod 7/15) and reductions of
//! sphere-surface integrals with one or two distinguished axes.
//!
//! A function on the sphere that depends only on the inner product with
//! one axis reduces to a single integral over the polar angle; one that
//! depends on the inner products with two axes reduces to a double
//! integral after quotienting the rotations that fix the first axis.
//! Both reductions bottom out in [`quad_1d`].

use std::cell::Cell;
use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::sphere_area;

/// Tolerances and budgets for the adaptive quadrature and the Monte
/// Carlo cross-check path.
#[derive(Debug, Clone)]
pub struct QuadratureConfig {
    /// Absolute tolerance on the integral.
    pub abs_tol: f64,
    /// Relative tolerance on the integral.
    pub rel_tol: f64,
    /// Maximum number of panel subdivisions per 1-D pass.
    pub max_subdivisions: usize,
    /// Sample count for Monte Carlo estimates.
    pub mc_samples: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            max_subdivisions: 400,
            mc_samples: 100_000,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.abs_tol.is_nan()
            || self.abs_tol < 0.0
            || self.rel_tol.is_nan()
            || self.rel_tol < 0.0
            || self.abs_tol + self.rel_tol <= 0.0
        {
            return Err(Error::Domain(
                "quadrature tolerances must be nonnegative with a positive sum".into(),
            ));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be at least 1".into()));
        }
        if self.mc_samples < 1 {
            return Err(Error::Domain("mc_samples must be at least 1".into()));
        }
        Ok(())
    }

    /// Copy with both tolerances multiplied by `factor`; used to run
    /// grid scans at reduced accuracy before a tight final evaluation.
    pub fn loosened(&self, factor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol * factor,
            rel_tol: (self.rel_tol * factor).min(1e-3),
            ..self.clone()
        }
    }

    fn tolerance_for(&self, total: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * total.abs())
    }
}

// 15-point Kronrod nodes (positive half, descending) and weights, with
// the embedded 7-point Gauss weights, from the classical tables.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_7,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    err: f64,
}

/// Gauss-Kronrod 7/15 on one panel. Nodes are interior, so endpoint
/// limits are never evaluated.
fn gk15<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let h = 0.5 * (hi - lo);
    let c = 0.5 * (lo + hi);

    let fc = f(c);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut fv = [0.0f64; 14];
    for i in 0..7 {
        let dx = h * XGK[i];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        fv[i] = f1;
        fv[7 + i] = f2;
        resk += WGK[i] * (f1 + f2);
        resabs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            resg += WG[i / 2] * (f1 + f2);
        }
    }

    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for i in 0..7 {
        resasc += WGK[i] * ((fv[i] - reskh).abs() + (fv[7 + i] - reskh).abs());
    }

    let value = resk * h;
    resabs *= h.abs();
    resasc *= h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * 1.0f64.min((200.0 * err / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Panel { lo, hi, value, err }
}

/// Adaptive quadrature of `f` over the finite interval `[lo, hi]`.
///
/// Returns the estimate and an error estimate (the sum of per-panel
/// Kronrod error bounds). The worst panel is bisected until the total
/// estimated error meets `max(abs_tol, rel_tol * |value|)`; exhausting
/// the subdivision budget yields a convergence error carrying the best
/// estimate.
pub fn quad_1d<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    cfg.validate()?;
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(Error::Domain(format!(
            "integration interval must be finite with lo < hi, got [{lo}, {hi}]"
        )));
    }

    let mut panels = vec![gk15(&f, lo, hi)];
    let mut splits = 0usize;
    loop {
        let mut total = 0.0;
        let mut err = 0.0;
        for p in &panels {
            total += p.value;
            err += p.err;
        }
        if err <= cfg.tolerance_for(total) || !total.is_finite() {
            if !total.is_finite() {
                return Err(Error::Domain(
                    "integrand produced a non-finite panel value".into(),
                ));
            }
            return Ok((total, err));
        }
        if splits >= cfg.max_subdivisions {
            return Err(Error::Convergence {
                context: format!("quad_1d on [{lo}, {hi}] after {splits} subdivisions"),
                value: total,
                err_est: err,
            });
        }
        let mut worst = 0;
        for (i, p) in panels.iter().enumerate() {
            if p.err > panels[worst].err {
                worst = i;
            }
        }
        let Panel { lo: a, hi: b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval widths hit machine resolution; report what we have.
            let total: f64 = panels.iter().map(|p| p.value).sum();
            let err: f64 = panels.iter().map(|p| p.err).sum();
            return Err(Error::Convergence {
                context: format!("quad_1d on [{lo}, {hi}]: panel width at machine resolution"),
                value: total,
                err_est: err,
            });
        }
        panels[worst] = gk15(&f, a, mid);
        panels.push(gk15(&f, mid, b));
        splits += 1;
    }
}

/// Integral over the unit sphere in `R^n` of `F((e_sigma, e))` for an
/// even function `F`, reduced to the polar angle:
/// `2 omega_{n-1} int_0^{pi/2} F(cos v) sin^{n-2} v dv`.
/// The result does not depend on the axis `e`.
pub fn integrate_zonal<F: Fn(f64) -> f64>(
    f_even: F,
    n: u32,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    integrate_zonal_with_err(f_even, n, cfg).map(|(v, _)| v)
}

/// As [`integrate_zonal`], also returning the quadrature error estimate.
pub fn integrate_zonal_with_err<F: Fn(f64) -> f64>(
    f_even: F,
    n: u32,
    cfg: &QuadratureConfig,
) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "zonal integration needs dimension >= 2, got {n}"
        )));
    }
    let ring = sphere_area(n - 1)?;
    let sin_pow = (n - 2) as i32;
    let (v, e) = quad_1d(
        |theta: f64| f_even(theta.cos()) * theta.sin().powi(sin_pow),
        0.0,
        PI / 2.0,
        cfg,
    )?;
    Ok((2.0 * ring * v, 2.0 * ring * e))
}

fn scaled_inner(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        abs_tol: cfg.abs_tol * 0.25,
        rel_tol: cfg.rel_tol * 0.25,
        ..cfg.clone()
    }
}

/// Integral over the unit sphere in `R^n` of `G((e_sigma, e_n), (e_sigma, z))`
/// where `z = cos(theta_z) e_n + sin(theta_z) e_perp`.
///
/// For `n >= 3` this is
/// `omega_{n-2} int_0^pi int_0^pi G(cos v1, cos theta_z cos v1 + sin theta_z sin v1 cos v2)
///  sin^{n-2} v1 sin^{n-3} v2 dv2 dv1`;
/// for `n = 2` it is the single integral over the circle.
pub fn integrate_biaxial<G: Fn(f64, f64) -> f64>(
    g: G,
    n: u32,
    theta_z: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "biaxial integration needs dimension >= 2, got {n}"
        )));
    }
    if !theta_z.is_finite() || !(0.0..=PI).contains(&theta_z) {
        return Err(Error::Domain(format!(
            "axis angle must lie in [0, pi], got {theta_z}"
        )));
    }

    if n == 2 {
        let (v, _) = quad_1d(
            |phi: f64| g(phi.cos(), (phi - theta_z).cos()),
            0.0,
            2.0 * PI,
            cfg,
        )?;
        return Ok(v);
    }

    let ring = sphere_area(n - 2)?;
    let (ct, st) = (theta_z.cos(), theta_z.sin());
    let sin1_pow = (n - 2) as i32;
    let sin2_pow = (n - 3) as i32;
    let inner_cfg = scaled_inner(cfg);
    let inner_failure: Cell<Option<Error>> = Cell::new(None);

    let outer = |theta1: f64| -> f64 {
        let s = theta1.cos();
        let sin1 = theta1.sin();
        let inner = quad_1d(
            |theta2: f64| {
                let w = ct * s + st * sin1 * theta2.cos();
                g(s, w) * theta2.sin().powi(sin2_pow)
            },
            0.0,
            PI,
            &inner_cfg,
        );
        let inner_value = match inner {
            Ok((v, _)) => v,
            Err(e) => {
                let best = match &e {
                    Error::Convergence { value, .. } => *value,
                    _ => 0.0,
                };
                if inner_failure.take().is_none() {
                    inner_failure.set(Some(e));
                }
                best
            }
        };
        inner_value * sin1.powi(sin1_pow)
    };

    let (v, _) = quad_1d(outer, 0.0, PI, cfg)?;
    if let Some(e) = inner_failure.take() {
        return Err(e);
    }
    Ok(ring * v)
}

/// As [`integrate_biaxial`] for integrands of the product form
/// `G(s, w) = axis_part(s) * dir_part(w)`.
///
/// Exploits the factorization: the axis factor is evaluated once per
/// outer node (it typically hides an incomplete-Gamma evaluation) and a
/// vanishing axis factor skips the inner pass entirely. Panels are
/// split where `s` or `w` changes sign, so kinks of `|.|^e` factors sit
/// on panel boundaries.
pub fn integrate_biaxial_separable<A, D>(
    axis_part: A,
    dir_part: D,
    n: u32,
    theta_z: f64,
    cfg: &QuadratureConfig,
) -> Result<f64>
where
    A: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    if n < 2 {
        return Err(Error::Domain(format!(
            "biaxial integration needs dimension >= 2, got {n}"
        )));
    }
    if !theta_z.is_finite() || !(0.0..=PI).contains(&theta_z) {
        return Err(Error::Domain(format!(
            "axis angle must lie in [0, pi], got {theta_z}"
        )));
    }
    let (ct, st) = (theta_z.cos(), theta_z.sin());

    if n == 2 {
        // Split the circle where s = cos(phi) or w = cos(phi - theta_z)
        // changes sign.
        let mut cuts = vec![0.0, 2.0 * PI, PI / 2.0, 1.5 * PI];
        for raw in [theta_z + PI / 2.0, theta_z + 1.5 * PI] {
            cuts.push(raw.rem_euclid(2.0 * PI));
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let g = |phi: f64| {
            let a = axis_part(phi.cos());
            if a == 0.0 {
                return 0.0;
            }
            a * dir_part((phi - theta_z).cos())
        };
        let mut total = 0.0;
        for pair in cuts.windows(2) {
            if pair[1] - pair[0] > 1e-14 {
                let (v, _) = quad_1d(g, pair[0], pair[1], cfg)?;
                total += v;
            }
        }
        return Ok(total);
    }

    let ring = sphere_area(n - 2)?;
    let sin1_pow = (n - 2) as i32;
    let sin2_pow = (n - 3) as i32;
    let inner_cfg = scaled_inner(cfg);
    let inner_failure: Cell<Option<Error>> = Cell::new(None);

    let outer = |theta1: f64| -> f64 {
        let s = theta1.cos();
        let a_val = axis_part(s);
        if a_val == 0.0 {
            return 0.0;
        }
        let sin1 = theta1.sin();
        let offset = ct * s;
        let slope = st * sin1;
        let h = |theta2: f64| dir_part(offset + slope * theta2.cos()) * theta2.sin().powi(sin2_pow);
        // w = offset + slope cos(theta2) crosses zero inside (0, pi)
        // when |offset| < |slope|; put the crossing on a panel edge.
        let crossing = if slope.abs() > offset.abs() {
            Some((-offset / slope).acos())
        } else {
            None
        };
        let inner = match crossing {
            Some(c) if c > 1e-12 && c < PI - 1e-12 => {
                quad_1d(h, 0.0, c, &inner_cfg).and_then(|(v1, e1)| {
                    quad_1d(h, c, PI, &inner_cfg).map(|(v2, e2)| (v1 + v2, e1 + e2))
                })
            }
            _ => quad_1d(h, 0.0, PI, &inner_cfg),
        };
        let inner_value = match inner {
            Ok((v, _)) => v,
            Err(e) => {
                let best = match &e {
                    Error::Convergence { value, .. } => *value,
                    _ => 0.0,
                };
                if inner_failure.take().is_none() {
                    inner_failure.set(Some(e));
                }
                best
            }
        };
        a_val * inner_value * sin1.powi(sin1_pow)
    };

    // Split the outer pass where s changes sign.
    let (v1, _) = quad_1d(outer, 0.0, PI / 2.0, cfg)?;
    let (v2, _) = quad_1d(outer, PI / 2.0, PI, cfg)?;
    if let Some(e) = inner_failure.take() {
        return Err(e);
    }
    Ok(ring * (v1 + v2))
}

/// Fills `out` with independent standard Gaussian samples (Box-Muller).
pub(crate) fn fill_gaussian(rng: &mut ChaCha8Rng, out: &mut [f64]) {
    let mut i = 0;
    while i < out.len() {
        // u1 in (0, 1], u2 in [0, 1).
        let u1 = (((rng.next_u64() >> 11) + 1) as f64) * (1.0 / 9_007_199_254_740_992.0);
        let u2 = ((rng.next_u64() >> 11) as f64) * (1.0 / 9_007_199_254_740_992.0);
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        out[i] = r * c;
        i += 1;
        if i < out.len() {
            out[i] = r * s;
            i += 1;
        }
    }
}

const MC_CHUNK: usize = 8192;

/// Monte Carlo estimate of the same integral as [`integrate_biaxial`],
/// from uniform sphere samples (normalized Gaussian vectors).
///
/// Returns the estimate and its standard error. Deterministic for a
/// fixed seed independent of thread count: each fixed-size chunk draws
/// from its own ChaCha stream and partial sums are reduced in order.
pub fn mc_biaxial_estimate<G: Fn(f64, f64) -> f64 + Sync>(
    g: G,
    n: u32,
    theta_z: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "biaxial integration needs dimension >= 2, got {n}"
        )));
    }
    if samples < 2 {
        return Err(Error::Domain("Monte Carlo needs at least 2 samples".into()));
    }
    let area = sphere_area(n)?;
    let (ct, st) = (theta_z.cos(), theta_z.sin());
    let dim = n as usize;
    let chunks = samples.div_ceil(MC_CHUNK);

    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let count = MC_CHUNK.min(samples - chunk * MC_CHUNK);
            let mut point = vec![0.0f64; dim];
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                fill_gaussian(&mut rng, &mut point);
                let norm = point.iter().map(|x| x * x).sum::<f64>().sqrt();
                let s = point[dim - 1] / norm;
                let u0 = point[0] / norm;
                let w = ct * s + st * u0;
                let val = g(s, w);
                sum += val;
                sum_sq += val * val;
            }
            (sum, sum_sq)
        })
        .collect();

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for (a, b) in partials {
        sum += a;
        sum_sq += b;
    }
    let nf = samples as f64;
    let mean = sum / nf;
    let variance = ((sum_sq / nf - mean * mean) / (nf - 1.0)).max(0.0);
    Ok((area * mean, area * variance.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::sphere_area;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn rel_err(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn quad_constant_and_sine() {
        let (v, e) = quad_1d(|_| 1.0, 0.0, 1.0, &cfg()).unwrap();
        assert!((v - 1.0).abs() < 1e-14 && e < 1e-10);
        let (v, _) = quad_1d(|x: f64| x.sin(), 0.0, PI, &cfg()).unwrap();
        assert!(rel_err(v, 2.0) < 1e-12);
    }

    #[test]
    fn quad_cos_power() {
        // Antiderivative -cos^6 v / 6 gives 1/6 on [0, pi/2].
        let (v, _) = quad_1d(|t: f64| t.cos().powi(5) * t.sin(), 0.0, PI / 2.0, &cfg()).unwrap();
        assert!(rel_err(v, 1.0 / 6.0) < 1e-12);
    }

    #[test]
    fn quad_error_estimate_brackets_truth() {
        let (v, e) = quad_1d(|x: f64| (10.0 * x).cos() * (-x).exp(), 0.0, 3.0, &cfg()).unwrap();
        // Antiderivative of e^{-x} cos(10x) is e^{-x}(10 sin(10x) - cos(10x))/101.
        let anti = |x: f64| (-x).exp() * (10.0 * (10.0 * x).sin() - (10.0 * x).cos()) / 101.0;
        assert!((v - (anti(3.0) - anti(0.0))).abs() <= e.max(1e-12));
    }

    #[test]
    fn quad_budget_exhaustion_reports_best_estimate() {
        let tight = QuadratureConfig {
            abs_tol: 1e-300,
            rel_tol: 0.0,
            max_subdivisions: 3,
            mc_samples: 10,
        };
        let err = quad_1d(|x: f64| (1e4 * x).sin().abs(), 0.0, 1.0, &tight).unwrap_err();
        match err {
            Error::Convergence { value, err_est, .. } => {
                assert!(value.is_finite() && err_est > 0.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn quad_rejects_bad_input() {
        assert!(quad_1d(|_| 1.0, 1.0, 0.0, &cfg()).is_err());
        assert!(quad_1d(|_| 1.0, 0.0, f64::INFINITY, &cfg()).is_err());
        let bad = QuadratureConfig {
            abs_tol: 0.0,
            rel_tol: 0.0,
            ..cfg()
        };
        assert!(quad_1d(|_| 1.0, 0.0, 1.0, &bad).is_err());
    }

    #[test]
    fn zonal_surface_area() {
        for n in 2..=6 {
            let v = integrate_zonal(|_| 1.0, n, &cfg()).unwrap();
            assert!(rel_err(v, sphere_area(n).unwrap()) < 1e-11, "n={n}");
        }
    }

    #[test]
    fn zonal_second_moment() {
        // int (e_sigma, e)^2 dsigma = omega_n / n by symmetry.
        for n in 2..=6 {
            let v = integrate_zonal(|u| u * u, n, &cfg()).unwrap();
            assert!(
                rel_err(v, sphere_area(n).unwrap() / n as f64) < 1e-11,
                "n={n}"
            );
        }
    }

    #[test]
    fn zonal_abs_moment_n3() {
        let v = integrate_zonal(|u: f64| u.abs(), 3, &cfg()).unwrap();
        assert!(rel_err(v, 2.0 * PI) < 1e-11);
    }

    #[test]
    fn biaxial_constant() {
        for &theta in &[0.0, 0.3, PI / 2.0, 2.9] {
            let v = integrate_biaxial(|_, _| 1.0, 3, theta, &cfg()).unwrap();
            assert!(rel_err(v, 4.0 * PI) < 1e-10, "theta={theta}");
        }
    }

    #[test]
    fn biaxial_w_square_independent_of_axis() {
        for n in [2u32, 3, 4] {
            for &theta in &[0.0, 0.7, PI / 2.0] {
                let v = integrate_biaxial(|_, w| w * w, n, theta, &cfg()).unwrap();
                let want = sphere_area(n).unwrap() / n as f64;
                assert!(rel_err(v, want) < 1e-10, "n={n} theta={theta}");
            }
        }
    }

    #[test]
    fn biaxial_cross_term_vanishes() {
        let v = integrate_biaxial(|s, w| s * w, 3, PI / 2.0, &cfg()).unwrap();
        assert!(v.abs() < 1e-10, "got {v}");
        // Monte Carlo oracle: zero within 3 standard errors.
        let (mc, se) = mc_biaxial_estimate(|s, w| s * w, 3, PI / 2.0, 10_000_000, 42).unwrap();
        assert!(mc.abs() <= 3.0 * se, "mc={mc} se={se}");
    }

    #[test]
    fn biaxial_matches_zonal_for_zonal_integrands() {
        // G(s, w) = F(s) must reproduce the zonal reduction at any angle.
        let f = |u: f64| (1.0 + u * u).ln() + u.abs();
        for n in [2u32, 3, 5] {
            let zonal = integrate_zonal(f, n, &cfg()).unwrap();
            for &theta in &[0.0, 0.4, 1.2, PI / 2.0] {
                let bi = integrate_biaxial(|s, _| f(s), n, theta, &cfg()).unwrap();
                assert!(rel_err(bi, zonal) < 1e-9, "n={n} theta={theta}");
            }
        }
    }

    #[test]
    fn biaxial_even_integrand_reflection_symmetry() {
        // G even in w: the value at theta and pi - theta must agree.
        let g = |s: f64, w: f64| s * s * w * w + w.abs();
        for n in [2u32, 3, 4] {
            for &theta in &[0.2, 0.9, 1.4] {
                let a = integrate_biaxial(g, n, theta, &cfg()).unwrap();
                let b = integrate_biaxial(g, n, PI - theta, &cfg()).unwrap();
                assert!(rel_err(a, b) < 1e-9, "n={n} theta={theta}");
            }
        }
    }

    #[test]
    fn biaxial_rejects_bad_input() {
        assert!(integrate_biaxial(|_, _| 1.0, 1, 0.0, &cfg()).is_err());
        assert!(integrate_biaxial(|_, _| 1.0, 3, -0.1, &cfg()).is_err());
        assert!(integrate_biaxial(|_, _| 1.0, 3, 3.5, &cfg()).is_err());
    }

    #[test]
    fn mc_agrees_with_quadrature() {
        let g = |s: f64, w: f64| (s * s + 0.5) * w * w;
        for n in [2u32, 3] {
            let exact = integrate_biaxial(g, n, 0.8, &cfg()).unwrap();
            let (mc, se) = mc_biaxial_estimate(g, n, 0.8, 400_000, 7).unwrap();
            assert!(
                (mc - exact).abs() <= 3.0 * se,
                "n={n} mc={mc} exact={exact} se={se}"
            );
        }
    }

    #[test]
    fn mc_deterministic_for_fixed_seed() {
        let g = |s: f64, w: f64| s.abs() + w * w;
        let a = mc_biaxial_estimate(g, 3, 0.5, 100_000, 11).unwrap();
        let b = mc_biaxial_estimate(g, 3, 0.5, 100_000, 11).unwrap();
        assert_eq!(a, b);
    }
}
