//! Heat layer potentials, their gradient kernels, strip norms, and the
//! end-to-end inequality verification harness.
//!
//! The Dirichlet solution is the double layer potential of the boundary
//! values; the Neumann solution is the single layer potential of the
//! normal derivative. Space integration is truncated to the data's
//! declared support (the data is exactly zero outside it). The time
//! integral is steep near the evaluation instant; substituting
//! `s = |x - y|^2 / (4 a^2 (t - tau))` maps that endpoint to a
//! decaying-exponential tail, which is where it is integrated.

use std::cell::{Cell, RefCell};
use std::f64::consts::PI;

use crate::boundary::{BoundaryData, Smoothness};
use crate::coeff::{sharp_coefficient_for, Exponent, HeatPoint, Problem};
use crate::error::{Error, Result};
use crate::quad::{quad_1d, QuadratureConfig};

fn record_failure(slot: &Cell<Option<Error>>, err: Error) {
    if slot.take().is_none() {
        slot.set(Some(err));
    }
}

/// Time integral `int_0^t (t - tau)^{-m} e^{-d^2 / (4 a^2 (t - tau))} f(tau) dtau`
/// via the tail substitution described in the module docs.
fn time_kernel_integral(
    m: f64,
    d2: f64,
    a: f64,
    t: f64,
    f_tau: &dyn Fn(f64) -> f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let s_lo = d2 / (4.0 * a * a * t);
    if s_lo > 700.0 {
        // The kernel mass is below double-precision resolution.
        return Ok(0.0);
    }
    let s_hi = s_lo.max(m) + 45.0;
    let scale = (4.0 * a * a / d2).powf(m - 1.0);
    let (v, _) = quad_1d(
        |s: f64| {
            let tau = (t - d2 / (4.0 * a * a * s)).clamp(0.0, t);
            s.powf(m - 2.0) * (-s).exp() * f_tau(tau)
        },
        s_lo,
        s_hi,
        cfg,
    )?;
    Ok(scale * v)
}

/// Recursive tensor nesting of [`quad_1d`] over a box; deeper levels run
/// at tighter tolerance so their noise stays below the outer estimates.
fn nested_level(
    f: &dyn Fn(&[f64]) -> f64,
    lo: &[f64],
    hi: &[f64],
    level: usize,
    point: &RefCell<Vec<f64>>,
    failure: &Cell<Option<Error>>,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let last = level + 1 == lo.len();
    let deeper = QuadratureConfig {
        abs_tol: cfg.abs_tol * 0.3,
        rel_tol: cfg.rel_tol * 0.3,
        ..cfg.clone()
    };
    let integrand = |u: f64| -> f64 {
        point.borrow_mut()[level] = u;
        if last {
            f(&point.borrow())
        } else {
            match nested_level(f, lo, hi, level + 1, point, failure, &deeper) {
                Ok(v) => v,
                Err(Error::Convergence { value, .. }) => {
                    record_failure(
                        failure,
                        Error::Convergence {
                            context: "nested space quadrature".into(),
                            value,
                            err_est: f64::NAN,
                        },
                    );
                    value
                }
                Err(e) => {
                    record_failure(failure, e);
                    0.0
                }
            }
        }
    };
    let (v, _) = quad_1d(integrand, lo[level], hi[level], cfg)?;
    Ok(v)
}

fn integrate_over_support(
    center: &[f64],
    radius: f64,
    f: &dyn Fn(&[f64]) -> f64,
    failure: &Cell<Option<Error>>,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let lo: Vec<f64> = center.iter().map(|c| c - radius).collect();
    let hi: Vec<f64> = center.iter().map(|c| c + radius).collect();
    let point = RefCell::new(vec![0.0; center.len()]);
    nested_level(f, &lo, &hi, 0, &point, failure, cfg)
}

enum KernelWeight<'a> {
    Plain,
    DotWith(&'a [f64]),
}

fn validate_potential_args(data: &BoundaryData, x: &[f64], t: f64, a: f64) -> Result<()> {
    if x.len() != data.dim() + 1 {
        return Err(Error::Domain(format!(
            "evaluation point has dimension {}, data boundary has dimension {}",
            x.len(),
            data.dim()
        )));
    }
    if x.len() < 2 {
        return Err(Error::Domain(
            "evaluation point must have dimension >= 2".into(),
        ));
    }
    let x_n = x[x.len() - 1];
    if !x_n.is_finite() || x_n <= 0.0 {
        return Err(Error::Domain(format!(
            "height above the boundary must be positive, got {x_n}"
        )));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!(
            "potential evaluation requires finite positive time, got {t}"
        )));
    }
    if !a.is_finite() || a <= 0.0 {
        return Err(Error::Domain(format!(
            "diffusion constant must be positive, got {a}"
        )));
    }
    Ok(())
}

fn spacetime_integral(
    data: &BoundaryData,
    x: &[f64],
    t: f64,
    a: f64,
    m: f64,
    weight: KernelWeight<'_>,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let dim = data.dim();
    let x_n = x[dim];
    let depth_scale = 0.3f64.powi(dim as i32);
    let time_cfg = QuadratureConfig {
        abs_tol: cfg.abs_tol * depth_scale,
        rel_tol: cfg.rel_tol * depth_scale,
        ..cfg.clone()
    };
    let failure: Cell<Option<Error>> = Cell::new(None);

    let space_integrand = |y: &[f64]| -> f64 {
        let mut d2 = x_n * x_n;
        for i in 0..dim {
            let d = y[i] - x[i];
            d2 += d * d;
        }
        let factor = match &weight {
            KernelWeight::Plain => 1.0,
            KernelWeight::DotWith(z) => {
                let mut dot = -x_n * z[dim];
                for i in 0..dim {
                    dot += (y[i] - x[i]) * z[i];
                }
                dot
            }
        };
        if factor == 0.0 {
            return 0.0;
        }
        let f_tau = |tau: f64| data.eval(y, tau);
        match time_kernel_integral(m, d2, a, t, &f_tau, &time_cfg) {
            Ok(v) => factor * v,
            Err(Error::Convergence {
                value,
                err_est,
                context,
            }) => {
                record_failure(
                    &failure,
                    Error::Convergence {
                        context,
                        value,
                        err_est,
                    },
                );
                factor * value
            }
            Err(e) => {
                record_failure(&failure, e);
                0.0
            }
        }
    };

    let v = integrate_over_support(
        &data.center,
        data.support_radius,
        &space_integrand,
        &failure,
        cfg,
    )?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v)
}

/// Space-time `L^p` norm of the data over `R^{n-1} x (0, t)`; the
/// essential supremum (approximated on a dense grid) for `p = inf`.
pub fn lp_strip_norm(data: &BoundaryData, p: f64, t: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::UnsupportedExponent(format!(
            "strip norm needs p >= 1, got {p}"
        )));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!(
            "strip norm needs finite positive time, got {t}"
        )));
    }
    cfg.validate()?;
    let dim = data.dim();

    if p.is_infinite() {
        const SPACE_PTS: usize = 96;
        const TIME_PTS: usize = 128;
        let total = SPACE_PTS.pow(dim as u32);
        let mut best = 0.0f64;
        let mut y = vec![0.0; dim];
        for idx in 0..total {
            let mut rem = idx;
            for (c, coord) in y.iter_mut().enumerate() {
                let k = rem % SPACE_PTS;
                rem /= SPACE_PTS;
                *coord = data.center[c] - data.support_radius
                    + (2.0 * data.support_radius) * (k as f64 + 0.5) / SPACE_PTS as f64;
            }
            for j in 0..TIME_PTS {
                let tau = t * (j as f64 + 0.5) / TIME_PTS as f64;
                best = best.max(data.eval(&y, tau).abs());
            }
        }
        return Ok(best);
    }

    let depth_scale = 0.3f64.powi(1 + dim as i32);
    let space_cfg = QuadratureConfig {
        abs_tol: cfg.abs_tol * depth_scale,
        rel_tol: cfg.rel_tol * depth_scale,
        ..cfg.clone()
    };
    let failure: Cell<Option<Error>> = Cell::new(None);
    let time_integrand = |tau: f64| -> f64 {
        let space = |y: &[f64]| data.eval(y, tau).abs().powf(p);
        match integrate_over_support(
            &data.center,
            data.support_radius,
            &space,
            &failure,
            &space_cfg,
        ) {
            Ok(v) => v,
            Err(Error::Convergence {
                value,
                err_est,
                context,
            }) => {
                record_failure(
                    &failure,
                    Error::Convergence {
                        context,
                        value,
                        err_est,
                    },
                );
                value
            }
            Err(e) => {
                record_failure(&failure, e);
                0.0
            }
        }
    };
    let (v, _) = quad_1d(time_integrand, 0.0, t, cfg)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v.max(0.0).powf(1.0 / p))
}

/// Double layer potential: the Dirichlet solution
/// `u(x, t) = x_n (4 a^2 pi)^{-n/2} int_0^t int (t - tau)^{-(n+2)/2}
///  e^{-|x-y|^2 / (4 a^2 (t - tau))} f(y', tau) dy' dtau`.
pub fn double_layer(
    data: &BoundaryData,
    x: &[f64],
    t: f64,
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    validate_potential_args(data, x, t, a)?;
    let n = x.len();
    let x_n = x[n - 1];
    let m = (n as f64 + 2.0) / 2.0;
    let integral = spacetime_integral(data, x, t, a, m, KernelWeight::Plain, cfg)?;
    Ok(x_n * (4.0 * a * a * PI).powf(-(n as f64) / 2.0) * integral)
}

/// Directional derivative `(grad(u / x_n), z)` of the double layer
/// potential, computed from its explicit kernel.
pub fn grad_ratio_dirichlet(
    data: &BoundaryData,
    x: &[f64],
    t: f64,
    a: f64,
    z: &[f64],
    cfg: &QuadratureConfig,
) -> Result<f64> {
    validate_potential_args(data, x, t, a)?;
    validate_direction(z, x.len())?;
    let n = x.len();
    let m = (n as f64 + 4.0) / 2.0;
    let c = 2.0 * PI * (4.0 * a * a * PI).powf(-(n as f64 + 2.0) / 2.0);
    let integral = spacetime_integral(data, x, t, a, m, KernelWeight::DotWith(z), cfg)?;
    Ok(c * integral)
}

/// Single layer potential: the Neumann solution
/// `u(x, t) = -2 a^2 (4 a^2 pi)^{-n/2} int_0^t int (t - tau)^{-n/2}
///  e^{-|x-y|^2 / (4 a^2 (t - tau))} g(y', tau) dy' dtau`.
pub fn single_layer(
    data: &BoundaryData,
    x: &[f64],
    t: f64,
    a: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    validate_potential_args(data, x, t, a)?;
    let n = x.len();
    let m = n as f64 / 2.0;
    let integral = spacetime_integral(data, x, t, a, m, KernelWeight::Plain, cfg)?;
    Ok(-2.0 * a * a * (4.0 * a * a * PI).powf(-(n as f64) / 2.0) * integral)
}

/// Directional derivative `(grad u, z)` of the single layer potential.
pub fn grad_single_layer(
    data: &BoundaryData,
    x: &[f64],
    t: f64,
    a: f64,
    z: &[f64],
    cfg: &QuadratureConfig,
) -> Result<f64> {
    validate_potential_args(data, x, t, a)?;
    validate_direction(z, x.len())?;
    let n = x.len();
    let m = (n as f64 + 2.0) / 2.0;
    let integral = spacetime_integral(data, x, t, a, m, KernelWeight::DotWith(z), cfg)?;
    Ok(-(4.0 * a * a * PI).powf(-(n as f64) / 2.0) * integral)
}

fn validate_direction(z: &[f64], n: usize) -> Result<()> {
    if z.len() != n {
        return Err(Error::Domain(format!(
            "direction has dimension {}, expected {n}",
            z.len()
        )));
    }
    let norm: f64 = z.iter().map(|v| v * v).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::Domain(format!(
            "direction must be a unit vector, |z| = {norm}"
        )));
    }
    Ok(())
}

/// Spatial radius and time margin to which near-extremal data is
/// truncated.
#[derive(Debug, Clone, Copy)]
pub struct Truncation {
    pub radius: f64,
    pub time_margin: f64,
}

impl Truncation {
    /// Default: radius `8 a sqrt(t)` beyond the evaluation point, no
    /// time margin.
    pub fn default_for(pt: &HeatPoint) -> Self {
        Self {
            radius: 8.0 * pt.a * pt.t.sqrt(),
            time_margin: 0.0,
        }
    }
}

/// Crude envelope on the relative kernel mass beyond `radius`: the
/// Gaussian factor alone bounds it by `exp(-radius^2 / (4 a^2 t))`.
pub fn truncation_loss_envelope(pt: &HeatPoint, radius: f64) -> f64 {
    (-radius * radius / (4.0 * pt.a * pt.a * pt.t)).exp()
}

/// Boundary data that nearly saturates the gradient bound: proportional
/// to `sign(K) |K|^{q-1}` for the problem's gradient kernel `K` at the
/// maximizer direction (the sign pattern of `K` when `p = inf`),
/// truncated and normalized to unit strip norm.
pub fn extremal_boundary_data(
    problem: Problem,
    pt: &HeatPoint,
    ex: &Exponent,
    x_prime: &[f64],
    trunc: &Truncation,
    cfg: &QuadratureConfig,
) -> Result<BoundaryData> {
    if x_prime.len() + 1 != pt.n as usize {
        return Err(Error::Domain(format!(
            "horizontal position has dimension {}, expected {}",
            x_prime.len(),
            pt.n - 1
        )));
    }
    if !pt.t.is_finite() {
        return Err(Error::Domain(
            "extremal data requires a finite horizon".into(),
        ));
    }
    if trunc.radius.is_nan() || trunc.radius <= 0.0 || !(0.0..pt.t).contains(&trunc.time_margin) {
        return Err(Error::Domain(
            "truncation radius must be positive and the margin below t".into(),
        ));
    }

    let coeff = sharp_coefficient_for(problem, pt, ex, cfg, false)?;
    let (zs, zc) = coeff.theta_star.sin_cos();

    let m = match problem {
        Problem::Dirichlet => (pt.n as f64 + 4.0) / 2.0,
        Problem::Neumann => (pt.n as f64 + 2.0) / 2.0,
    };
    // The kernel prefactor is positive for Dirichlet and negative for
    // Neumann; the data must align with the full kernel sign.
    let orientation = match problem {
        Problem::Dirichlet => 1.0,
        Problem::Neumann => -1.0,
    };
    let q_minus_1 = ex.q() - 1.0;
    let sup_data = ex.is_infinite();
    let (a, x_n, t) = (pt.a, pt.x_n, pt.t);
    let center = x_prime.to_vec();
    let center_for_eval = center.clone();
    let margin = trunc.time_margin;

    let raw = BoundaryData::from_fn(
        move |y: &[f64], tau: f64| {
            if tau <= 0.0 || tau >= t - margin {
                return 0.0;
            }
            let dt = t - tau;
            let mut d2 = x_n * x_n;
            let mut dot = -x_n * zc;
            for (i, (yi, ci)) in y.iter().zip(&center_for_eval).enumerate() {
                let d = yi - ci;
                d2 += d * d;
                if i == 0 {
                    dot += d * zs;
                }
            }
            if dot == 0.0 {
                return 0.0;
            }
            if sup_data {
                return orientation * dot.signum();
            }
            let log_mag = dot.abs().ln() - m * dt.ln() - d2 / (4.0 * a * a * dt);
            let scaled = q_minus_1 * log_mag;
            if scaled < -745.0 {
                return 0.0;
            }
            orientation * dot.signum() * scaled.exp()
        },
        center,
        trunc.radius,
        if sup_data {
            Smoothness::SignPattern
        } else {
            Smoothness::Smooth
        },
    )?;

    let norm = lp_strip_norm(&raw, ex.p(), pt.t, cfg)?;
    if !norm.is_finite() || norm <= 0.0 {
        return Err(Error::Domain(format!(
            "extremal data has degenerate norm {norm}"
        )));
    }
    Ok(raw.scaled(1.0 / norm))
}

/// Both sides of the gradient bound for the given data.
#[derive(Debug, Clone, Copy)]
pub struct InequalityReport {
    /// Euclidean norm of the gradient vector, assembled from directional
    /// derivatives along the coordinate frame.
    pub lhs: f64,
    /// Sharp coefficient times the data's strip norm.
    pub rhs: f64,
    /// `lhs / rhs` (0 when both sides vanish).
    pub ratio: f64,
}

/// Evaluates the bound `lhs <= rhs` at `x = (0, ..., 0, x_n)`.
pub fn verify_inequality(
    problem: Problem,
    pt: &HeatPoint,
    ex: &Exponent,
    data: &BoundaryData,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport> {
    if data.dim() + 1 != pt.n as usize {
        return Err(Error::Domain(format!(
            "data boundary dimension {} does not match n = {}",
            data.dim(),
            pt.n
        )));
    }
    if !pt.t.is_finite() {
        return Err(Error::Domain(
            "verification requires a finite horizon".into(),
        ));
    }
    let n = pt.n as usize;
    let mut x = vec![0.0; n];
    x[n - 1] = pt.x_n;

    let mut sum_sq = 0.0;
    for j in 0..n {
        let mut z = vec![0.0; n];
        z[j] = 1.0;
        let g = match problem {
            Problem::Dirichlet => grad_ratio_dirichlet(data, &x, pt.t, pt.a, &z, cfg)?,
            Problem::Neumann => grad_single_layer(data, &x, pt.t, pt.a, &z, cfg)?,
        };
        sum_sq += g * g;
    }
    let lhs = sum_sq.sqrt();

    let coeff = sharp_coefficient_for(problem, pt, ex, cfg, false)?;
    let norm = lp_strip_norm(data, ex.p(), pt.t, cfg)?;
    let rhs = coeff.value * norm;
    let ratio = if rhs == 0.0 {
        if lhs == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lhs / rhs
    };
    Ok(InequalityReport { lhs, rhs, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::GaussianBump;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig {
            abs_tol: 1e-11,
            rel_tol: 1e-8,
            max_subdivisions: 400,
            mc_samples: 1000,
        }
    }

    fn rel_err(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
    }

    fn erfc(x: f64) -> f64 {
        // Regularized upper Gamma at alpha = 1/2: Gamma(1/2, x^2)/sqrt(pi).
        crate::specfun::regularized_upper(0.5, x * x)
    }

    #[test]
    fn strip_norm_constant_box() {
        // |f| = 2 on a 1-D ball of measure 2 over (0, 1/2).
        let d = BoundaryData::constant(2.0, vec![0.0], 1.0).unwrap();
        let got = lp_strip_norm(&d, 2.0, 0.5, &cfg()).unwrap();
        assert!(rel_err(got, (4.0f64 * 2.0 * 0.5).sqrt()) < 1e-9);
        let sup = lp_strip_norm(&d, f64::INFINITY, 0.5, &cfg()).unwrap();
        assert!(rel_err(sup, 2.0) < 1e-12);
    }

    #[test]
    fn strip_norm_gaussian() {
        // f = e^{-y^2} in one spatial dimension, p = 2, t = 1:
        // (int e^{-2y^2} dy)^{1/2} = (sqrt(pi/2))^{1/2}.
        let d = BoundaryData::from_fn(
            |y, _| (-y[0] * y[0]).exp(),
            vec![0.0],
            9.0,
            Smoothness::Smooth,
        )
        .unwrap();
        let got = lp_strip_norm(&d, 2.0, 1.0, &cfg()).unwrap();
        let want = (PI / 2.0).sqrt().sqrt();
        assert!(rel_err(got, want) < 1e-8, "got={got} want={want}");
    }

    #[test]
    fn double_layer_of_zero_is_zero() {
        let d = BoundaryData::constant(0.0, vec![0.0], 1.0).unwrap();
        let u = double_layer(&d, &[0.0, 1.0], 1.0, 1.0, &cfg()).unwrap();
        assert_eq!(u, 0.0);
    }

    #[test]
    fn double_layer_constant_data_matches_radial_profile() {
        // For f = 1 on the whole boundary, u(x, t) = erfc(x_n / (2 a sqrt(t)))
        // in every dimension; a wide support stands in for the full plane.
        let a = 1.0;
        for &(x_n, t) in &[(0.5f64, 0.25f64), (0.5, 1.0), (1.0, 1.0)] {
            let radius = x_n + 14.0 * a * t.sqrt();
            let d = BoundaryData::constant(1.0, vec![0.0], radius).unwrap();
            let u = double_layer(&d, &[0.0, x_n], t, a, &cfg()).unwrap();
            let want = erfc(x_n / (2.0 * a * t.sqrt()));
            assert!(
                rel_err(u, want) < 1e-6,
                "x_n={x_n} t={t}: u={u} want={want}"
            );
        }
    }

    #[test]
    fn double_layer_is_linear_in_data() {
        let f = BoundaryData::gaussian_bumps(
            1,
            vec![GaussianBump {
                amplitude: 1.0,
                center: vec![0.3],
                width: 0.8,
                t_center: 0.5,
                t_width: 0.6,
            }],
        )
        .unwrap();
        let g = BoundaryData::gaussian_bumps(
            1,
            vec![GaussianBump {
                amplitude: -0.7,
                center: vec![-0.4],
                width: 0.5,
                t_center: 0.3,
                t_width: 0.4,
            }],
        )
        .unwrap();
        let combo = BoundaryData::superpose(&f, 2.0, &g, -3.0).unwrap();
        let x = [0.1, 0.7];
        let (t, a) = (1.0, 1.0);
        let u_combo = double_layer(&combo, &x, t, a, &cfg()).unwrap();
        let u_parts = 2.0 * double_layer(&f, &x, t, a, &cfg()).unwrap()
            - 3.0 * double_layer(&g, &x, t, a, &cfg()).unwrap();
        assert!(rel_err(u_combo, u_parts) < 1e-7, "{u_combo} vs {u_parts}");
    }

    #[test]
    fn grad_ratio_vanishes_for_even_data_horizontal_direction() {
        // Data even about the vertical axis through x, direction horizontal:
        // the kernel is odd in the horizontal offset.
        let d = BoundaryData::from_fn(
            |y, _| (-y[0] * y[0]).exp(),
            vec![0.0],
            9.0,
            Smoothness::Smooth,
        )
        .unwrap();
        let g = grad_ratio_dirichlet(&d, &[0.0, 0.8], 1.0, 1.0, &[1.0, 0.0], &cfg()).unwrap();
        assert!(g.abs() < 1e-8, "got {g}");
    }

    #[test]
    fn gradients_match_centered_differences() {
        let data = BoundaryData::random_smooth(1, 3, 1.5, 1.0).unwrap();
        let (t, a) = (1.0, 1.0);
        let x = [0.2, 0.9];
        let tight = QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            ..cfg()
        };

        for z in [[1.0, 0.0], [0.0, 1.0]] {
            let analytic = grad_ratio_dirichlet(&data, &x, t, a, &z, &tight).unwrap();
            let ratio_at = |pt: [f64; 2]| double_layer(&data, &pt, t, a, &tight).unwrap() / pt[1];
            let mut errors = Vec::new();
            for &h in &[0.08f64, 0.04, 0.02] {
                let plus = ratio_at([x[0] + h * z[0], x[1] + h * z[1]]);
                let minus = ratio_at([x[0] - h * z[0], x[1] - h * z[1]]);
                errors.push(((plus - minus) / (2.0 * h) - analytic).abs());
            }
            // Centered differences are second order: each halving of h
            // should cut the error by about 4; demand order >= 1.9.
            for w in errors.windows(2) {
                let order = (w[0] / w[1]).log2();
                assert!(order > 1.9, "z={z:?} errors={errors:?} order={order}");
            }
        }
    }

    #[test]
    fn single_layer_sign_and_gradient_fd() {
        let data = BoundaryData::gaussian_bumps(
            1,
            vec![GaussianBump {
                amplitude: 1.0,
                center: vec![0.0],
                width: 1.0,
                t_center: 0.5,
                t_width: 0.7,
            }],
        )
        .unwrap();
        let (t, a) = (1.0, 1.0);
        let u = single_layer(&data, &[0.0, 0.5], t, a, &cfg()).unwrap();
        assert!(
            u < 0.0,
            "single layer of nonnegative data must be negative, got {u}"
        );

        let tight = QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            ..cfg()
        };
        let x = [0.1, 0.8];
        let z = [0.0, 1.0];
        let analytic = grad_single_layer(&data, &x, t, a, &z, &tight).unwrap();
        let mut errors = Vec::new();
        for &h in &[0.08f64, 0.04, 0.02] {
            let plus = single_layer(&data, &[x[0], x[1] + h], t, a, &tight).unwrap();
            let minus = single_layer(&data, &[x[0], x[1] - h], t, a, &tight).unwrap();
            errors.push(((plus - minus) / (2.0 * h) - analytic).abs());
        }
        for w in errors.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order > 1.9, "errors={errors:?} order={order}");
        }
    }

    #[test]
    fn extremal_data_properties() {
        let pt = HeatPoint::new(2, 1.0, 1.0, 1.0).unwrap();
        let trunc = Truncation::default_for(&pt);

        // p = inf: a sign pattern with values in {-1, 0, +1}.
        let sup = extremal_boundary_data(
            Problem::Dirichlet,
            &pt,
            &Exponent::infinity(),
            &[0.0],
            &trunc,
            &cfg(),
        )
        .unwrap();
        assert_eq!(sup.smoothness, Smoothness::SignPattern);
        for &(y, tau) in &[(0.0, 0.5), (1.0, 0.2), (-2.0, 0.9), (9.0, 0.5)] {
            let v = sup.eval(&[y], tau);
            assert!(v == 0.0 || v == 1.0 || v == -1.0, "value {v}");
        }

        // p = 2: normalized to unit strip norm.
        let ex = Exponent::from_ratio(2, 1).unwrap();
        let d =
            extremal_boundary_data(Problem::Dirichlet, &pt, &ex, &[0.0], &trunc, &cfg()).unwrap();
        let norm = lp_strip_norm(&d, 2.0, pt.t, &cfg()).unwrap();
        assert!((norm - 1.0).abs() < 1e-8, "norm={norm}");
    }

    #[test]
    fn verify_zero_data_gives_zero_ratio() {
        let pt = HeatPoint::new(2, 1.0, 1.0, 1.0).unwrap();
        let ex = Exponent::from_ratio(2, 1).unwrap();
        let d = BoundaryData::constant(0.0, vec![0.0], 1.0).unwrap();
        let r = verify_inequality(Problem::Dirichlet, &pt, &ex, &d, &cfg()).unwrap();
        assert_eq!(r.ratio, 0.0);
    }

    #[test]
    fn verify_random_data_respects_bound() {
        let pt = HeatPoint::new(2, 1.0, 1.0, 1.0).unwrap();
        let ex = Exponent::from_ratio(2, 1).unwrap();
        for seed in 0..5 {
            let d = BoundaryData::random_smooth(1, seed, 2.0, pt.t).unwrap();
            let r = verify_inequality(Problem::Dirichlet, &pt, &ex, &d, &cfg()).unwrap();
            assert!(r.ratio <= 1.0 + 1e-3, "seed={seed} ratio={}", r.ratio);
            assert!(r.ratio >= 0.0);
        }
    }

    #[test]
    fn verify_parabolic_covariance() {
        // Scaling (x, t, support) by (s, s^2, s) leaves the ratio invariant.
        let tight = QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 3e-10,
            max_subdivisions: 600,
            mc_samples: 1000,
        };
        let ex = Exponent::from_ratio(2, 1).unwrap();
        let base_pt = HeatPoint::new(2, 1.0, 0.8, 1.0).unwrap();
        let base_data = BoundaryData::random_smooth(1, 11, 1.0, 1.0).unwrap();
        let base =
            verify_inequality(Problem::Dirichlet, &base_pt, &ex, &base_data, &tight).unwrap();

        let s = 2.0;
        let scaled_pt = HeatPoint::new(2, 1.0, s * 0.8, s * s * 1.0).unwrap();
        let inner = base_data.clone();
        let scaled_data = BoundaryData::from_fn(
            move |y, tau| inner.eval(&[y[0] / s], tau / (s * s)),
            vec![0.0],
            base_data.support_radius * s,
            Smoothness::Smooth,
        )
        .unwrap();
        let scaled =
            verify_inequality(Problem::Dirichlet, &scaled_pt, &ex, &scaled_data, &tight).unwrap();
        assert!(
            rel_err(base.ratio, scaled.ratio) < 1e-8,
            "base={} scaled={}",
            base.ratio,
            scaled.ratio
        );
    }
}
