//! Acceptance suite: one test per criterion, each printing a pass line
//! with the measured worst case (run with `--nocapture` to see them).

use std::f64::consts::PI;

use rayon::prelude::*;

use heatsharp::boundary::BoundaryData;
use heatsharp::coeff::{
    bracket_functional, dirichlet_printed_constant_route, dirichlet_sharp_coefficient,
    dirichlet_sup_coefficient_direct, neumann_p2_alt_constant_route, neumann_sharp_coefficient,
    Exponent, HeatPoint, Problem,
};
use heatsharp::extremal::{
    axial_moment, axis_value_zonal, holder_majorization_check, maximize_functional,
    mc_bracket_guard, moment_boundary_term, transverse_moment, DiscreteHolderInstance,
    SphereFunctionalParams,
};
use heatsharp::potential::{extremal_boundary_data, verify_inequality, Truncation};
use heatsharp::specfun::{upper_incomplete_gamma, IncompleteGammaArgs};
use heatsharp::QuadratureConfig;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(f64::MIN_POSITIVE)
}

// ---------------------------------------------------------------------
// Criterion 1: incomplete Gamma against an independent quadrature
// oracle, and the recurrence identity.
// ---------------------------------------------------------------------

/// Adaptive Simpson with Richardson correction; independent of the
/// library's quadrature and of its Gamma implementation.
fn simpson_adaptive(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol * 0.5, depth - 1)
            + rec(f, m, b, fm, frm, fb, right, tol * 0.5, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Brute-force oracle for `int_x^inf xi^(alpha-1) e^(-xi) dxi`.
fn oracle_upper_gamma(alpha: f64, x: f64) -> f64 {
    let integrand = move |xi: f64| ((alpha - 1.0) * xi.ln() - xi).exp();
    let upper = x.max(alpha) + 90.0 + 10.0 * (1.0 + alpha).ln();
    let coarse: f64 = {
        // Composite Simpson on a fixed fine grid just to set the scale.
        let lo = if x == 0.0 { 1.0 } else { x };
        let steps = 2000;
        let h = (upper - lo) / steps as f64;
        let mut s = integrand(lo) + integrand(upper);
        for k in 1..steps {
            let w = if k % 2 == 1 { 4.0 } else { 2.0 };
            s += w * integrand(lo + k as f64 * h);
        }
        (s * h / 3.0).max(f64::MIN_POSITIVE)
    };
    let tol = coarse * 1e-13;
    if x == 0.0 {
        // Substitute xi = u^2 on [0, 1] to remove the endpoint
        // singularity of xi^(alpha-1) for alpha < 1.
        let head = simpson_adaptive(
            &move |u: f64| 2.0 * u.powf(2.0 * alpha - 1.0) * (-u * u).exp(),
            0.0,
            1.0,
            tol,
        );
        head + simpson_adaptive(&integrand, 1.0, upper, tol)
    } else {
        simpson_adaptive(&integrand, x, upper, tol)
    }
}

#[test]
fn criterion_01_special_functions() {
    let alphas = [0.5, 1.0, 2.5, 5.0, 10.0, 30.0];
    let xs = [0.0, 0.1, 1.0, 10.0, 100.0];

    let mut worst_oracle = 0.0f64;
    for &alpha in &alphas {
        for &x in &xs {
            let got = upper_incomplete_gamma(IncompleteGammaArgs::new(alpha, x).unwrap()).unwrap();
            let want = oracle_upper_gamma(alpha, x);
            let e = rel_err(got, want);
            worst_oracle = worst_oracle.max(e);
            assert!(
                e <= 1e-10,
                "alpha={alpha} x={x}: got={got} oracle={want} rel={e:.3e}"
            );
        }
    }

    let mut worst_rec = 0.0f64;
    for &alpha in &alphas {
        for &x in &xs {
            let g1 =
                upper_incomplete_gamma(IncompleteGammaArgs::new(alpha + 1.0, x).unwrap()).unwrap();
            let g0 = upper_incomplete_gamma(IncompleteGammaArgs::new(alpha, x).unwrap()).unwrap();
            let boundary = if x == 0.0 {
                0.0
            } else {
                (alpha * x.ln() - x).exp()
            };
            let e = rel_err(g1, alpha * g0 + boundary);
            worst_rec = worst_rec.max(e);
            assert!(e <= 1e-11, "recurrence at alpha={alpha} x={x}: rel={e:.3e}");
        }
    }
    println!(
        "criterion 1 (special functions): PASS — oracle worst rel {worst_oracle:.2e}, \
         recurrence worst rel {worst_rec:.2e}"
    );
}

// ---------------------------------------------------------------------
// Criterion 2: the direction search lands on the axis and matches the
// one-angle closed form over the full parameter grid.
// ---------------------------------------------------------------------

#[test]
fn criterion_02_axis_maximizer_grid() {
    let mut grid = Vec::new();
    for &n in &[2u32, 3, 4, 6] {
        for &kappa in &[0.1, 1.0, 10.0] {
            for &lambda in &[0.0, 1.0, 3.5] {
                for &mu in &[0.0, 1.0, 2.5] {
                    for &nu in &[0.0, 0.5, 1.0, 1.9] {
                        grid.push((n, kappa, lambda, mu, nu));
                    }
                }
            }
        }
    }
    let worst = grid
        .par_iter()
        .map(|&(n, kappa, lambda, mu, nu)| {
            let p = SphereFunctionalParams::new(n, kappa, lambda, mu, nu).unwrap();
            let out = maximize_functional(&p, &cfg()).unwrap();
            assert!(
                out.theta_star.abs() <= 1e-4 || out.degenerate,
                "maximizer off axis at n={n} kappa={kappa} lambda={lambda} mu={mu} nu={nu}: \
                 theta*={}",
                out.theta_star
            );
            let closed = axis_value_zonal(&p, &cfg()).unwrap();
            let e = rel_err(out.value, closed);
            assert!(
                e <= 1e-6,
                "value mismatch at n={n} kappa={kappa} lambda={lambda} mu={mu} nu={nu}: \
                 max={} closed={closed} rel={e:.3e}",
                out.value
            );
            e
        })
        .reduce(|| 0.0, f64::max);
    println!(
        "criterion 2 (axis maximizer, {} grid points): PASS — worst value rel {worst:.2e}",
        grid.len()
    );
}

// ---------------------------------------------------------------------
// Criterion 3: the two moments, their strict ordering, and the
// integration-by-parts identity.
// ---------------------------------------------------------------------

#[test]
fn criterion_03_moment_ordering_and_identity() {
    let mut checked = 0usize;
    let mut worst_identity = 0.0f64;
    let mut worst_equal = 0.0f64;
    for &n in &[2u32, 3, 4, 6] {
        for &kappa in &[0.0, 0.1, 1.0, 10.0] {
            for &lambda in &[0.0, 1.0, 3.5] {
                for &mu in &[0.0, 1.0, 2.5] {
                    let u = axial_moment(n, kappa, lambda, mu, &cfg()).unwrap();
                    let v = transverse_moment(n, kappa, lambda, mu, &cfg()).unwrap();
                    let b = moment_boundary_term(n, kappa, lambda, mu, &cfg()).unwrap();

                    if kappa > 0.0 {
                        assert!(
                            u > v,
                            "U must exceed V at n={n} kappa={kappa} lambda={lambda} mu={mu}: \
                             U={u} V={v}"
                        );
                    }
                    if kappa == 0.0 && mu == 0.0 {
                        let e = rel_err(u, v);
                        worst_equal = worst_equal.max(e);
                        assert!(
                            e <= 1e-10,
                            "U and V must agree at kappa=0, mu=0: n={n} lambda={lambda} rel={e:.3e}"
                        );
                    }
                    // Integration by parts: U = (mu + 1) V + B, which
                    // reduces to U = V + B when mu = 0.
                    let e = rel_err(u, (mu + 1.0) * v + b);
                    worst_identity = worst_identity.max(e);
                    assert!(
                        e <= 1e-8,
                        "parts identity fails at n={n} kappa={kappa} lambda={lambda} mu={mu}: \
                         U={u} (mu+1)V+B={}",
                        (mu + 1.0) * v + b
                    );
                    checked += 1;
                }
            }
        }
    }
    println!(
        "criterion 3 (moment ordering, {checked} points): PASS — identity worst rel \
         {worst_identity:.2e}, kappa=0 equality worst rel {worst_equal:.2e}"
    );
}

// ---------------------------------------------------------------------
// Criterion 4: the discrete majorization principle over seeded random
// instances.
// ---------------------------------------------------------------------

#[test]
fn criterion_04_discrete_majorization() {
    let failures: usize = (0..1000u64)
        .into_par_iter()
        .map(|seed| {
            let inst = DiscreteHolderInstance::random_with_premise(seed, 20, 50);
            let out = holder_majorization_check(&inst)
                .unwrap_or_else(|e| panic!("seed {seed}: premise must hold: {e}"));
            if out.holds {
                0
            } else {
                eprintln!("seed {seed}: witness {:?}", out.witness);
                1
            }
        })
        .sum();
    assert_eq!(failures, 0, "{failures} counterexamples out of 1000 seeds");
    println!("criterion 4 (discrete majorization, 1000 seeds): PASS — zero counterexamples");
}

// ---------------------------------------------------------------------
// Criterion 5: Dirichlet search path equals the closed form.
// ---------------------------------------------------------------------

#[test]
fn criterion_05_dirichlet_cross_path() {
    let exponents = [
        Exponent::from_ratio(2, 1).unwrap(),
        Exponent::from_ratio(3, 1).unwrap(),
        Exponent::from_ratio(10, 1).unwrap(),
        Exponent::infinity(),
    ];
    let mut cases = Vec::new();
    for &ex in &exponents {
        for &n in &[2u32, 3, 5] {
            for &kappa in &[0.25, 1.0, 4.0] {
                cases.push((ex, n, kappa));
            }
        }
    }
    let worst = cases
        .par_iter()
        .map(|&(ex, n, kappa)| {
            // kappa = q x_n^2 / (4 a^2 t) with a = x_n = 1.
            let t = ex.q() / (4.0 * kappa);
            let pt = HeatPoint::new(n, 1.0, 1.0, t).unwrap();
            let closed = dirichlet_sharp_coefficient(&pt, &ex, &cfg(), false).unwrap();
            let maxed = dirichlet_sharp_coefficient(&pt, &ex, &cfg(), true).unwrap();
            let e = rel_err(maxed.value, closed.value);
            assert!(
                e <= 1e-6,
                "cross-path mismatch at p={ex} n={n} kappa={kappa}: closed={} maximized={} \
                 rel={e:.3e}",
                closed.value,
                maxed.value
            );
            e
        })
        .reduce(|| 0.0, f64::max);
    println!(
        "criterion 5 (Dirichlet cross-path, {} cases): PASS — worst rel {worst:.2e}",
        cases.len()
    );
}

// ---------------------------------------------------------------------
// Criterion 6: Dirichlet anchors for sup data.
// ---------------------------------------------------------------------

#[test]
fn criterion_06_dirichlet_sup_anchors() {
    // Infinite-horizon anchor of the printed-constant closed form:
    // exactly 4 pi at n=3, a=1, x_n=1 (the reported sharp coefficient
    // is smaller by exactly 4 a^2 pi, i.e. exactly 1 here).
    let pt = HeatPoint::new(3, 1.0, 1.0, f64::INFINITY).unwrap();
    let printed =
        dirichlet_printed_constant_route(&pt, &Exponent::infinity(), &cfg(), false).unwrap();
    let e_anchor = rel_err(printed, 4.0 * PI);
    assert!(
        e_anchor <= 1e-8,
        "anchor: got={printed} want={} rel={e_anchor:.3e}",
        4.0 * PI
    );
    let sharp = dirichlet_sharp_coefficient(&pt, &Exponent::infinity(), &cfg(), false)
        .unwrap()
        .value;
    assert!(
        rel_err(sharp, 1.0) <= 1e-8,
        "sharp anchor: got={sharp} want=1"
    );

    // The general closed form at p = inf against the direct assembly
    // through 16 a^2 sqrt(pi) / Gamma((n-1)/2) (both printed-constant
    // routes), and the measured printed/sharp discrepancy, which must
    // be 4 a^2 pi for every point.
    let mut worst = e_anchor;
    for &n in &[2u32, 3, 5] {
        for &t in &[0.8, f64::INFINITY] {
            let pt = HeatPoint::new(n, 1.1, 0.9, t).unwrap();
            let printed =
                dirichlet_printed_constant_route(&pt, &Exponent::infinity(), &cfg(), false)
                    .unwrap();
            let direct = dirichlet_sup_coefficient_direct(&pt, &cfg()).unwrap();
            let e = rel_err(printed, direct);
            worst = worst.max(e);
            assert!(
                e <= 1e-8,
                "n={n} t={t}: printed={printed} direct={direct} rel={e:.3e}"
            );

            let sharp = dirichlet_sharp_coefficient(&pt, &Exponent::infinity(), &cfg(), false)
                .unwrap()
                .value;
            let e = rel_err(printed / sharp, 4.0 * pt.a * pt.a * PI);
            worst = worst.max(e);
            assert!(
                e <= 1e-10,
                "discrepancy not 4 a^2 pi at n={n} t={t}: rel={e:.3e}"
            );
        }
    }
    println!(
        "criterion 6 (Dirichlet sup anchors): PASS — worst rel {worst:.2e} \
         (printed-constant routes; reported sharp coefficient = printed / (4 a^2 pi))"
    );
}

// ---------------------------------------------------------------------
// Criterion 7: Neumann cross-path, anchor, and the constant-factor
// discrepancy of the alternative printed constant.
// ---------------------------------------------------------------------

#[test]
fn criterion_07_neumann_cross_path_anchor_erratum() {
    // Cross-path at p in {2, (n+4)/2}.
    let mut cases = Vec::new();
    for &n in &[2u32, 3, 5] {
        for ex in [
            Exponent::from_ratio(2, 1).unwrap(),
            Exponent::from_ratio(n as i64 + 4, 2).unwrap(),
        ] {
            for &t in &[0.7, 4.0] {
                cases.push((n, ex, t));
            }
        }
    }
    let worst_cross = cases
        .par_iter()
        .map(|&(n, ex, t)| {
            let pt = HeatPoint::new(n, 1.0, 1.0, t).unwrap();
            let closed = neumann_sharp_coefficient(&pt, &ex, &cfg(), false).unwrap();
            let maxed = neumann_sharp_coefficient(&pt, &ex, &cfg(), true).unwrap();
            assert!(
                !closed.outside_proven_range,
                "p={ex} must be inside the closed range"
            );
            let e = rel_err(maxed.value, closed.value);
            assert!(
                e <= 1e-6,
                "cross-path mismatch at p={ex} n={n} t={t}: closed={} maximized={} rel={e:.3e}",
                closed.value,
                maxed.value
            );
            e
        })
        .reduce(|| 0.0, f64::max);

    // Infinite-horizon anchor a / (sqrt(2) pi) at n=3, a=1, x_n=1, p=2.
    let pt = HeatPoint::new(3, 1.0, 1.0, f64::INFINITY).unwrap();
    let p2 = Exponent::from_ratio(2, 1).unwrap();
    let got = neumann_sharp_coefficient(&pt, &p2, &cfg(), false)
        .unwrap()
        .value;
    let want = 1.0 / (2f64.sqrt() * PI);
    let e_anchor = rel_err(got, want);
    assert!(
        e_anchor <= 1e-8,
        "anchor: got={got} want={want} rel={e_anchor:.3e}"
    );

    // The alternative printed constant underestimates by a factor that
    // must be independent of (a, x_n): the documented erratum check.
    let mut ratios = Vec::new();
    for &a in &[0.5, 1.0, 2.0] {
        for &x_n in &[0.5, 1.0, 3.0] {
            let pt = HeatPoint::new(3, a, x_n, 1.3).unwrap();
            let general = neumann_sharp_coefficient(&pt, &p2, &cfg(), false)
                .unwrap()
                .value;
            let alt = neumann_p2_alt_constant_route(&pt, &cfg()).unwrap();
            ratios.push(general / alt);
        }
    }
    let first = ratios[0];
    let mut worst_const = 0.0f64;
    for &r in &ratios {
        let e = rel_err(r, first);
        worst_const = worst_const.max(e);
        assert!(e <= 1e-6, "discrepancy ratio varies: {ratios:?}");
    }
    // The constant itself is sqrt(2).
    assert!(
        rel_err(first, 2f64.sqrt()) <= 1e-6,
        "discrepancy ratio {first} is not sqrt(2)"
    );

    println!(
        "criterion 7 (Neumann cross-path/anchor/erratum): PASS — cross worst rel \
         {worst_cross:.2e}, anchor rel {e_anchor:.2e}, discrepancy ratio {first:.12} \
         constant to {worst_const:.2e}"
    );
}

// ---------------------------------------------------------------------
// Criterion 8: parabolic scaling laws.
// ---------------------------------------------------------------------

#[test]
fn criterion_08_parabolic_scaling() {
    let mut worst = 0.0f64;
    for &n in &[2u32, 3, 5] {
        for ex in [
            Exponent::from_ratio(2, 1).unwrap(),
            Exponent::from_ratio(3, 1).unwrap(),
        ] {
            let base = HeatPoint::new(n, 1.0, 1.0, 1.0).unwrap();
            let w0 = dirichlet_sharp_coefficient(&base, &ex, &cfg(), false)
                .unwrap()
                .value;
            let n0 = neumann_sharp_coefficient(&base, &ex, &cfg(), false)
                .unwrap()
                .value;
            for &scale in &[0.5f64, 2.0, 10.0] {
                let pt = HeatPoint::new(n, 1.0, scale, scale * scale).unwrap();
                let w = dirichlet_sharp_coefficient(&pt, &ex, &cfg(), false)
                    .unwrap()
                    .value;
                let nv = neumann_sharp_coefficient(&pt, &ex, &cfg(), false)
                    .unwrap()
                    .value;
                let dir_pow = 2.0 + (n as f64 + 1.0) / ex.p();
                let neu_pow = (n as f64 + 1.0) / ex.p();
                let e_w = rel_err(w, scale.powf(-dir_pow) * w0);
                let e_n = rel_err(nv, scale.powf(-neu_pow) * n0);
                worst = worst.max(e_w).max(e_n);
                assert!(
                    e_w <= 1e-12 && e_n <= 1e-12,
                    "scaling violated at n={n} p={ex} scale={scale}: rel_w={e_w:.3e} \
                     rel_n={e_n:.3e}"
                );
            }
        }
    }
    println!("criterion 8 (parabolic scaling): PASS — worst rel {worst:.2e}");
}

// ---------------------------------------------------------------------
// Criterion 9: the inequality harness on random and near-extremal data.
// ---------------------------------------------------------------------

#[test]
fn criterion_09_inequality_harness() {
    let harness_cfg = QuadratureConfig {
        abs_tol: 1e-9,
        rel_tol: 3e-6,
        max_subdivisions: 400,
        mc_samples: 1000,
    };

    let mut combos: Vec<(Problem, u32, Exponent)> = Vec::new();
    for &n in &[2u32, 3] {
        for ex in [
            Exponent::from_ratio(2, 1).unwrap(),
            Exponent::from_ratio(3, 1).unwrap(),
        ] {
            combos.push((Problem::Dirichlet, n, ex));
            combos.push((Problem::Neumann, n, ex));
        }
        combos.push((Problem::Dirichlet, n, Exponent::infinity()));
    }

    // Random smooth data: the bound must hold with 1e-3 slack.
    let worst_ratio = combos
        .par_iter()
        .flat_map(|&(problem, n, ex)| {
            (0..100u64)
                .into_par_iter()
                .map(move |seed| (problem, n, ex, seed))
        })
        .map(|(problem, n, ex, seed)| {
            let pt = HeatPoint::new(n, 1.0, 1.0, 1.0).unwrap();
            let data = BoundaryData::random_smooth(n as usize - 1, seed, 1.5, pt.t).unwrap();
            let r = verify_inequality(problem, &pt, &ex, &data, &harness_cfg).unwrap();
            assert!(
                r.ratio <= 1.0 + 1e-3,
                "bound violated: problem={problem} n={n} p={ex} seed={seed} ratio={}",
                r.ratio
            );
            r.ratio
        })
        .reduce(|| 0.0, f64::max);

    // Near-extremal data: the bound must be nearly saturated.
    let worst_saturation = combos
        .par_iter()
        .map(|&(problem, n, ex)| {
            let pt = HeatPoint::new(n, 1.0, 1.0, 1.0).unwrap();
            let trunc = Truncation::default_for(&pt);
            let x_prime = vec![0.0; n as usize - 1];
            let data =
                extremal_boundary_data(problem, &pt, &ex, &x_prime, &trunc, &harness_cfg).unwrap();
            let r = verify_inequality(problem, &pt, &ex, &data, &harness_cfg).unwrap();
            assert!(
                r.ratio >= 0.95 && r.ratio <= 1.0 + 1e-3,
                "near-extremal ratio out of range: problem={problem} n={n} p={ex} ratio={}",
                r.ratio
            );
            r.ratio
        })
        .reduce(|| 1.0, f64::min);

    println!(
        "criterion 9 (inequality harness, {} combos x 100 seeds): PASS — worst random ratio \
         {worst_ratio:.6}, worst near-extremal saturation {worst_saturation:.6}",
        combos.len()
    );
}

// ---------------------------------------------------------------------
// Criterion 10: Monte Carlo guard on the direction maximum.
// ---------------------------------------------------------------------

#[test]
fn criterion_10_monte_carlo_guard() {
    let cases = [
        (
            Problem::Dirichlet,
            3u32,
            Exponent::from_ratio(3, 1).unwrap(),
            1.0,
        ),
        (
            Problem::Neumann,
            3,
            Exponent::from_ratio(2, 1).unwrap(),
            1.0,
        ),
        (
            Problem::Dirichlet,
            2,
            Exponent::from_ratio(2, 1).unwrap(),
            0.5,
        ),
    ];
    let mut reports = Vec::new();
    for &(problem, n, ex, t) in &cases {
        let pt = HeatPoint::new(n, 1.0, 1.0, t).unwrap();
        let params = bracket_functional(problem, &pt, &ex).unwrap();
        let reported = maximize_functional(&params, &cfg()).unwrap().value;
        let report = mc_bracket_guard(&params, reported, 100_000, 4096, 20_240_817).unwrap();
        assert_eq!(
            report.violations, 0,
            "guard violated for problem={problem} n={n} p={ex}: max estimate {} vs reported \
             {reported} (mean se {})",
            report.max_estimate, report.mean_std_err
        );
        reports.push((problem, n, ex, report.max_estimate / reported));
    }
    // Every coefficient value was checked against 1e5 random directions.
    println!(
        "criterion 10 (Monte Carlo guard, {} cases x 1e5 directions): PASS — peak \
         estimate/reported ratios: {:?}",
        cases.len(),
        reports
            .iter()
            .map(|r| format!("{:.4}", r.3))
            .collect::<Vec<_>>()
    );
}
