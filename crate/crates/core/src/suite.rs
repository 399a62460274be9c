//! The preset suite behind `colwave demo` and the acceptance tests: one
//! function per criterion, each returning the checks it is made of.

use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linwave::{check_support, LinearSolver, QuadratureSpec};
use crate::nets::{EpsilonLadder, InitialDatum, Nonlinearity, Problem};
use crate::semilinear::{FixedPointMap, IterationControl};
use crate::seminorms::{
    classify, fit_valuation, ultra_metric, valuation, Net, NetClass, SpaceTimeGrid, N_MAX,
};
use crate::verify::{
    check_association, check_contraction, check_wave_oracle, ode_check, oracle_field_residual,
    oracle_lifespan, residual_refinement, CheckSummary,
};

/// Problems and grids the suite runs on.
pub mod presets {
    use super::*;
    use crate::verify::plateau_oracle_problem;

    /// `d = 1`, `r = 1`, `T = 0.6`, `u0` a sharpness-6 bump of height 0.5,
    /// `f(u) = u^3`.
    pub fn bump_1d(b: f64) -> Problem {
        Problem {
            dim: 1,
            horizon: 0.6,
            support_radius: 1.0,
            u0: InitialDatum::gaussian(1.0, 0.5, 6.0),
            u1: InitialDatum::Zero,
            nonlinearity: Nonlinearity::cubic(1.0),
            small_exponent: b,
        }
    }

    pub fn grid_1d(dx: f64) -> SpaceTimeGrid {
        SpaceTimeGrid::new(1, 0.6, 1.0, dx, dx).expect("preset grid")
    }

    /// `d = 2`, `r = 1`, `T = 0.3`.
    pub fn bump_2d() -> Problem {
        Problem {
            dim: 2,
            horizon: 0.3,
            support_radius: 1.0,
            u0: InitialDatum::gaussian(1.0, 0.5, 6.0),
            u1: InitialDatum::Zero,
            nonlinearity: Nonlinearity::cubic(1.0),
            small_exponent: 1.0,
        }
    }

    pub fn grid_2d(dx: f64) -> SpaceTimeGrid {
        SpaceTimeGrid::new(2, 0.3, 1.0, dx, 0.5 * dx).expect("preset grid")
    }

    /// `d = 3`, `r = 2`, `T = 0.3`. The wider bump keeps the residual
    /// refinement in its asymptotic range at desk-scale resolution.
    pub fn bump_3d() -> Problem {
        Problem {
            dim: 3,
            horizon: 0.3,
            support_radius: 2.0,
            u0: InitialDatum::gaussian(2.0, 0.5, 6.0),
            u1: InitialDatum::Zero,
            nonlinearity: Nonlinearity::cubic(1.0),
            small_exponent: 1.0,
        }
    }

    pub fn grid_3d(dx: f64) -> SpaceTimeGrid {
        SpaceTimeGrid::new(3, 0.3, 2.0, dx, 0.5 * dx).expect("preset grid")
    }

    pub const ORACLE_INNER: f64 = 0.6;
    pub const ORACLE_HORIZON: f64 = 0.5;
    pub const ORACLE_EPS: [f64; 3] = [0.1, 0.05, 0.025];

    pub fn oracle(dim: usize) -> Problem {
        plateau_oracle_problem(dim, ORACLE_INNER, ORACLE_HORIZON)
    }

    pub fn oracle_grid(dim: usize) -> SpaceTimeGrid {
        SpaceTimeGrid::new(dim, ORACLE_HORIZON, ORACLE_INNER + 1.0, 0.1, 0.05)
            .expect("preset grid")
    }

    pub fn ladder() -> EpsilonLadder {
        let (e, q, n) = EpsilonLadder::DEFAULT;
        EpsilonLadder::new(e, q, n).expect("default ladder")
    }
}

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<CheckSummary>,
    pub seconds: f64,
}

impl Criterion {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    /// `criterion N PASS|FAIL title (s)` followed by one indented line per check.
    pub fn report(&self) -> String {
        let mut s = format!(
            "criterion {} {} {} ({:.1} s)",
            self.id,
            if self.ok() { "PASS" } else { "FAIL" },
            self.title,
            self.seconds
        );
        for c in &self.checks {
            s.push_str("\n    ");
            s.push_str(&c.line());
        }
        s
    }
}

pub const TITLES: [&str; 8] = [
    "linear kernels",
    "support in the light cone",
    "residual refinement",
    "lifespan oracles",
    "contraction",
    "association",
    "ultra-metric calculus",
    "Picard convergence scaling",
];

/// Runs criterion `id` in `1..=8`.
pub fn criterion(id: usize) -> Result<Criterion> {
    let start = Instant::now();
    let checks = match id {
        1 => linear_kernels()?,
        2 => support()?,
        3 => residual()?,
        4 => oracles()?,
        5 => contraction()?,
        6 => association()?,
        7 => ultra_metric_calculus()?,
        8 => picard_scaling()?,
        _ => panic!("criteria are numbered 1 to 8, got {id}"),
    };
    Ok(Criterion {
        id,
        title: TITLES[id - 1],
        checks,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn runtime(start: Instant, budget: f64) -> CheckSummary {
    let s = start.elapsed().as_secs_f64();
    CheckSummary::new("runtime", s < budget)
        .with("seconds", s)
        .with("budget", budget)
}

fn linear_kernels() -> Result<Vec<CheckSummary>> {
    let start = Instant::now();
    let quad = QuadratureSpec::default();
    let mut out = Vec::new();

    let grid = presets::grid_1d(0.02);
    let u0 = InitialDatum::gaussian(1.0, 0.5, 6.0);
    let u = LinearSolver::new(grid, quad)?.homogeneous(&u0, &InitialDatum::Zero)?;
    let mut err = 0.0f64;
    for n in 0..grid.nt() {
        let t = grid.time(n);
        for s in 0..grid.spatial_len() {
            let x = grid.point(s)[0];
            let exact = 0.5 * (u0.value(&[x - t]) + u0.value(&[x + t]));
            err = err.max((u.value(n, s) - exact).abs());
        }
    }
    out.push(CheckSummary::new("translation_average_1d", err <= 1e-8).with("max_error", err));

    for dim in 1..=3 {
        let grid = SpaceTimeGrid::new(dim, 0.5, 2.0, 0.1, 0.05)?;
        let u1 = InitialDatum::plateau(2.0, 1.0, 1.0);
        let u = LinearSolver::new(grid, quad)?.homogeneous(&InitialDatum::Zero, &u1)?;
        let origin = grid.ravel(&[grid.half(); 3][..dim]);
        let err = (0..grid.nt())
            .map(|n| (u.value(n, origin) - grid.time(n)).abs())
            .fold(0.0, f64::max);
        out.push(
            CheckSummary::new(format!("plateau_mean_{dim}d"), err <= 1e-6).with("max_error", err),
        );
    }
    out.push(runtime(start, 30.0));
    Ok(out)
}

/// Largest value outside the inflated cone over the ladder, for the linear
/// and the semilinear solution.
fn support_over(problem: &Problem, grid: &SpaceTimeGrid, eps: &[f64]) -> Result<f64> {
    let map = FixedPointMap::new(problem, grid, &QuadratureSpec::default())?;
    let c = IterationControl::default();
    let r = problem.support_radius;
    let mut worst = 0.0f64;
    for &e in eps {
        let linear = map.linear_part(e)?;
        let (u, rep) = map.solve_with_linear(e, &linear, c.tol, c.max_iter, None)?;
        rep.require_converged()?;
        worst = worst
            .max(check_support(&linear, r, 1e-8).max_outside)
            .max(check_support(&u, r, 1e-8).max_outside);
    }
    Ok(worst)
}

fn support() -> Result<Vec<CheckSummary>> {
    let ladder = presets::ladder();
    let eps = ladder.values();
    let cases = [
        ("bump_1d", presets::bump_1d(1.0), presets::grid_1d(0.02), eps),
        ("bump_2d", presets::bump_2d(), presets::grid_2d(0.1), eps),
        ("bump_3d", presets::bump_3d(), presets::grid_3d(0.2), eps),
        ("oracle_1d", presets::oracle(1), presets::oracle_grid(1), &presets::ORACLE_EPS[..]),
        ("oracle_3d", presets::oracle(3), presets::oracle_grid(3), &presets::ORACLE_EPS[..]),
    ];
    cases
        .into_iter()
        .map(|(name, p, g, eps)| {
            let worst = support_over(&p, &g, eps)?;
            Ok(CheckSummary::new(format!("support_{name}"), worst <= 1e-8)
                .with("max_outside", worst))
        })
        .collect()
}

fn residual() -> Result<Vec<CheckSummary>> {
    let start = Instant::now();
    let quad = QuadratureSpec::default();
    let control = IterationControl::default();
    let cases = [
        ("residual_1d", presets::bump_1d(1.0), [0.04, 0.02, 0.01].map(presets::grid_1d)),
        ("residual_3d", presets::bump_3d(), [0.2, 0.1, 0.05].map(presets::grid_3d)),
    ];
    let mut out = Vec::new();
    for (name, p, grids) in cases {
        let r = residual_refinement(&p, 0.1, &grids, &quad, &control)?;
        let mut c = CheckSummary::new(name, r.ok)
            .with("order", r.order)
            .with("constant", r.constant);
        for (k, l) in r.levels.iter().enumerate() {
            c = c.with(&format!("residual_{k}"), l.sup_residual);
        }
        out.push(c);
    }
    out.push(runtime(start, 300.0));
    Ok(out)
}

fn oracles() -> Result<Vec<CheckSummary>> {
    let quad = QuadratureSpec::default();
    let control = IterationControl::default();
    let mut out = Vec::new();
    for dim in [1, 3] {
        let p = presets::oracle(dim);
        let g = presets::oracle_grid(dim);
        let mut c = CheckSummary::new(format!("wave_oracle_{dim}d"), true);
        for eps in presets::ORACLE_EPS {
            let r = check_wave_oracle(&p, eps, &g, &quad, &control)?;
            c.ok &= r.max_error <= 1e-4;
            c = c.with(&format!("max_error_eps_{eps}"), r.max_error);
        }
        out.push(c);
    }
    let y = oracle_lifespan(0.5, 1.0)?;
    out.push(CheckSummary::new("ode_value", y == 2.0).with("y", y));
    let times: Vec<f64> = (0..=100).map(|k| 0.01 * k as f64).collect();
    let ode = ode_check(0.5, &times)?;
    out.push(
        CheckSummary::new("ode_identities", ode.analytic_defect <= 1e-14 && ode.rescaled_defect <= 1e-14)
            .with("analytic_defect", ode.analytic_defect)
            .with("rescaled_defect", ode.rescaled_defect)
            .with("fd_defect", ode.fd_defect),
    );
    let mut c = CheckSummary::new("oracle_field_residual", true);
    for dim in 1..=3 {
        let r = oracle_field_residual(&presets::oracle_grid(dim), 0.1)?;
        c.ok &= r <= 1e-4;
        c = c.with(&format!("residual_{dim}d"), r);
    }
    out.push(c);
    Ok(out)
}

fn contraction() -> Result<Vec<CheckSummary>> {
    let ladder = presets::ladder();
    let grid = presets::grid_1d(0.02);
    [0.5, 1.0]
        .into_iter()
        .map(|b| {
            let p = presets::bump_1d(b).with_nonlinearity(Nonlinearity::Sine);
            let r = check_contraction(
                &p,
                &ladder,
                &grid,
                &QuadratureSpec::default(),
                &IterationControl::default(),
                0.1,
            )?;
            let mut c = CheckSummary::new(format!("contraction_b_{b}"), r.ok && r.metric_ok)
                .with("metric_ratio", r.metric_ratio)
                .with("metric_bound", (-(b - 0.1f64)).exp());
            for (n, g) in r.gaps.iter().enumerate() {
                c = c.with(&format!("gap_{n}"), *g);
            }
            Ok(c)
        })
        .collect()
}

fn association() -> Result<Vec<CheckSummary>> {
    let ladder = presets::ladder();
    let grid = presets::grid_1d(0.02);
    [0.5, 1.0, 2.0]
        .into_iter()
        .map(|b| {
            let r = check_association(
                &presets::bump_1d(b),
                &ladder,
                &grid,
                &QuadratureSpec::default(),
                &IterationControl::default(),
            )?;
            Ok(
                CheckSummary::new(format!("association_b_{b}"), r.associated && r.strong_rate_ok)
                    .with("fitted_rate", r.fitted_rate.slope)
                    .with("rate_floor", b - 0.1),
            )
        })
        .collect()
}

/// Random triples `(B, B + I1, B + I1 + I2)`: `B` a random sum of powers
/// of `eps` times oscillating profiles on `|x| < 1`, `I1` and `I2` random
/// signed monomials `c eps^a` times translates of one bump to `x = -2` and
/// `x = 2`. Supports are disjoint, so differences are exact in floating
/// point, and exponents are two apart, so one term dominates every
/// difference over the whole ladder.
fn ultra_metric_calculus() -> Result<Vec<CheckSummary>> {
    let ladder = presets::ladder();
    let grid = SpaceTimeGrid::new(1, 0.5, 3.0, 0.1, 0.1)?;
    let bump = InitialDatum::gaussian(0.8, 1.0, 6.0);
    let window = InitialDatum::gaussian(1.0, 1.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_101);
    let mut symmetric = 0;
    let mut strong = 0;
    let mut worst_excess = f64::NEG_INFINITY;
    const TRIPLES: usize = 50;
    for _ in 0..TRIPLES {
        let terms: Vec<[f64; 3]> = (0..3)
            .map(|_| {
                [
                    rng.random_range(0.0..3.0),
                    rng.random_range(-1.0..1.0),
                    rng.random_range(0.5..3.0),
                ]
            })
            .collect();
        let base = Net::from_fn(&ladder, grid, |e, t, x| {
            window.value(x)
                * terms
                    .iter()
                    .map(|[a, c, k]| c * e.powf(*a) * (k * x[0] + t).sin())
                    .sum::<f64>()
        });
        let mut increment = |center: f64| {
            let a = 2.0 * rng.random_range(-1..4) as f64;
            let c = rng.random_range(0.5..2.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            Net::from_fn(&ladder, grid, |e, _, x| {
                c * e.powf(a) * bump.value(&[x[0] - center])
            })
        };
        let u = base;
        let v = u.add(&increment(-2.0))?;
        let w = v.add(&increment(2.0))?;
        let d = |p: &Net, q: &Net| ultra_metric(p, q, N_MAX + 1);
        let (uv, vu, vw, wv, uw, wu) = (d(&u, &v)?, d(&v, &u)?, d(&v, &w)?, d(&w, &v)?, d(&u, &w)?, d(&w, &u)?);
        if uv == vu && vw == wv && uw == wu {
            symmetric += 1;
        }
        let excess = [uw - uv.max(vw), uv - uw.max(vw), vw - uv.max(uw)]
            .into_iter()
            .fold(f64::NEG_INFINITY, f64::max);
        worst_excess = worst_excess.max(excess);
        if excess <= 1e-9 * uv.max(vw).max(uw) {
            strong += 1;
        }
    }
    let mut out = vec![
        CheckSummary::new("symmetry", symmetric == TRIPLES).with("triples", symmetric as f64),
        CheckSummary::new("strong_triangle", strong == TRIPLES)
            .with("triples", strong as f64)
            .with("worst_excess", worst_excess),
    ];

    let profile = |t: f64, x: &[f64]| 1.0 + 0.5 * (x[0] + t).sin();
    let mut worst = 0.0f64;
    for a in [0.0, 1.0, 2.5, 10.0] {
        let net = Net::from_fn(&ladder, grid, |e, t, x| e.powf(a) * profile(t, x));
        for n in 0..=N_MAX {
            worst = worst.max((valuation(&net, n)?.slope - a).abs());
        }
    }
    let eps = ladder.values();
    let scalar: Vec<f64> = eps.iter().map(|e| 3.0 * e.powf(2.5)).collect();
    worst = worst.max((fit_valuation(eps, &scalar)?.slope - 2.5).abs());
    out.push(CheckSummary::new("planted_exponents", worst <= 1e-10).with("max_error", worst));

    let planted = [
        (10.0, NetClass::NegligibleAtTestedOrder),
        (0.0, NetClass::BoundedType),
        (-1.0, NetClass::Moderate),
    ];
    let mut hits = 0;
    for (a, want) in planted {
        let net = Net::from_fn(&ladder, grid, |e, t, x| e.powf(a) * profile(t, x));
        if classify(&net)? == want {
            hits += 1;
        }
    }
    out.push(CheckSummary::new("classification", hits == planted.len()).with("hits", hits as f64));
    Ok(out)
}

/// `history[1] / history[0]` per ladder entry, fitted against `eps`.
fn picard_scaling() -> Result<Vec<CheckSummary>> {
    let ladder = presets::ladder();
    let quad = QuadratureSpec::default();
    let control = IterationControl::default();
    let cases = [
        ("increment_ratio_1d", presets::bump_1d(1.0), presets::grid_1d(0.02)),
        ("increment_ratio_3d", presets::bump_3d(), presets::grid_3d(0.2)),
    ];
    cases
        .into_iter()
        .map(|(name, p, g)| {
            let map = FixedPointMap::new(&p, &g, &quad)?;
            let (_, reports) = map
                .solve_net(&ladder, control.tol, control.max_iter)?
                .into_converged()?;
            let (eps, ratios): (Vec<f64>, Vec<f64>) = reports
                .iter()
                .filter(|r| r.increment_history.len() >= 2)
                .map(|r| (r.eps, r.increment_history[1] / r.increment_history[0]))
                .unzip();
            let slope = fit_valuation(&eps, &ratios)?.slope;
            Ok(CheckSummary::new(name, (slope - 1.0).abs() <= 0.15)
                .with("slope", slope)
                .with("ratio_at_eps0", ratios[0]))
        })
        .collect()
}
