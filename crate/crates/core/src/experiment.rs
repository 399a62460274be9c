//! Config-driven checks: each produces a summary block and a CSV table.

use std::fmt::Write as _;

use crate::config::{CheckKind, ExperimentConfig};
use crate::error::Result;
use crate::linwave::check_support;
use crate::semilinear::FixedPointMap;
use crate::seminorms::{SpaceTimeGrid, N_MAX};
use crate::verify::{
    check_association, check_contraction, check_uniqueness_surrogate, check_wave_oracle,
    ode_check, oracle_lifespan, plateau_oracle_problem, residual_refinement, CheckSummary,
    Perturbation,
};

/// Result of one configured check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub summary: CheckSummary,
    /// CSV text, header first.
    pub table: String,
}

impl CheckOutcome {
    pub fn file_name(&self) -> String {
        format!("{}.csv", self.summary.name)
    }
}

pub fn run_check(cfg: &ExperimentConfig, kind: CheckKind) -> Result<CheckOutcome> {
    match kind {
        CheckKind::Support => support(cfg),
        CheckKind::Contraction => contraction(cfg),
        CheckKind::Association => association(cfg),
        CheckKind::Uniqueness => uniqueness(cfg),
        CheckKind::Oracle => oracle(cfg),
        CheckKind::Residual => residual(cfg),
    }
}

fn support(cfg: &ExperimentConfig) -> Result<CheckOutcome> {
    let grid = cfg.grid()?;
    let map = FixedPointMap::new(&cfg.problem, &grid, &cfg.quadrature)?;
    let c = cfg.control();
    let r = cfg.problem.support_radius;
    let tol = cfg.parameters.support_tolerance;
    let mut table = String::from("eps,max_outside_linear,max_outside_semilinear\n");
    let mut worst = 0.0f64;
    for eps in cfg.ladder()?.iter() {
        let linear = map.linear_part(eps)?;
        let lin = check_support(&linear, r, tol).max_outside;
        let (u, rep) = map.solve_with_linear(eps, &linear, c.tol, c.max_iter, None)?;
        rep.require_converged()?;
        let semi = check_support(&u, r, tol).max_outside;
        worst = worst.max(lin).max(semi);
        writeln!(table, "{eps:.16e},{lin:.16e},{semi:.16e}").unwrap();
    }
    Ok(CheckOutcome {
        summary: CheckSummary::new("support", worst <= tol).with("max_outside", worst),
        table,
    })
}

fn contraction(cfg: &ExperimentConfig) -> Result<CheckOutcome> {
    let r = check_contraction(
        &cfg.problem,
        &cfg.ladder()?,
        &cfg.grid()?,
        &cfg.quadrature,
        &cfg.control(),
        cfg.parameters.contraction_scale,
    )?;
    let mut table = String::from("n,input_slope,output_slope,gap\n");
    let mut summary = CheckSummary::new("contraction", r.ok && r.metric_ok)
        .with("metric_ratio", r.metric_ratio)
        .with("kappa_bound", r.kappa_bound);
    for n in 0..=N_MAX {
        let (i, o, g) = (r.input[n].slope, r.output[n].slope, r.gaps[n]);
        writeln!(table, "{n},{i:.16e},{o:.16e},{g:.16e}").unwrap();
        summary = summary.with(&format!("gap_{n}"), g);
    }
    Ok(CheckOutcome { summary, table })
}

fn association(cfg: &ExperimentConfig) -> Result<CheckOutcome> {
    let r = check_association(
        &cfg.problem,
        &cfg.ladder()?,
        &cfg.grid()?,
        &cfg.quadrature,
        &cfg.control(),
    )?;
    let mut table = String::from("eps,mu0\n");
    for (e, m) in r.eps.iter().zip(&r.mu0_history) {
        writeln!(table, "{e:.16e},{m:.16e}").unwrap();
    }
    let summary = CheckSummary::new("association", r.associated && r.strong_rate_ok)
        .with("fitted_rate", r.fitted_rate.slope)
        .with("stderr", r.fitted_rate.stderr)
        .with("small_exponent", r.small_exponent);
    Ok(CheckOutcome { summary, table })
}

/// The negligible seed perturbation must be absorbed and the data
/// perturbation must be detected.
fn uniqueness(cfg: &ExperimentConfig) -> Result<CheckOutcome> {
    let ladder = cfg.ladder()?;
    let grid = cfg.grid()?;
    let run = |p| {
        check_uniqueness_surrogate(&cfg.problem, &ladder, &grid, &cfg.quadrature, &cfg.control(), p)
    };
    let seed = run(Perturbation::NegligibleSeed)?;
    let data = run(Perturbation::Data {
        scale: cfg.parameters.data_perturbation,
    })?;
    let mut table = String::from("perturbation,n,max_mu\n");
    let mut summary = CheckSummary::new("uniqueness", seed.ok && !data.ok);
    for (label, rep) in [("seed", &seed), ("data", &data)] {
        for (n, m) in rep.max_mu.iter().enumerate() {
            writeln!(table, "{label},{n},{m:.16e}").unwrap();
            summary = summary.with(&format!("{label}_max_mu_{n}"), *m);
        }
    }
    Ok(CheckOutcome { summary, table })
}

/// The ODE oracle on the time grid, and the plateau problem against
/// `1 / (1 - eps t)` on the inner backward cone, in the configured dimension.
fn oracle(cfg: &ExperimentConfig) -> Result<CheckOutcome> {
    let p = &cfg.parameters;
    let horizon = cfg.problem.horizon;
    let inner = p.oracle_inner_radius;
    let problem = plateau_oracle_problem(cfg.problem.dim, inner, horizon);
    let g = &cfg.grid;
    let grid = SpaceTimeGrid::with_params(
        problem.dim,
        horizon,
        problem.support_radius,
        problem.support_radius + horizon,
        g.dx,
        g.dt,
        g.margin_cells,
    )?;
    let times: Vec<f64> = (0..grid.nt()).map(|n| grid.time(n)).collect();
    let mut table =
        String::from("eps,max_error,nodes_compared,analytic_defect,fd_defect,rescaled_defect\n");
    let mut worst = 0.0f64;
    let mut analytic = 0.0f64;
    for &eps in &p.oracle_eps {
        let ode = ode_check(eps, &times)?;
        let w = check_wave_oracle(&problem, eps, &grid, &cfg.quadrature, &cfg.control())?;
        worst = worst.max(w.max_error);
        analytic = analytic.max(ode.analytic_defect).max(ode.rescaled_defect);
        writeln!(
            table,
            "{eps:.16e},{:.16e},{},{:.16e},{:.16e},{:.16e}",
            w.max_error, w.nodes_compared, ode.analytic_defect, ode.fd_defect, ode.rescaled_defect
        )
        .unwrap();
    }
    let y = oracle_lifespan(0.5, 1.0)?;
    let ok = worst <= p.oracle_tolerance && analytic <= 1e-12 && y == 2.0;
    let summary = CheckSummary::new("oracle", ok)
        .with("max_error", worst)
        .with("ode_analytic_defect", analytic)
        .with("y_half_one", y);
    Ok(CheckOutcome { summary, table })
}

fn residual(cfg: &ExperimentConfig) -> Result<CheckOutcome> {
    let grids = (0..cfg.parameters.refinement_levels)
        .map(|k| cfg.grid_scaled(0.5f64.powi(k as i32)))
        .collect::<Result<Vec<_>>>()?;
    let r = residual_refinement(
        &cfg.problem,
        cfg.parameters.residual_eps,
        &grids,
        &cfg.quadrature,
        &cfg.control(),
    )?;
    let mut table = String::from("dx,dt,sup_residual,iterations\n");
    for l in &r.levels {
        writeln!(
            table,
            "{:.16e},{:.16e},{:.16e},{}",
            l.dx, l.dt, l.sup_residual, l.iterations
        )
        .unwrap();
    }
    let summary = CheckSummary::new("residual", r.ok)
        .with("order", r.order)
        .with("constant", r.constant)
        .with("bound_ok", f64::from(u8::from(r.bound_ok)));
    Ok(CheckOutcome { summary, table })
}
