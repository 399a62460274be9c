use crate::error::{Error, Result};
use crate::linwave::QuadratureSpec;
use crate::nets::Problem;
use crate::semilinear::{sup_residual, FixedPointMap, IterationControl};
use crate::seminorms::{fit_valuation, SpaceTimeGrid};

/// Minimum accepted convergence order of the residual.
pub const MIN_ORDER: f64 = 1.8;
/// Slack on the constant when finer levels are checked against the
/// constant of the coarsest one.
pub const CONSTANT_SLACK: f64 = 1.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefinementLevel {
    pub dx: f64,
    pub dt: f64,
    pub sup_residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementReport {
    pub eps: f64,
    pub levels: Vec<RefinementLevel>,
    /// Log-log slope of the residual against `sqrt(dx^2 + dt^2)`.
    pub order: f64,
    /// `C` in `C (dx^2 + dt^2)`, taken from the coarsest level.
    pub constant: f64,
    /// Every level satisfies `res <= CONSTANT_SLACK * C (dx^2 + dt^2) + tol / dt^2`.
    pub bound_ok: bool,
    pub ok: bool,
}

/// Residual of converged solutions on a sequence of grids, coarse to fine.
pub fn residual_refinement(
    problem: &Problem,
    eps: f64,
    grids: &[SpaceTimeGrid],
    quad: &QuadratureSpec,
    control: &IterationControl,
) -> Result<RefinementReport> {
    if grids.len() < 3 {
        return Err(Error::InsufficientData {
            usable: grids.len(),
            required: 3,
        });
    }
    let mut levels = Vec::with_capacity(grids.len());
    for g in grids {
        let map = FixedPointMap::new(problem, g, quad)?;
        let (u, rep) = map.solve(eps, control.tol, control.max_iter, None)?;
        rep.require_converged()?;
        levels.push(RefinementLevel {
            dx: g.dx(),
            dt: g.dt(),
            sup_residual: sup_residual(&u, eps, problem)?,
            iterations: rep.iterations,
        });
    }
    let h2 = |l: &RefinementLevel| l.dx * l.dx + l.dt * l.dt;
    let hs: Vec<f64> = levels.iter().map(|l| h2(l).sqrt()).collect();
    let res: Vec<f64> = levels.iter().map(|l| l.sup_residual).collect();
    let order = fit_valuation(&hs, &res)?.slope;
    let constant = levels[0].sup_residual / h2(&levels[0]);
    let bound_ok = levels.iter().all(|l| {
        l.sup_residual <= CONSTANT_SLACK * constant * h2(l) + control.tol / (l.dt * l.dt)
    });
    Ok(RefinementReport {
        eps,
        ok: order >= MIN_ORDER && bound_ok,
        levels,
        order,
        constant,
        bound_ok,
    })
}
