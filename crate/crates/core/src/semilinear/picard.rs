use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linwave::{LinearSolver, QuadratureSpec};
use crate::nets::{EpsilonLadder, Problem};
use crate::seminorms::{Field, Net, SpaceTimeGrid};

/// Default stopping tolerance on the sup-norm increment.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default iteration cap.
pub const DEFAULT_MAX_ITER: usize = 50;

/// Outcome of one Picard solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub eps: f64,
    pub iterations: usize,
    /// Sup over `K0` of `|u^{k+1} - u^k|`, one entry per iteration.
    pub increment_history: Vec<f64>,
    pub converged: bool,
    pub final_increment: f64,
}

impl SolveReport {
    /// Ratios of successive increments.
    pub fn increment_ratios(&self) -> Vec<f64> {
        self.increment_history
            .windows(2)
            .map(|w| w[1] / w[0])
            .collect()
    }

    pub const CSV_HEADER: &'static str = "eps,iterations,final_increment,converged";

    pub fn write_csv_row(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "{:.16e},{},{:.16e},{}",
            self.eps, self.iterations, self.final_increment, self.converged
        )
    }
}

/// The fixed-point map `F(U) = L(u0, u1, 0) + eps^b L(0, 0, f(U))` of one
/// problem on one grid.
#[derive(Debug, Clone)]
pub struct FixedPointMap {
    problem: Problem,
    solver: LinearSolver,
}

impl FixedPointMap {
    pub fn new(problem: &Problem, grid: &SpaceTimeGrid, quad: &QuadratureSpec) -> Result<Self> {
        problem.validate()?;
        check_grid(problem, grid)?;
        Ok(Self {
            problem: problem.clone(),
            solver: LinearSolver::new(*grid, *quad)?,
        })
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        self.solver.grid()
    }

    pub fn solver(&self) -> &LinearSolver {
        &self.solver
    }

    /// `L(u0_eps, u1_eps, 0)`.
    pub fn linear_part(&self, eps: f64) -> Result<Field> {
        let p = &self.problem;
        self.solver.homogeneous(&p.u0.at_eps(eps), &p.u1.at_eps(eps))
    }

    /// `eps^b L(0, 0, f(u))`; fails when `f(u)` is not finite.
    pub fn nonlinear_part(&self, eps: f64, u: &Field) -> Result<Field> {
        let f = &self.problem.nonlinearity;
        if f.is_zero() {
            return Ok(Field::zeros(*self.grid()));
        }
        let h = u.map(|v| f.eval(v));
        if !h.is_finite() {
            return Err(Error::Divergence { iterate: 0, eps });
        }
        Ok(self.solver.source(&h)?.scale(self.problem.small_factor(eps)))
    }

    /// `F(u)` given the precomputed linear part.
    pub fn apply_with(&self, eps: f64, linear: &Field, u: &Field) -> Result<Field> {
        linear.add(&self.nonlinear_part(eps, u)?)
    }

    pub fn apply(&self, eps: f64, u: &Field) -> Result<Field> {
        self.apply_with(eps, &self.linear_part(eps)?, u)
    }

    /// Picard iteration from `seed`, or from the linear part when `None`.
    pub fn solve(
        &self,
        eps: f64,
        tol: f64,
        max_iter: usize,
        seed: Option<&Field>,
    ) -> Result<(Field, SolveReport)> {
        match self.iterate(eps, tol, max_iter, seed)? {
            (u, rep, None) => Ok((u, rep)),
            (_, _, Some(e)) => Err(e),
        }
    }

    /// Picard iteration of `u -> linear + eps^b L(0, 0, f(u))` for a given
    /// affine part, e.g. the linear solution of perturbed data.
    pub fn solve_with_linear(
        &self,
        eps: f64,
        linear: &Field,
        tol: f64,
        max_iter: usize,
        seed: Option<&Field>,
    ) -> Result<(Field, SolveReport)> {
        if linear.grid() != self.grid() {
            return Err(Error::GridMismatch("linear part is on a different grid".into()));
        }
        match self.iterate_from(eps, linear.clone(), tol, max_iter, seed)? {
            (u, rep, None) => Ok((u, rep)),
            (_, _, Some(e)) => Err(e),
        }
    }

    /// Like [`solve`](Self::solve), but a divergence is returned alongside
    /// the last finite iterate instead of replacing it.
    fn iterate(
        &self,
        eps: f64,
        tol: f64,
        max_iter: usize,
        seed: Option<&Field>,
    ) -> Result<(Field, SolveReport, Option<Error>)> {
        self.check_controls(eps, tol, max_iter)?;
        self.iterate_from(eps, self.linear_part(eps)?, tol, max_iter, seed)
    }

    fn check_controls(&self, eps: f64, tol: f64, max_iter: usize) -> Result<()> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(Error::validation("eps", format!("must lie in (0, 1], got {eps}")));
        }
        if !(tol > 0.0) {
            return Err(Error::validation("tol", "must be positive"));
        }
        if max_iter < 1 {
            return Err(Error::validation("max_iter", "must be at least 1"));
        }
        Ok(())
    }

    fn iterate_from(
        &self,
        eps: f64,
        linear: Field,
        tol: f64,
        max_iter: usize,
        seed: Option<&Field>,
    ) -> Result<(Field, SolveReport, Option<Error>)> {
        self.check_controls(eps, tol, max_iter)?;
        let mut u = match seed {
            Some(s) => {
                if s.grid() != self.grid() {
                    return Err(Error::GridMismatch("seed is on a different grid".into()));
                }
                s.clone()
            }
            None => linear.clone(),
        };
        let dx = self.grid().dx();
        let mut rep = SolveReport {
            eps,
            iterations: 0,
            increment_history: Vec::new(),
            converged: false,
            final_increment: f64::INFINITY,
        };
        for k in 1..=max_iter {
            let next = match self.apply_with(eps, &linear, &u) {
                Ok(v) if v.is_finite() => v,
                Ok(_) | Err(Error::Divergence { .. }) => {
                    return Ok((u, rep, Some(Error::Divergence { iterate: k, eps })));
                }
                Err(e) => return Err(e),
            };
            let inc = next.sub(&u)?.sup_abs_in_cone(dx);
            rep.iterations = k;
            rep.increment_history.push(inc);
            rep.final_increment = inc;
            u = next;
            if inc <= tol {
                rep.converged = true;
                break;
            }
        }
        Ok((u, rep, None))
    }
}

fn check_grid(problem: &Problem, grid: &SpaceTimeGrid) -> Result<()> {
    if grid.dim() != problem.dim {
        return Err(Error::GridMismatch(format!(
            "grid dimension {} differs from problem dimension {}",
            grid.dim(),
            problem.dim
        )));
    }
    if (grid.horizon() - problem.horizon).abs() > 1e-12 * problem.horizon.max(1.0) {
        return Err(Error::GridMismatch(format!(
            "grid horizon {} differs from problem horizon {}",
            grid.horizon(),
            problem.horizon
        )));
    }
    if (grid.support_radius() - problem.support_radius).abs() > 1e-12 {
        return Err(Error::GridMismatch(format!(
            "grid support radius {} differs from problem support radius {}",
            grid.support_radius(),
            problem.support_radius
        )));
    }
    Ok(())
}

/// One Picard solve at a single `eps`.
pub fn picard_solve(
    problem: &Problem,
    eps: f64,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
    tol: f64,
    max_iter: usize,
) -> Result<(Field, SolveReport)> {
    FixedPointMap::new(problem, grid, quad)?.solve(eps, tol, max_iter, None)
}

/// Solutions along a ladder. Entries that diverged hold their last finite
/// iterate and are flagged in `failures`.
#[derive(Debug, Clone)]
pub struct NetSolution {
    pub net: Net,
    pub reports: Vec<SolveReport>,
    /// Per entry, the failure message if the solve diverged.
    pub failures: Vec<Option<String>>,
}

impl NetSolution {
    pub fn all_converged(&self) -> bool {
        self.failures.iter().all(Option::is_none) && self.reports.iter().all(|r| r.converged)
    }

    pub fn write_reports_csv(&self, w: &mut impl Write) -> std::io::Result<()> {
        writeln!(w, "{}", SolveReport::CSV_HEADER)?;
        for r in &self.reports {
            r.write_csv_row(w)?;
        }
        Ok(())
    }
}

pub fn solve_net(
    problem: &Problem,
    ladder: &EpsilonLadder,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
    tol: f64,
    max_iter: usize,
) -> Result<NetSolution> {
    FixedPointMap::new(problem, grid, quad)?.solve_net(ladder, tol, max_iter)
}

impl FixedPointMap {
    pub fn solve_net(&self, ladder: &EpsilonLadder, tol: f64, max_iter: usize) -> Result<NetSolution> {
        let mut fields = Vec::with_capacity(ladder.len());
        let mut reports = Vec::with_capacity(ladder.len());
        let mut failures = Vec::with_capacity(ladder.len());
        for eps in ladder.iter() {
            let (u, rep, err) = self.iterate(eps, tol, max_iter, None)?;
            fields.push(u);
            reports.push(rep);
            failures.push(err.map(|e| e.to_string()));
        }
        Ok(NetSolution {
            net: Net::new(ladder.clone(), fields)?,
            reports,
            failures,
        })
    }
}

impl SolveReport {
    /// `Ok` when converged, otherwise [`Error::NotConverged`].
    pub fn require_converged(&self) -> Result<()> {
        if self.converged {
            Ok(())
        } else {
            Err(Error::NotConverged {
                iterations: self.iterations,
                eps: self.eps,
            })
        }
    }
}

/// Stopping rule shared by the verification drivers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationControl {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for IterationControl {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl IterationControl {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::validation("tol", format!("must be positive, got {}", self.tol)));
        }
        if self.max_iter < 1 {
            return Err(Error::validation("max_iter", "must be at least 1"));
        }
        Ok(())
    }
}

impl NetSolution {
    /// The net, or the first per-entry failure as an error.
    pub fn into_converged(self) -> Result<(Net, Vec<SolveReport>)> {
        for (rep, fail) in self.reports.iter().zip(&self.failures) {
            if fail.is_some() {
                return Err(Error::Divergence {
                    iterate: rep.iterations + 1,
                    eps: rep.eps,
                });
            }
            if !rep.converged {
                return Err(Error::NotConverged {
                    iterations: rep.iterations,
                    eps: rep.eps,
                });
            }
        }
        Ok((self.net, self.reports))
    }
}
