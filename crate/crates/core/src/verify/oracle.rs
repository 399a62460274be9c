use crate::error::{Error, Result};
use crate::linwave::QuadratureSpec;
use crate::nets::{InitialDatum, Nonlinearity, Problem};
use crate::semilinear::{residual, FixedPointMap, IterationControl};
use crate::seminorms::{Field, SpaceTimeGrid};

/// `y(t) = 1 / (1 - eps t)`, the solution of `y' = eps y^2`, `y(0) = 1`.
pub fn oracle_lifespan(eps: f64, t: f64) -> Result<f64> {
    if eps * t >= 1.0 {
        return Err(Error::LifespanExceeded { eps, t });
    }
    Ok(1.0 / (1.0 - eps * t))
}

/// Defects of the oracle `y` on a time grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCheck {
    /// `max |y' - eps y^2|` with the closed-form derivative.
    pub analytic_defect: f64,
    /// Same with centered differences at interior grid points.
    pub fd_defect: f64,
    /// `max |z' - z^2|` and `|z(0) - eps|` for the rescaled `z = eps y`.
    pub rescaled_defect: f64,
}

pub fn ode_check(eps: f64, t_grid: &[f64]) -> Result<OdeCheck> {
    let y = t_grid
        .iter()
        .map(|&t| oracle_lifespan(eps, t))
        .collect::<Result<Vec<_>>>()?;
    let mut analytic_defect = 0.0f64;
    let mut rescaled_defect = 0.0f64;
    for (&t, &yt) in t_grid.iter().zip(&y) {
        let dy = eps / ((1.0 - eps * t) * (1.0 - eps * t));
        analytic_defect = analytic_defect.max((dy - eps * yt * yt).abs());
        let (z, dz) = (eps * yt, eps * dy);
        rescaled_defect = rescaled_defect.max((dz - z * z).abs());
    }
    if let Some(&t0) = t_grid.first() {
        if t0 == 0.0 {
            rescaled_defect = rescaled_defect.max((eps * y[0] - eps).abs());
        }
    }
    let mut fd_defect = 0.0f64;
    for i in 1..t_grid.len().saturating_sub(1) {
        let dy = (y[i + 1] - y[i - 1]) / (t_grid[i + 1] - t_grid[i - 1]);
        fd_defect = fd_defect.max((dy - eps * y[i] * y[i]).abs());
    }
    Ok(OdeCheck {
        analytic_defect,
        fd_defect,
        rescaled_defect,
    })
}

/// Data for the wave oracle: `u0` a unit plateau of inner radius `inner`,
/// `u1 = eps * u0`, `f(u) = 2 u^3`, `E = eps^2`. On the inner backward cone
/// `|x| + t <= inner` the solution is `1 / (1 - eps t)`.
pub fn plateau_oracle_problem(dim: usize, inner: f64, horizon: f64) -> Problem {
    let r = inner + 1.0;
    let plateau = InitialDatum::plateau(r, inner, 1.0);
    Problem {
        dim,
        horizon,
        support_radius: r,
        u0: plateau,
        u1: plateau.scaled_by_eps(1.0),
        nonlinearity: Nonlinearity::polynomial(&[0.0, 0.0, 2.0]),
        small_exponent: 2.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveOracleReport {
    pub dim: usize,
    pub eps: f64,
    /// `max |u - 1 / (1 - eps t)|` on the inner backward cone.
    pub max_error: f64,
    pub nodes_compared: usize,
    pub iterations: usize,
}

/// Solves the plateau problem at `eps` and compares with the oracle on
/// `|x| + t <= inner_radius`.
pub fn check_wave_oracle(
    problem: &Problem,
    eps: f64,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
    control: &IterationControl,
) -> Result<WaveOracleReport> {
    let inner = match problem.u0 {
        InitialDatum::PlateauBump { inner_radius, .. } => inner_radius,
        _ => {
            return Err(Error::validation(
                "u0.kind",
                "the wave oracle needs plateau_bump data",
            ))
        }
    };
    let map = FixedPointMap::new(problem, grid, quad)?;
    let (u, rep) = map.solve(eps, control.tol, control.max_iter, None)?;
    rep.require_converged()?;
    let ns = grid.spatial_len();
    let mut max_error = 0.0f64;
    let mut nodes_compared = 0;
    for n in 0..grid.nt() {
        let t = grid.time(n);
        let exact = oracle_lifespan(eps, t)?;
        for s in 0..ns {
            if grid.radius(s) + t <= inner + 1e-12 {
                max_error = max_error.max((u.value(n, s) - exact).abs());
                nodes_compared += 1;
            }
        }
    }
    Ok(WaveOracleReport {
        dim: grid.dim(),
        eps,
        max_error,
        nodes_compared,
        iterations: rep.iterations,
    })
}

/// Sup of the discrete residual of the x-independent field `1 / (1 - eps t)`
/// for `f(u) = 2 u^3`, `E = eps^2`.
pub fn oracle_field_residual(grid: &SpaceTimeGrid, eps: f64) -> Result<f64> {
    if eps * grid.horizon() >= 1.0 {
        return Err(Error::LifespanExceeded {
            eps,
            t: grid.horizon(),
        });
    }
    let field = Field::from_fn(*grid, |t, _| 1.0 / (1.0 - eps * t));
    let p = Problem {
        dim: grid.dim(),
        horizon: grid.horizon(),
        support_radius: grid.support_radius(),
        u0: InitialDatum::Zero,
        u1: InitialDatum::Zero,
        nonlinearity: Nonlinearity::polynomial(&[0.0, 0.0, 2.0]),
        small_exponent: 2.0,
    };
    Ok(residual(&field, eps, &p)?.sup_abs())
}
