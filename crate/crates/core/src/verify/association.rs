use crate::error::Result;
use crate::linwave::QuadratureSpec;
use crate::nets::{EpsilonLadder, Problem};
use crate::semilinear::{FixedPointMap, IterationControl};
use crate::seminorms::{fit_valuation, seminorm, Net, SpaceTimeGrid, ValuationEstimate, N_MAX};

/// Allowed shortfall of a measured rate below its predicted exponent.
pub const RATE_TOLERANCE: f64 = 0.1;
/// Relative increase tolerated in a sequence that should be non-increasing.
pub const MONOTONE_SLACK: f64 = 0.05;

/// Sup-norm distance between the semilinear solution net and the linear
/// solution net with the same data.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociationReport {
    pub small_exponent: f64,
    pub eps: Vec<f64>,
    /// `mu_0(u_eps - v_eps)` per ladder entry.
    pub mu0_history: Vec<f64>,
    pub fitted_rate: ValuationEstimate,
    pub associated: bool,
    /// Whether the fitted rate reaches `b - RATE_TOLERANCE`.
    pub strong_rate_ok: bool,
}

/// Association is accepted when every distance is at the level of the
/// iteration tolerance, or when the distances are non-increasing along the
/// ladder (within [`MONOTONE_SLACK`]) with a positive decay rate.
pub fn check_association(
    problem: &Problem,
    ladder: &EpsilonLadder,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
    control: &IterationControl,
) -> Result<AssociationReport> {
    let map = FixedPointMap::new(problem, grid, quad)?;
    let (u, _) = map
        .solve_net(ladder, control.tol, control.max_iter)?
        .into_converged()?;
    let fields = ladder
        .iter()
        .map(|eps| map.linear_part(eps))
        .collect::<Result<Vec<_>>>()?;
    let v = Net::new(ladder.clone(), fields)?;
    association_of(&u, &v, problem.small_exponent, control.tol)
}

/// The association measurement for two given nets.
pub fn association_of(u: &Net, v: &Net, b: f64, tol: f64) -> Result<AssociationReport> {
    let diff = u.sub(v)?;
    let mu0_history = diff
        .fields()
        .iter()
        .map(|f| seminorm(f, 0))
        .collect::<Result<Vec<_>>>()?;
    let eps = u.ladder().values().to_vec();
    let fitted_rate = fit_valuation(&eps, &mu0_history)?;
    let tiny = mu0_history.iter().all(|&m| m <= 10.0 * tol);
    let monotone = mu0_history
        .windows(2)
        .all(|w| w[1] <= w[0] * (1.0 + MONOTONE_SLACK));
    Ok(AssociationReport {
        small_exponent: b,
        eps,
        associated: tiny || (monotone && fitted_rate.slope > 0.0),
        strong_rate_ok: fitted_rate.slope >= b - RATE_TOLERANCE,
        mu0_history,
        fitted_rate,
    })
}

/// Largest ladder entry `eps_j` such that `mu_n(u_eps - v_eps) <= 1` for
/// all `n <= N_MAX` and every ladder entry `eps <= eps_j`; `None` when the
/// smallest entry already fails.
pub fn m1_threshold(u: &Net, v: &Net) -> Result<Option<f64>> {
    let diff = u.sub(v)?;
    let mut threshold = None;
    for (&eps, f) in u.ladder().values().iter().zip(diff.fields()).rev() {
        for n in 0..=N_MAX {
            if seminorm(f, n)? > 1.0 {
                return Ok(threshold);
            }
        }
        threshold = Some(eps);
    }
    Ok(threshold)
}
