use crate::error::{Error, Result};
use crate::linwave::QuadratureSpec;
use crate::nets::{EpsilonLadder, InitialDatum, Problem};
use crate::semilinear::{FixedPointMap, IterationControl};
use crate::seminorms::{
    classify_with, seminorm_history, ClassifyThresholds, Field, Net, NetClass, SpaceTimeGrid,
    ValuationEstimate, N_MAX,
};

/// Exponent of the negligible seed perturbation `eps^8 * bump`.
pub const SEED_EXPONENT: f64 = 8.0;

/// Factor by which the two solves of the surrogate tighten the tolerance,
/// so that their difference reflects the fixed points rather than the
/// stopping rule.
pub const TIGHTENING: f64 = 1e-4;

/// What distinguishes the second solve from the first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Perturbation {
    /// Same problem, Picard started from `u0 + eps^8 * bump`.
    NegligibleSeed,
    /// A different problem: `u0` replaced by `u0 + scale * bump`, with the
    /// bump of half the support radius.
    Data { scale: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    pub perturbation: Perturbation,
    /// `None` when fewer than three ladder entries have a nonzero
    /// difference, so no slope can be fitted.
    pub class: Option<NetClass>,
    pub valuations: Vec<ValuationEstimate>,
    /// Per order `n`, the largest `mu_n` of the difference along the ladder.
    pub max_mu: Vec<f64>,
    /// Negligible at the tested orders, or every `mu_n` below `10 tol`.
    pub ok: bool,
}

/// Numerical surrogate for uniqueness up to negligible nets: two solves
/// whose difference should be negligible if the solution is unique.
pub fn check_uniqueness_surrogate(
    problem: &Problem,
    ladder: &EpsilonLadder,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
    control: &IterationControl,
    perturbation: Perturbation,
) -> Result<UniquenessReport> {
    let tight = control.tol * TIGHTENING;
    let map = FixedPointMap::new(problem, grid, quad)?;
    let bump_datum = perturbation_datum(grid);
    let bump = Field::from_fn(*grid, |_, x| bump_datum.value(x));
    let data_shift = match perturbation {
        Perturbation::NegligibleSeed => None,
        Perturbation::Data { scale } => Some(
            map.solver()
                .homogeneous(&bump_datum, &InitialDatum::Zero)?
                .scale(scale),
        ),
    };
    let mut diffs = Vec::with_capacity(ladder.len());
    for eps in ladder.iter() {
        let linear = map.linear_part(eps)?;
        let (a, rep) = map.solve_with_linear(eps, &linear, tight, control.max_iter, None)?;
        rep.require_converged()?;
        let (b, rep) = match &data_shift {
            None => {
                let seed = linear.add(&bump.scale(eps.powf(SEED_EXPONENT)))?;
                map.solve_with_linear(eps, &linear, tight, control.max_iter, Some(&seed))?
            }
            Some(shift) => {
                map.solve_with_linear(eps, &linear.add(shift)?, tight, control.max_iter, None)?
            }
        };
        rep.require_converged()?;
        diffs.push(a.sub(&b)?);
    }
    let diff = Net::new(ladder.clone(), diffs)?;
    let (class, valuations) = match classify_with(&diff, &ClassifyThresholds::default()) {
        Ok((c, v)) => (Some(c), v),
        Err(Error::InsufficientData { .. }) => (None, Vec::new()),
        Err(e) => return Err(e),
    };
    let max_mu = (0..=N_MAX)
        .map(|n| Ok(seminorm_history(&diff, n)?.into_iter().fold(0.0, f64::max)))
        .collect::<Result<Vec<f64>>>()?;
    let small = max_mu.iter().all(|&m| m <= 10.0 * control.tol);
    Ok(UniquenessReport {
        perturbation,
        ok: class == Some(NetClass::NegligibleAtTestedOrder) || small,
        class,
        valuations,
        max_mu,
    })
}

/// Unit bump of half the support radius.
fn perturbation_datum(grid: &SpaceTimeGrid) -> InitialDatum {
    InitialDatum::gaussian(0.5 * grid.support_radius().max(grid.dx()), 1.0, 6.0)
}
