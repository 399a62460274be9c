use super::association::RATE_TOLERANCE;
use crate::error::Result;
use crate::linwave::QuadratureSpec;
use crate::nets::{EpsilonLadder, InitialDatum, Problem};
use crate::semilinear::{FixedPointMap, IterationControl};
use crate::seminorms::{
    metric_from_levels, valuation, Field, Net, SpaceTimeGrid, ValuationEstimate, N_MAX,
};

/// Measured contraction of `F` in the sharp topology: one application of
/// `F` to the solution net `U` and to `V = U + scale * bump`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractionReport {
    pub small_exponent: f64,
    pub perturbation_scale: f64,
    /// `nu_n(U - V)` for `n = 0..=N_MAX`.
    pub input: Vec<ValuationEstimate>,
    /// `nu_n(F(U) - F(V))`.
    pub output: Vec<ValuationEstimate>,
    /// `nu_n(F(U) - F(V)) - nu_n(U - V)`, `+inf` when the output vanishes.
    pub gaps: Vec<f64>,
    pub metric_input: f64,
    pub metric_output: f64,
    /// `d(F(U), F(V)) / d(U, V)`.
    pub metric_ratio: f64,
    /// `exp(-b)`.
    pub kappa_bound: f64,
    /// Every gap reaches `b - RATE_TOLERANCE`.
    pub ok: bool,
    /// The metric ratio is at most `exp(-(b - RATE_TOLERANCE))`.
    pub metric_ok: bool,
}

/// Time-independent perturbation profile used by [`check_contraction`]:
/// a bump of half the support radius.
pub fn perturbation_profile(grid: &SpaceTimeGrid, scale: f64) -> Field {
    let bump = InitialDatum::gaussian(0.5 * grid.support_radius().max(grid.dx()), scale, 6.0);
    Field::from_fn(*grid, |_, x| bump.value(x))
}

pub fn check_contraction(
    problem: &Problem,
    ladder: &EpsilonLadder,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
    control: &IterationControl,
    perturbation_scale: f64,
) -> Result<ContractionReport> {
    let map = FixedPointMap::new(problem, grid, quad)?;
    let (u, _) = map
        .solve_net(ladder, control.tol, control.max_iter)?
        .into_converged()?;
    let bump = perturbation_profile(grid, perturbation_scale);
    let mut du = Vec::with_capacity(ladder.len());
    let mut df = Vec::with_capacity(ladder.len());
    for (eps, ue) in ladder.iter().zip(u.fields()) {
        let ve = ue.add(&bump)?;
        // the linear part of F cancels in F(U) - F(V)
        let fu = map.nonlinear_part(eps, ue)?;
        let fv = map.nonlinear_part(eps, &ve)?;
        du.push(ue.sub(&ve)?);
        df.push(fu.sub(&fv)?);
    }
    let du = Net::new(ladder.clone(), du)?;
    let df = Net::new(ladder.clone(), df)?;
    contraction_of(&du, &df, problem.small_exponent, perturbation_scale)
}

/// The contraction measurement from the input difference `U - V` and the
/// output difference `F(U) - F(V)`.
pub fn contraction_of(du: &Net, df: &Net, b: f64, scale: f64) -> Result<ContractionReport> {
    let input = (0..=N_MAX)
        .map(|n| valuation(du, n))
        .collect::<Result<Vec<_>>>()?;
    let output = (0..=N_MAX)
        .map(|n| valuation(df, n))
        .collect::<Result<Vec<_>>>()?;
    let gaps: Vec<f64> = input
        .iter()
        .zip(&output)
        .map(|(i, o)| {
            if o.is_negligible() {
                f64::INFINITY
            } else {
                o.slope - i.slope
            }
        })
        .collect();
    let level = |e: &[ValuationEstimate]| {
        metric_from_levels(&e.iter().map(|v| v.ultra_pseudo_seminorm()).collect::<Vec<_>>())
    };
    let metric_input = level(&input);
    let metric_output = level(&output);
    let metric_ratio = if metric_input > 0.0 {
        metric_output / metric_input
    } else {
        0.0
    };
    let floor = b - RATE_TOLERANCE;
    Ok(ContractionReport {
        small_exponent: b,
        perturbation_scale: scale,
        ok: gaps.iter().all(|&g| g >= floor),
        metric_ok: metric_ratio <= (-floor).exp(),
        kappa_bound: (-b).exp(),
        input,
        output,
        gaps,
        metric_input,
        metric_output,
        metric_ratio,
    })
}
