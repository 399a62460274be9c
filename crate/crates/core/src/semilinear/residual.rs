use crate::error::{Error, Result};
use crate::nets::{Nonlinearity, Problem};
use crate::seminorms::stencil::Differentiator;
use crate::seminorms::Field;

/// Time levels needed by the one-sided second-order end stencil.
pub const MIN_RESIDUAL_LEVELS: usize = 4;

/// `D_tt u - sum_i D_{x_i x_i} u - e f(u)` on the interior nodes of the
/// one-cell-inflated cone; zero elsewhere.
pub fn residual_with(field: &Field, small_factor: f64, f: &Nonlinearity) -> Result<Field> {
    let g = field.grid();
    if g.nt() < MIN_RESIDUAL_LEVELS {
        return Err(Error::GridTooCoarse(format!(
            "{} time levels, at least {MIN_RESIDUAL_LEVELS} required",
            g.nt()
        )));
    }
    if g.nx() < 3 {
        return Err(Error::GridTooCoarse(format!("{} nodes per axis", g.nx())));
    }
    let dim = g.dim();
    let ns = g.spatial_len();
    let diff = Differentiator::new(g);
    let samples = field.samples();
    let inside: Vec<bool> = (0..ns).map(|s| g.is_spatial_interior(s)).collect();
    let mut out = vec![0.0; g.len()];
    for n in 0..g.nt() {
        for s in 0..ns {
            if !inside[s] || !g.in_cone(n, s, g.dx()) {
                continue;
            }
            let mut v = diff.apply(samples, n, s, &[2, 0, 0, 0]);
            for k in 0..dim {
                let mut alpha = [0; 4];
                alpha[k + 1] = 2;
                v -= diff.apply(samples, n, s, &alpha);
            }
            out[n * ns + s] = v - small_factor * f.eval(samples[n * ns + s]);
        }
    }
    Ok(Field::from_raw(*g, out))
}

/// Residual of `field` as a solution of the problem at `eps`.
pub fn residual(field: &Field, eps: f64, problem: &Problem) -> Result<Field> {
    residual_with(field, problem.small_factor(eps), &problem.nonlinearity)
}

/// Sup of [`residual`] over its nodes.
pub fn sup_residual(field: &Field, eps: f64, problem: &Problem) -> Result<f64> {
    Ok(residual(field, eps, problem)?.sup_abs())
}
