use super::stencil::{multi_indices, Differentiator};
use super::Field;
use crate::error::{Error, Result};

/// Highest derivative order used by the seminorms.
pub const N_MAX: usize = 2;

/// `mu_n(u)`: supremum over the nodes of the cone `K0` (inflated by one cell)
/// of `|D^alpha u|` for all space-time multi-indices with `|alpha| <= n`.
///
/// Derivatives are finite differences, centered in the interior and
/// one-sided at `t = 0` and `t = T`.
pub fn seminorm(field: &Field, n: usize) -> Result<f64> {
    if n > N_MAX {
        return Err(Error::UnsupportedOrder { order: n, max: N_MAX });
    }
    let g = field.grid();
    if n > 0 && (g.nt() < 3 || g.nx() < 3) {
        return Err(Error::GridTooCoarse(
            "derivative seminorms need at least 3 nodes per axis".into(),
        ));
    }
    let alphas: Vec<[usize; 4]> = (0..=n).flat_map(|k| multi_indices(g.dim(), k)).collect();
    let diff = Differentiator::new(g);
    let samples = field.samples();
    let ns = g.spatial_len();
    let radii: Vec<f64> = (0..ns).map(|s| g.radius(s)).collect();
    let mut sup = 0.0f64;
    for m in 0..g.nt() {
        let bound = g.time(m) + g.support_radius() + g.dx();
        for (s, &rad) in radii.iter().enumerate() {
            if rad > bound {
                continue;
            }
            for alpha in &alphas {
                sup = sup.max(diff.apply(samples, m, s, alpha).abs());
            }
        }
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seminorms::SpaceTimeGrid;

    #[test]
    fn constant_field() {
        let g = SpaceTimeGrid::new(2, 1.0, 0.5, 0.1, 0.1).unwrap();
        let f = Field::from_fn(g, |_, _| 1.0);
        assert_eq!(seminorm(&f, 0).unwrap(), 1.0);
        assert!((seminorm(&f, 2).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn linear_in_time() {
        for dim in 1..=3 {
            let g = SpaceTimeGrid::new(dim, 1.0, 0.5, 0.25, 0.125).unwrap();
            let f = Field::from_fn(g, |t, _| t);
            assert!((seminorm(&f, 0).unwrap() - 1.0).abs() < 1e-14);
            assert!((seminorm(&f, 1).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sine_first_order() {
        let g = SpaceTimeGrid::new(1, 0.01, 1.6, 1e-3, 1e-3).unwrap();
        let f = Field::from_fn(g, |_, x| x[0].sin());
        let mu1 = seminorm(&f, 1).unwrap();
        assert!((mu1 - 1.0).abs() < 1e-6, "mu1 = {mu1}");
    }

    #[test]
    fn quadratic_second_order_is_exact_at_boundaries() {
        // u = t^2 + x*y: D_tt = 2 everywhere including the one-sided ends.
        let g = SpaceTimeGrid::new(2, 0.5, 0.25, 0.05, 0.05).unwrap();
        let f = Field::from_fn(g, |t, x| t * t + 0.1 * x[0] * x[1]);
        let mu2 = seminorm(&f, 2).unwrap();
        assert!((mu2 - 2.0).abs() < 1e-9, "mu2 = {mu2}");
    }

    #[test]
    fn order_three_unsupported() {
        let g = SpaceTimeGrid::new(1, 1.0, 0.5, 0.1, 0.1).unwrap();
        assert!(matches!(
            seminorm(&Field::zeros(g), 3),
            Err(Error::UnsupportedOrder { order: 3, max: 2 })
        ));
    }
}
