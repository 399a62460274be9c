use super::{LinearSolver, QuadratureSpec};
use crate::error::{Error, Result};
use crate::nets::InitialDatum;
use crate::seminorms::{seminorm, Field, SpaceTimeGrid};

/// Largest magnitude found outside the inflated light cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportReport {
    pub max_outside: f64,
    pub ok: bool,
}

/// `max |u|` over nodes with `|x| > t + r + 2 dx`; `ok` iff it is at most `tol`.
pub fn check_support(field: &Field, r: f64, tol: f64) -> SupportReport {
    let g = field.grid();
    let ns = g.spatial_len();
    let inflation = 2.0 * g.dx();
    let radii: Vec<f64> = (0..ns).map(|s| g.radius(s)).collect();
    let mut max_outside = 0.0f64;
    for (n, level) in field.samples().chunks_exact(ns).enumerate() {
        let bound = g.time(n) + r + inflation;
        for (v, &rad) in level.iter().zip(&radii) {
            if rad > bound {
                max_outside = max_outside.max(v.abs());
            }
        }
    }
    SupportReport {
        max_outside,
        ok: max_outside <= tol,
    }
}

/// Sup over the grid nodes of the ball `|x| <= r` of all derivatives of
/// total order at most `n` of a datum.
pub fn datum_seminorm(datum: &InitialDatum, grid: &SpaceTimeGrid, n: usize) -> Result<f64> {
    let dim = grid.dim();
    let r = grid.support_radius();
    let alphas = multi_indices(dim, n);
    let mut m = 0.0f64;
    for s in 0..grid.spatial_len() {
        if grid.radius(s) > r {
            continue;
        }
        let x = grid.point(s);
        for a in &alphas {
            m = m.max(datum.derivative(&x[..dim], &a[..dim])?.abs());
        }
    }
    Ok(m)
}

fn multi_indices(dim: usize, n: usize) -> Vec<[usize; 3]> {
    let mut out = vec![[0; 3]];
    for order in 1..=n {
        let mut next = Vec::new();
        for a in out.iter().filter(|a| a.iter().sum::<usize>() == order - 1) {
            for k in 0..dim {
                let mut b = *a;
                b[k] += 1;
                next.push(b);
            }
        }
        next.sort_unstable();
        next.dedup();
        out.extend(next);
    }
    out
}

/// Empirical ratio `mu_n(L(u0, u1, h)) / (mu0_{n+1}(u0) + mu0_n(u1) + mu_n(h))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorNormReport {
    pub order: usize,
    pub solution_seminorm: f64,
    /// `[mu0_{n+1}(u0), mu0_n(u1), mu_n(h)]`.
    pub data_terms: [f64; 3],
    /// `None` when both sides vanish.
    pub ratio: Option<f64>,
}

/// Largest order the probe accepts.
pub const PROBE_MAX_ORDER: usize = 1;

pub fn operator_norm_probe(
    u0: &InitialDatum,
    u1: &InitialDatum,
    h: Option<&Field>,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
    n: usize,
) -> Result<OperatorNormReport> {
    if n > PROBE_MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: n,
            max: PROBE_MAX_ORDER,
        });
    }
    let u = LinearSolver::new(*grid, *quad)?.solve(u0, u1, h)?;
    let lhs = seminorm(&u, n)?;
    let data_terms = [
        datum_seminorm(u0, grid, n + 1)?,
        datum_seminorm(u1, grid, n)?,
        match h {
            Some(h) => seminorm(h, n)?,
            None => 0.0,
        },
    ];
    let rhs: f64 = data_terms.iter().sum();
    let ratio = if rhs > 0.0 {
        Some(lhs / rhs)
    } else if lhs > 0.0 {
        Some(f64::INFINITY)
    } else {
        None
    };
    Ok(OperatorNormReport {
        order: n,
        solution_seminorm: lhs,
        data_terms,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_and_constant_fields() {
        let g = SpaceTimeGrid::new(1, 1.0, 0.5, 0.1, 0.1).unwrap();
        let z = Field::zeros(g);
        let rep = check_support(&z, 0.5, 1e-10);
        assert_eq!(rep.max_outside, 0.0);
        assert!(rep.ok);
        let one = Field::from_fn(g, |_, _| 1.0);
        let rep = check_support(&one, 0.5, 0.5);
        assert_eq!(rep.max_outside, 1.0);
        assert!(!rep.ok);
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(3, 0).len(), 1);
        assert_eq!(multi_indices(3, 1).len(), 4);
        assert_eq!(multi_indices(3, 2).len(), 10);
        assert_eq!(multi_indices(1, 2).len(), 3);
    }

    #[test]
    fn zero_data_probe_is_not_applicable() {
        let g = SpaceTimeGrid::new(1, 0.5, 0.5, 0.05, 0.05).unwrap();
        let rep = operator_norm_probe(
            &InitialDatum::Zero,
            &InitialDatum::Zero,
            None,
            &g,
            &QuadratureSpec::default(),
            0,
        )
        .unwrap();
        assert_eq!(rep.ratio, None);
        assert!(operator_norm_probe(
            &InitialDatum::Zero,
            &InitialDatum::Zero,
            None,
            &g,
            &QuadratureSpec::default(),
            2
        )
        .is_err());
    }
}
