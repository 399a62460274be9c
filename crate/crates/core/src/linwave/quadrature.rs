use std::f64::consts::{FRAC_PI_2, PI};
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Discretization of the angular, radial and Duhamel time integrals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    /// Trapezoid nodes in the polar angle (2D) or azimuth (3D).
    pub angular_points: usize,
    /// Gauss-Legendre nodes in `phi` (2D), in `cos(theta)` (3D), and per
    /// cell for the 1D data integral.
    pub polar_points: usize,
    /// Sub-steps of the Duhamel time integral per grid step.
    pub time_points_per_dt: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            angular_points: 16,
            polar_points: 12,
            time_points_per_dt: 1,
        }
    }
}

impl QuadratureSpec {
    pub fn new(angular_points: usize, polar_points: usize, time_points_per_dt: usize) -> Result<Self> {
        let q = Self {
            angular_points,
            polar_points,
            time_points_per_dt,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.angular_points < 4 || self.angular_points % 2 != 0 {
            return Err(Error::validation(
                "angular_points",
                format!("must be even and at least 4, got {}", self.angular_points),
            ));
        }
        if self.polar_points < 4 {
            return Err(Error::validation(
                "polar_points",
                format!("must be at least 4, got {}", self.polar_points),
            ));
        }
        if self.time_points_per_dt < 1 {
            return Err(Error::validation("time_points_per_dt", "must be at least 1"));
        }
        Ok(())
    }

    /// Same quadrature with angular and polar counts doubled.
    pub fn refined(&self) -> Self {
        Self {
            angular_points: 2 * self.angular_points,
            polar_points: 2 * self.polar_points,
            ..*self
        }
    }

    /// Whether the angular rule is invariant under the dihedral symmetries
    /// of the lattice (reflections and the axis swap).
    pub(crate) fn lattice_equivariant(&self) -> bool {
        self.angular_points % 4 == 0
    }
}

/// Gauss-Legendre nodes and weights mapped to `[a, b]`.
pub(crate) fn gauss_legendre(n: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let rule = GaussLegendre::new(NonZeroUsize::new(n).expect("n >= 1"));
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    rule.as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| (c + h * x, h * w))
        .collect()
}

/// Weighted point set on the unit disk (2D) or unit sphere (3D) whose
/// weights sum to one.
///
/// In 2D the points are `y = sin(phi) (cos theta, sin theta)` with weight
/// `w_phi sin(phi) / n_theta`, which is the normalized measure
/// `dy / (2 pi sqrt(1 - |y|^2))` after the substitution `|y| = sin(phi)`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct AngularRule {
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl AngularRule {
    pub fn new(dim: usize, q: &QuadratureSpec) -> Self {
        let na = q.angular_points;
        let angle = |j: usize| (j as f64 + 0.5) * 2.0 * PI / na as f64;
        let mut points = Vec::new();
        let mut weights = Vec::new();
        match dim {
            2 => {
                for (phi, wphi) in gauss_legendre(q.polar_points, 0.0, FRAC_PI_2) {
                    let rho = phi.sin();
                    for j in 0..na {
                        let th = angle(j);
                        points.push([rho * th.cos(), rho * th.sin(), 0.0]);
                        weights.push(wphi * rho / na as f64);
                    }
                }
            }
            3 => {
                for (mu, wmu) in gauss_legendre(q.polar_points, -1.0, 1.0) {
                    let st = (1.0 - mu * mu).max(0.0).sqrt();
                    for j in 0..na {
                        let ph = angle(j);
                        points.push([st * ph.cos(), st * ph.sin(), mu]);
                        weights.push(wmu / (2.0 * na as f64));
                    }
                }
            }
            _ => {}
        }
        Self { points, weights }
    }
}
