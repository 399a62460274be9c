use super::SpaceTimeGrid;
use crate::error::{Error, Result};

/// Samples of a smooth function on `[0, T] x R^d` at the nodes of a grid,
/// stored time-level major.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    grid: SpaceTimeGrid,
    samples: Vec<f64>,
}

impl Field {
    pub fn zeros(grid: SpaceTimeGrid) -> Self {
        Self {
            samples: vec![0.0; grid.len()],
            grid,
        }
    }

    pub fn from_samples(grid: SpaceTimeGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "{} samples for a grid of {} nodes",
                samples.len(),
                grid.len()
            )));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation("samples", "all samples must be finite"));
        }
        Ok(Self { grid, samples })
    }

    /// Samples `f(t, x)` at every node; `x` has the grid's dimension.
    pub fn from_fn(grid: SpaceTimeGrid, f: impl Fn(f64, &[f64]) -> f64) -> Self {
        let dim = grid.dim();
        let ns = grid.spatial_len();
        let mut samples = Vec::with_capacity(grid.len());
        for n in 0..grid.nt() {
            let t = grid.time(n);
            for s in 0..ns {
                let x = grid.point(s);
                samples.push(f(t, &x[..dim]));
            }
        }
        Self { grid, samples }
    }

    pub(crate) fn from_raw(grid: SpaceTimeGrid, samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), grid.len());
        Self { grid, samples }
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub(crate) fn samples_mut(&mut self) -> &mut [f64] {
        &mut self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn level(&self, n: usize) -> &[f64] {
        let ns = self.grid.spatial_len();
        &self.samples[n * ns..(n + 1) * ns]
    }

    pub fn value(&self, n: usize, s: usize) -> f64 {
        self.samples[n * self.grid.spatial_len() + s]
    }

    pub fn is_finite(&self) -> bool {
        self.samples.iter().all(|v| v.is_finite())
    }

    fn check_same_grid(&self, other: &Field) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("fields live on different grids".into()));
        }
        Ok(())
    }

    pub fn zip_map(&self, other: &Field, f: impl Fn(f64, f64) -> f64) -> Result<Field> {
        self.check_same_grid(other)?;
        Ok(Field {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Field) -> Result<Field> {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Field) -> Result<Field> {
        self.zip_map(other, |a, b| a + b)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Field {
        Field {
            grid: self.grid,
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, a: f64) -> Field {
        self.map(|v| a * v)
    }

    /// `max |u|` over nodes with `|x| <= t + r + inflation`.
    pub fn sup_abs_in_cone(&self, inflation: f64) -> f64 {
        let g = &self.grid;
        let ns = g.spatial_len();
        let radii: Vec<f64> = (0..ns).map(|s| g.radius(s)).collect();
        let mut m = 0.0f64;
        for n in 0..g.nt() {
            let bound = g.time(n) + g.support_radius() + inflation;
            for (s, &rad) in radii.iter().enumerate() {
                if rad <= bound {
                    m = m.max(self.samples[n * ns + s].abs());
                }
            }
        }
        m
    }

    pub fn sup_abs(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}
