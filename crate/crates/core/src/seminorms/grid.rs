use crate::error::{Error, Result};

/// Uniform space-time tensor grid covering the light cone
/// `K0 = {(t, x): |x| <= t + r}` on `[0, T]`.
///
/// The spatial lattice is symmetric about the origin: nodes sit at
/// `(i - half) * dx` for `i = 0..=2*half`, so the origin is always a node and
/// the lattice is invariant under coordinate reflections and permutations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpaceTimeGrid {
    dim: usize,
    horizon: f64,
    support_radius: f64,
    spatial_extent: f64,
    dx: f64,
    dt: f64,
    margin_cells: usize,
    steps: usize,
    half: usize,
}

impl SpaceTimeGrid {
    pub const DEFAULT_MARGIN: usize = 2;

    /// Grid with the minimal extent `R = r + T` and two margin cells.
    pub fn new(dim: usize, horizon: f64, support_radius: f64, dx: f64, dt: f64) -> Result<Self> {
        Self::with_params(
            dim,
            horizon,
            support_radius,
            support_radius + horizon,
            dx,
            dt,
            Self::DEFAULT_MARGIN,
        )
    }

    pub fn with_params(
        dim: usize,
        horizon: f64,
        support_radius: f64,
        spatial_extent: f64,
        dx: f64,
        dt: f64,
        margin_cells: usize,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::validation("dim", format!("must be 1, 2 or 3, got {dim}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(Error::validation("horizon", "must be positive"));
        }
        if !(support_radius >= 0.0 && support_radius.is_finite()) {
            return Err(Error::validation("support_radius", "must be non-negative"));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::validation("dx", "must be positive"));
        }
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::validation("dt", "must be positive"));
        }
        if dt > dx * (1.0 + 1e-12) {
            return Err(Error::validation("dt", format!("must not exceed dx = {dx}, got {dt}")));
        }
        let steps = (horizon / dt).round();
        if steps < 1.0 || (steps * dt - horizon).abs() > 1e-9 * horizon.max(1.0) {
            return Err(Error::validation(
                "dt",
                format!("horizon {horizon} is not an integer multiple of dt = {dt}"),
            ));
        }
        if spatial_extent < (support_radius + horizon) * (1.0 - 1e-12) {
            return Err(Error::validation(
                "spatial_extent",
                format!(
                    "must be at least r + T = {}, got {spatial_extent}",
                    support_radius + horizon
                ),
            ));
        }
        if margin_cells < 2 {
            return Err(Error::validation("margin_cells", "must be at least 2"));
        }
        let half = (spatial_extent / dx - 1e-9).ceil().max(0.0) as usize + margin_cells;
        let nodes = (2 * half + 1).pow(dim as u32) as f64 * (steps + 1.0);
        if nodes > 4e8 {
            return Err(Error::validation(
                "dx",
                format!("grid would hold {nodes:.3e} samples; refine less"),
            ));
        }
        Ok(Self {
            dim,
            horizon,
            support_radius,
            spatial_extent,
            dx,
            dt,
            margin_cells,
            steps: steps as usize,
            half,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn horizon(&self) -> f64 {
        self.horizon
    }
    pub fn support_radius(&self) -> f64 {
        self.support_radius
    }
    pub fn spatial_extent(&self) -> f64 {
        self.spatial_extent
    }
    pub fn dx(&self) -> f64 {
        self.dx
    }
    pub fn dt(&self) -> f64 {
        self.dt
    }
    pub fn margin_cells(&self) -> usize {
        self.margin_cells
    }

    /// Index of the origin along each spatial axis.
    pub fn half(&self) -> usize {
        self.half
    }

    /// Number of time levels, `T / dt + 1`.
    pub fn nt(&self) -> usize {
        self.steps + 1
    }

    /// Nodes per spatial axis.
    pub fn nx(&self) -> usize {
        2 * self.half + 1
    }

    /// Nodes per time level.
    pub fn spatial_len(&self) -> usize {
        self.nx().pow(self.dim as u32)
    }

    pub fn len(&self) -> usize {
        self.nt() * self.spatial_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn coord(&self, i: usize) -> f64 {
        (i as f64 - self.half as f64) * self.dx
    }

    /// Flat-index stride of spatial axis `k` (axis 0 varies slowest).
    pub fn stride(&self, k: usize) -> usize {
        self.nx().pow((self.dim - 1 - k) as u32)
    }

    /// Per-axis lattice indices of a flat spatial index.
    pub fn unravel(&self, s: usize) -> [usize; 3] {
        let nx = self.nx();
        let mut idx = [0; 3];
        let mut rest = s;
        for k in (0..self.dim).rev() {
            idx[k] = rest % nx;
            rest /= nx;
        }
        idx
    }

    pub fn ravel(&self, idx: &[usize]) -> usize {
        idx[..self.dim]
            .iter()
            .fold(0, |acc, &i| acc * self.nx() + i)
    }

    /// Coordinates of a flat spatial index; unused slots are zero.
    pub fn point(&self, s: usize) -> [f64; 3] {
        let idx = self.unravel(s);
        let mut x = [0.0; 3];
        for k in 0..self.dim {
            x[k] = self.coord(idx[k]);
        }
        x
    }

    pub fn radius(&self, s: usize) -> f64 {
        let x = self.point(s);
        (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
    }

    /// Whether node `(n, s)` satisfies `|x| <= t + r + inflation`.
    pub fn in_cone(&self, n: usize, s: usize, inflation: f64) -> bool {
        self.radius(s) <= self.time(n) + self.support_radius + inflation
    }

    /// Whether every spatial index of `s` is away from the lattice boundary.
    pub fn is_spatial_interior(&self, s: usize) -> bool {
        let idx = self.unravel(s);
        idx[..self.dim].iter().all(|&i| i > 0 && i + 1 < self.nx())
    }

    /// Same grid with a different support radius used for cone tests.
    pub fn with_support_radius(&self, r: f64) -> Self {
        Self {
            support_radius: r,
            ..*self
        }
    }
}
