use rayon::prelude::*;

use super::quadrature::{gauss_legendre, AngularRule, QuadratureSpec};
use super::symmetry::Orbits;
use crate::error::{Error, Result};
use crate::nets::InitialDatum;
use crate::seminorms::{Field, SpaceTimeGrid};

/// Quadrature evaluation of the classical solution operator `L(u0, u1, h)`
/// of `u_tt - Laplace u = h` on the nodes of a fixed grid.
///
/// The source `h` is taken to vanish outside the cone `|x| <= t + r` of the
/// grid, so for data supported in the ball of radius `r` the result vanishes
/// exactly outside that cone.
#[derive(Debug, Clone)]
pub struct LinearSolver {
    grid: SpaceTimeGrid,
    quad: QuadratureSpec,
    rule: AngularRule,
    cell_rule: Vec<(f64, f64)>,
    orbits: Option<Orbits>,
    trivial: Orbits,
}

/// Source samples prepared for the kernel of one dimension.
enum Source<'a> {
    /// Per level, the running integral of the piecewise-linear interpolant
    /// from the left edge of the lattice (1D).
    Cumulative { table: Vec<f64>, samples: &'a [f64] },
    Lattice(&'a [f64]),
}

/// Running integral of a 1D datum, exact on cells of width at most `dx`
/// up to the Gauss-Legendre error.
struct Antiderivative<'a> {
    datum: &'a InitialDatum,
    left: f64,
    width: f64,
    table: Vec<f64>,
    rule: &'a [(f64, f64)],
}

impl<'a> Antiderivative<'a> {
    fn new(datum: &'a InitialDatum, dx: f64, rule: &'a [(f64, f64)]) -> Self {
        let r = datum.outer_radius();
        let cells = ((2.0 * r / dx).ceil() as usize).max(1);
        let width = 2.0 * r / cells as f64;
        let mut a = Self {
            datum,
            left: -r,
            width,
            table: Vec::with_capacity(cells + 1),
            rule,
        };
        let mut acc = 0.0;
        a.table.push(0.0);
        for i in 0..cells {
            let x0 = a.left + i as f64 * width;
            acc += a.partial(x0, width);
            a.table.push(acc);
        }
        a
    }

    fn partial(&self, x0: f64, len: f64) -> f64 {
        self.rule
            .iter()
            .map(|&(z, w)| w * self.datum.value(&[x0 + len * z]))
            .sum::<f64>()
            * len
    }

    fn eval(&self, y: f64) -> f64 {
        let cells = self.table.len() - 1;
        let right = self.left + cells as f64 * self.width;
        if y <= self.left {
            return 0.0;
        }
        if y >= right {
            return self.table[cells];
        }
        let i = (((y - self.left) / self.width) as usize).min(cells - 1);
        let x0 = self.left + i as f64 * self.width;
        self.table[i] + self.partial(x0, y - x0)
    }
}

impl LinearSolver {
    pub fn new(grid: SpaceTimeGrid, quad: QuadratureSpec) -> Result<Self> {
        quad.validate()?;
        let orbits = (grid.dim() > 1 && quad.lattice_equivariant()).then(|| Orbits::dihedral(&grid));
        Ok(Self {
            rule: AngularRule::new(grid.dim(), &quad),
            cell_rule: gauss_legendre(quad.polar_points, 0.0, 1.0),
            trivial: Orbits::trivial(&grid),
            orbits,
            grid,
            quad,
        })
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        &self.grid
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    /// `L(u0, u1, h)`, with `h = None` for the homogeneous problem.
    pub fn solve(&self, u0: &InitialDatum, u1: &InitialDatum, h: Option<&Field>) -> Result<Field> {
        let mut u = self.homogeneous(u0, u1)?;
        if let Some(h) = h {
            let v = self.source(h)?;
            for (a, b) in u.samples_mut().iter_mut().zip(v.samples()) {
                *a += b;
            }
        }
        Ok(u)
    }

    /// `L(u0, u1, 0)`. The `t = 0` level equals the samples of `u0`.
    pub fn homogeneous(&self, u0: &InitialDatum, u1: &InitialDatum) -> Result<Field> {
        u0.validate().map_err(|e| e.with_prefix("u0"))?;
        u1.validate().map_err(|e| e.with_prefix("u1"))?;
        let g = &self.grid;
        let dim = g.dim();
        let (r0, r1) = (u0.outer_radius(), u1.outer_radius());
        let anti = (dim == 1 && !u1.is_zero()).then(|| Antiderivative::new(u1, g.dx(), &self.cell_rule));
        let orbits = self.orbits.as_ref().unwrap_or(&self.trivial);
        let samples = self.fill(orbits, |n, s| {
            let x = g.point(s);
            if n == 0 {
                return u0.value(&x[..dim]);
            }
            let t = g.time(n);
            let rad = g.radius(s);
            let mut v = 0.0;
            if dim == 1 {
                if rad - t < r0 {
                    v += 0.5 * (u0.value(&[x[0] + t]) + u0.value(&[x[0] - t]));
                }
                if let Some(a) = &anti {
                    if rad - t < r1 {
                        v += 0.5 * (a.eval(x[0] + t) - a.eval(x[0] - t));
                    }
                }
                return v;
            }
            let (pts, wts) = (&self.rule.points, &self.rule.weights);
            if !u0.is_zero() && rad - t < r0 {
                for (y, w) in pts.iter().zip(wts) {
                    let p = [x[0] - t * y[0], x[1] - t * y[1], x[2] - t * y[2]];
                    let (val, grad) = u0.value_and_gradient(&p[..dim]);
                    let dot = grad[0] * y[0] + grad[1] * y[1] + grad[2] * y[2];
                    v += w * (val - t * dot);
                }
            }
            if !u1.is_zero() && rad - t < r1 {
                let mut m = 0.0;
                for (y, w) in pts.iter().zip(wts) {
                    let p = [x[0] - t * y[0], x[1] - t * y[1], x[2] - t * y[2]];
                    m += w * u1.value(&p[..dim]);
                }
                v += t * m;
            }
            v
        });
        Ok(Field::from_raw(*g, samples))
    }

    /// Duhamel term `L(0, 0, h)` on every node.
    pub fn source(&self, h: &Field) -> Result<Field> {
        self.check_grid(h)?;
        let g = &self.grid;
        let orbits = match &self.orbits {
            Some(o) if o.is_invariant(g, h.samples()) => o,
            _ => &self.trivial,
        };
        let samples = match self.prepare(h) {
            Source::Lattice(lattice) => {
                let taps = Taps::new(g, &self.rule, self.quad.time_points_per_dt);
                self.fill(orbits, |n, s| {
                    if n == 0 {
                        return 0.0;
                    }
                    self.lattice_duhamel(lattice, &taps, n, s)
                })
            }
            src => self.fill(orbits, |n, s| {
                if n == 0 {
                    return 0.0;
                }
                self.duhamel_value(&src, g.time(n), g.point(s), g.radius(s))
            }),
        };
        Ok(Field::from_raw(*g, samples))
    }

    /// [`duhamel_value`](Self::duhamel_value) at the lattice node `(n, s)`
    /// with precomputed interpolation taps.
    fn lattice_duhamel(&self, lattice: &[f64], taps: &Taps, n: usize, s: usize) -> f64 {
        let g = &self.grid;
        let r = g.support_radius();
        let t = g.time(n);
        let rad = g.radius(s);
        if rad > t + r {
            return 0.0;
        }
        let x = g.point(s);
        let ns = g.spatial_len();
        let m = taps.per_dt;
        let segments = n * m;
        let ds = g.dt() / m as f64;
        let nq = self.rule.weights.len();
        let mut acc = 0.0;
        for k in 1..=segments {
            let sk = k as f64 * ds;
            let back = segments - k;
            let (lv, rem) = (back / m, back % m);
            let tau = back as f64 * ds;
            if rad - sk > tau + r {
                continue;
            }
            let reach2 = (tau + r) * (tau + r);
            let th = rem as f64 / m as f64;
            let lo = &lattice[lv * ns..(lv + 1) * ns];
            let hi = (rem > 0).then(|| &lattice[(lv + 1) * ns..(lv + 2) * ns]);
            let row = (k - 1) * nq;
            let mut mean = 0.0;
            for q in 0..nq {
                let d = &taps.disp[row + q];
                let p = [x[0] - d[0], x[1] - d[1], x[2] - d[2]];
                if p[0] * p[0] + p[1] * p[1] + p[2] * p[2] > reach2 {
                    continue;
                }
                let base = (s as isize + taps.offset[row + q]) as usize;
                let f = &taps.frac[row + q];
                let mut v = taps.corner_sum(lo, base, f);
                if let Some(hi) = hi {
                    v = (1.0 - th) * v + th * taps.corner_sum(hi, base, f);
                }
                mean += self.rule.weights[q] * v;
            }
            let w = if k == segments { 0.5 } else { 1.0 };
            acc += w * sk * mean;
        }
        acc * ds
    }

    /// Duhamel term at an arbitrary point `(t, x)` with `t` in `[0, T]`.
    pub fn duhamel_at(&self, h: &Field, t: f64, x: &[f64]) -> Result<f64> {
        self.check_grid(h)?;
        let g = &self.grid;
        // accept the last level n * dt, which may exceed T by round-off
        if !(0.0..=g.horizon() * (1.0 + 1e-12)).contains(&t) {
            return Err(Error::TimeOutOfRange {
                t,
                horizon: g.horizon(),
            });
        }
        let t = t.min(g.horizon());
        if x.len() != g.dim() {
            return Err(Error::validation(
                "x",
                format!("point has {} coordinates on a {}-d grid", x.len(), g.dim()),
            ));
        }
        let mut p = [0.0; 3];
        p[..x.len()].copy_from_slice(x);
        let rad = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        Ok(self.duhamel_value(&self.prepare(h), t, p, rad))
    }

    fn check_grid(&self, h: &Field) -> Result<()> {
        if h.grid() != &self.grid {
            return Err(Error::GridMismatch("source field is on a different grid".into()));
        }
        Ok(())
    }

    fn prepare<'a>(&self, h: &'a Field) -> Source<'a> {
        let g = &self.grid;
        let samples = h.samples();
        if g.dim() != 1 {
            return Source::Lattice(samples);
        }
        let nx = g.nx();
        let dx = g.dx();
        let mut table = Vec::with_capacity(samples.len());
        for level in samples.chunks_exact(nx) {
            let mut acc = 0.0;
            table.push(0.0);
            for w in level.windows(2) {
                acc += 0.5 * dx * (w[0] + w[1]);
                table.push(acc);
            }
        }
        Source::Cumulative { table, samples }
    }

    /// Evaluates `eval(n, s)` at the canonical node of every orbit and
    /// copies the value to the whole orbit.
    fn fill(&self, orbits: &Orbits, eval: impl Fn(usize, usize) -> f64 + Sync) -> Vec<f64> {
        let g = &self.grid;
        let ns = g.spatial_len();
        let mut out = vec![0.0; g.len()];
        for n in 0..g.nt() {
            let vals: Vec<f64> = orbits.canonical.par_iter().map(|&s| eval(n, s)).collect();
            let level = &mut out[n * ns..(n + 1) * ns];
            for (v, im) in vals.iter().zip(&orbits.images) {
                for &s in im {
                    level[s] = *v;
                }
            }
        }
        out
    }

    /// Composite trapezoid in the elapsed time `s` of `K(s)`, where `K` is
    /// the dimension-specific mean of `h(t - s, .)` over the domain of
    /// dependence at distance `s`. `K(0) = 0` in every dimension.
    fn duhamel_value(&self, src: &Source, t: f64, x: [f64; 3], rad: f64) -> f64 {
        let g = &self.grid;
        let r = g.support_radius();
        if t <= 0.0 || rad > t + r {
            return 0.0;
        }
        let m = self.quad.time_points_per_dt as f64;
        let segments = ((t / g.dt() * m - 1e-9).ceil() as usize).max(1);
        let ds = t / segments as f64;
        let mut acc = 0.0;
        for k in 1..=segments {
            let s = k as f64 * ds;
            let tau = (t - s).max(0.0);
            if rad - s > tau + r {
                continue;
            }
            let w = if k == segments { 0.5 } else { 1.0 };
            acc += w * self.kernel(src, tau, s, x);
        }
        acc * ds
    }

    fn time_weights(&self, tau: f64) -> (usize, f64) {
        let g = &self.grid;
        let u = tau / g.dt();
        let lv = (u.floor().max(0.0) as usize).min(g.nt() - 2);
        (lv, (u - lv as f64).clamp(0.0, 1.0))
    }

    fn kernel(&self, src: &Source, tau: f64, s: f64, x: [f64; 3]) -> f64 {
        let g = &self.grid;
        let reach = tau + g.support_radius();
        let (lv, th) = self.time_weights(tau);
        let ns = g.spatial_len();
        match src {
            Source::Cumulative { table, samples } => {
                let a = (x[0] - s).max(-reach);
                let b = (x[0] + s).min(reach);
                if b <= a {
                    return 0.0;
                }
                let seg = |n: usize| {
                    let off = n * ns;
                    let t = &table[off..off + ns];
                    let h = &samples[off..off + ns];
                    self.cumulative(t, h, b) - self.cumulative(t, h, a)
                };
                let mut v = (1.0 - th) * seg(lv);
                if th > 0.0 {
                    v += th * seg(lv + 1);
                }
                0.5 * v
            }
            Source::Lattice(samples) => {
                let reach2 = reach * reach;
                let lo = &samples[lv * ns..(lv + 1) * ns];
                let hi = &samples[(lv + 1) * ns..(lv + 2) * ns];
                let mut m = 0.0;
                for (y, w) in self.rule.points.iter().zip(&self.rule.weights) {
                    let p = [x[0] - s * y[0], x[1] - s * y[1], x[2] - s * y[2]];
                    if p[0] * p[0] + p[1] * p[1] + p[2] * p[2] > reach2 {
                        continue;
                    }
                    let mut v = (1.0 - th) * self.interpolate(lo, p);
                    if th > 0.0 {
                        v += th * self.interpolate(hi, p);
                    }
                    m += w * v;
                }
                s * m
            }
        }
    }

    /// Integral of the piecewise-linear interpolant of `h` from the left
    /// lattice edge to `y`.
    fn cumulative(&self, table: &[f64], h: &[f64], y: f64) -> f64 {
        let g = &self.grid;
        let u = y / g.dx() + g.half() as f64;
        let i = (u.floor().max(0.0) as usize).min(g.nx() - 2);
        let f = u - i as f64;
        table[i] + g.dx() * (f * h[i] + 0.5 * f * f * (h[i + 1] - h[i]))
    }

    /// Multilinear interpolation of one time level at `p`.
    fn interpolate(&self, level: &[f64], p: [f64; 3]) -> f64 {
        let g = &self.grid;
        let nx = g.nx();
        let half = g.half() as f64;
        let inv = 1.0 / g.dx();
        let cell = |c: f64| {
            let u = c * inv + half;
            let i = (u.floor().max(0.0) as usize).min(nx - 2);
            (i, u - i as f64)
        };
        let (i, fx) = cell(p[0]);
        let (j, fy) = cell(p[1]);
        if g.dim() == 2 {
            let b = i * nx + j;
            let v0 = level[b] * (1.0 - fy) + level[b + 1] * fy;
            let v1 = level[b + nx] * (1.0 - fy) + level[b + nx + 1] * fy;
            return v0 * (1.0 - fx) + v1 * fx;
        }
        let (k, fz) = cell(p[2]);
        let sx = nx * nx;
        let b = i * sx + j * nx + k;
        let lerp = |o: usize| level[o] * (1.0 - fz) + level[o + 1] * fz;
        let v00 = lerp(b);
        let v01 = lerp(b + nx);
        let v10 = lerp(b + sx);
        let v11 = lerp(b + sx + nx);
        let v0 = v00 * (1.0 - fy) + v01 * fy;
        let v1 = v10 * (1.0 - fy) + v11 * fy;
        v0 * (1.0 - fx) + v1 * fx
    }
}

/// Interpolation data for the Duhamel samples `x - s_k y_q` around a lattice
/// node. Since `x` is a lattice point, the cell offset and the fractional
/// position within the cell depend only on `(k, q)`.
struct Taps {
    per_dt: usize,
    dim: usize,
    strides: [usize; 3],
    disp: Vec<[f64; 3]>,
    offset: Vec<isize>,
    frac: Vec<[f64; 3]>,
}

impl Taps {
    fn new(grid: &SpaceTimeGrid, rule: &AngularRule, per_dt: usize) -> Self {
        let dim = grid.dim();
        let steps = (grid.nt() - 1) * per_dt;
        let ds = grid.dt() / per_dt as f64;
        let mut strides = [0; 3];
        for (k, st) in strides.iter_mut().enumerate().take(dim) {
            *st = grid.stride(k);
        }
        let cap = steps * rule.points.len();
        let mut taps = Self {
            per_dt,
            dim,
            strides,
            disp: Vec::with_capacity(cap),
            offset: Vec::with_capacity(cap),
            frac: Vec::with_capacity(cap),
        };
        for k in 1..=steps {
            let sk = k as f64 * ds;
            for y in &rule.points {
                let d = [sk * y[0], sk * y[1], sk * y[2]];
                let mut off = 0isize;
                let mut fr = [0.0; 3];
                for a in 0..dim {
                    let u = -d[a] / grid.dx();
                    let c = u.floor();
                    fr[a] = u - c;
                    off += c as isize * strides[a] as isize;
                }
                taps.disp.push(d);
                taps.offset.push(off);
                taps.frac.push(fr);
            }
        }
        taps
    }

    #[inline]
    fn corner_sum(&self, level: &[f64], b: usize, f: &[f64; 3]) -> f64 {
        let [sx, sy, sz] = self.strides;
        if self.dim == 2 {
            let v0 = level[b] * (1.0 - f[1]) + level[b + sy] * f[1];
            let v1 = level[b + sx] * (1.0 - f[1]) + level[b + sx + sy] * f[1];
            return v0 * (1.0 - f[0]) + v1 * f[0];
        }
        let lerp = |o: usize| level[o] * (1.0 - f[2]) + level[o + sz] * f[2];
        let v0 = lerp(b) * (1.0 - f[1]) + lerp(b + sy) * f[1];
        let v1 = lerp(b + sx) * (1.0 - f[1]) + lerp(b + sx + sy) * f[1];
        v0 * (1.0 - f[0]) + v1 * f[0]
    }
}

/// `L(u0, u1, h)` sampled on `grid`.
pub fn solve_linear(
    dim: usize,
    u0: &InitialDatum,
    u1: &InitialDatum,
    h: Option<&Field>,
    grid: &SpaceTimeGrid,
    quad: &QuadratureSpec,
) -> Result<Field> {
    if dim != grid.dim() {
        return Err(Error::validation(
            "dim",
            format!("problem dimension {dim} differs from grid dimension {}", grid.dim()),
        ));
    }
    LinearSolver::new(*grid, *quad)?.solve(u0, u1, h)
}

/// Duhamel term of `h` at `(t, x)`, on the grid of `h`.
pub fn duhamel(h: &Field, t: f64, x: &[f64], quad: &QuadratureSpec) -> Result<f64> {
    LinearSolver::new(*h.grid(), *quad)?.duhamel_at(h, t, x)
}
