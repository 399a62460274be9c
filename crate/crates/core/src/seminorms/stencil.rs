//! Finite-difference stencils on a space-time grid. Axis 0 is time, axes
//! `1..=dim` are space. Centered in the interior, second-order one-sided at
//! the ends.

use super::SpaceTimeGrid;

#[derive(Clone, Copy)]
pub(crate) struct Stencil {
    taps: [(isize, f64); 4],
    len: usize,
}

impl Stencil {
    fn new(taps: &[(isize, f64)]) -> Self {
        let mut t = [(0, 0.0); 4];
        t[..taps.len()].copy_from_slice(taps);
        Self { taps: t, len: taps.len() }
    }

    fn taps(&self) -> &[(isize, f64)] {
        &self.taps[..self.len]
    }
}

/// First derivative at index `i` of an axis of length `len >= 3`, weights
/// already divided by `h`.
pub(crate) fn first(i: usize, len: usize, h: f64) -> Stencil {
    let s = if i == 0 {
        Stencil::new(&[(0, -1.5), (1, 2.0), (2, -0.5)])
    } else if i + 1 == len {
        Stencil::new(&[(0, 1.5), (-1, -2.0), (-2, 0.5)])
    } else {
        Stencil::new(&[(-1, -0.5), (1, 0.5)])
    };
    scale(s, 1.0 / h)
}

/// Second derivative at index `i` of an axis of length `len >= 3`. The
/// one-sided ends use the four-point second-order formula when `len >= 4`.
pub(crate) fn second(i: usize, len: usize, h: f64) -> Stencil {
    let s = if i == 0 {
        if len >= 4 {
            Stencil::new(&[(0, 2.0), (1, -5.0), (2, 4.0), (3, -1.0)])
        } else {
            Stencil::new(&[(0, 1.0), (1, -2.0), (2, 1.0)])
        }
    } else if i + 1 == len {
        if len >= 4 {
            Stencil::new(&[(0, 2.0), (-1, -5.0), (-2, 4.0), (-3, -1.0)])
        } else {
            Stencil::new(&[(0, 1.0), (-1, -2.0), (-2, 1.0)])
        }
    } else {
        Stencil::new(&[(-1, 1.0), (0, -2.0), (1, 1.0)])
    };
    scale(s, 1.0 / (h * h))
}

fn scale(mut s: Stencil, a: f64) -> Stencil {
    for tap in &mut s.taps[..s.len] {
        tap.1 *= a;
    }
    s
}

/// Multi-indices over `dim + 1` axes with total order exactly `order`.
pub(crate) fn multi_indices(dim: usize, order: usize) -> Vec<[usize; 4]> {
    let axes = dim + 1;
    let mut out = Vec::new();
    match order {
        0 => out.push([0; 4]),
        1 => {
            for a in 0..axes {
                let mut m = [0; 4];
                m[a] = 1;
                out.push(m);
            }
        }
        2 => {
            for a in 0..axes {
                for b in a..axes {
                    let mut m = [0; 4];
                    m[a] += 1;
                    m[b] += 1;
                    out.push(m);
                }
            }
        }
        _ => unreachable!("orders above 2 are rejected by callers"),
    }
    out
}

/// Evaluates derivatives of sampled fields at grid nodes.
pub(crate) struct Differentiator<'g> {
    grid: &'g SpaceTimeGrid,
    strides: [usize; 4],
    lens: [usize; 4],
    steps: [f64; 4],
}

impl<'g> Differentiator<'g> {
    pub fn new(grid: &'g SpaceTimeGrid) -> Self {
        let mut strides = [0; 4];
        let mut lens = [0; 4];
        let mut steps = [0.0; 4];
        strides[0] = grid.spatial_len();
        lens[0] = grid.nt();
        steps[0] = grid.dt();
        for k in 0..grid.dim() {
            strides[k + 1] = grid.stride(k);
            lens[k + 1] = grid.nx();
            steps[k + 1] = grid.dx();
        }
        Self {
            grid,
            strides,
            lens,
            steps,
        }
    }

    /// `D^alpha u` at node `(n, s)`; `alpha[0]` is the time order.
    pub fn apply(&self, samples: &[f64], n: usize, s: usize, alpha: &[usize; 4]) -> f64 {
        let sidx = self.grid.unravel(s);
        let pos = [n, sidx[0], sidx[1], sidx[2]];
        let base = n * self.strides[0] + s;
        let mut axes = [(0usize, 0usize); 2];
        let mut na = 0;
        for (a, &k) in alpha.iter().enumerate() {
            if k > 0 {
                axes[na] = (a, k);
                na += 1;
            }
        }
        match &axes[..na] {
            [] => samples[base],
            [(a, 2)] => self.along(samples, base, *a, second(pos[*a], self.lens[*a], self.steps[*a])),
            [(a, 1)] => self.along(samples, base, *a, first(pos[*a], self.lens[*a], self.steps[*a])),
            [(a, 1), (b, 1)] => {
                let sa = first(pos[*a], self.lens[*a], self.steps[*a]);
                let sb = first(pos[*b], self.lens[*b], self.steps[*b]);
                let mut acc = 0.0;
                for &(oa, wa) in sa.taps() {
                    let ia = offset(base, oa, self.strides[*a]);
                    for &(ob, wb) in sb.taps() {
                        acc += wa * wb * samples[offset(ia, ob, self.strides[*b])];
                    }
                }
                acc
            }
            _ => unreachable!("total order at most 2"),
        }
    }

    fn along(&self, samples: &[f64], base: usize, axis: usize, st: Stencil) -> f64 {
        st.taps()
            .iter()
            .map(|&(o, w)| w * samples[offset(base, o, self.strides[axis])])
            .sum()
    }
}

#[inline]
fn offset(base: usize, o: isize, stride: usize) -> usize {
    (base as isize + o * stride as isize) as usize
}
