//! Orbits of lattice nodes under the reflections and axis swaps that fix
//! both the grid and the angular rules. For radially symmetric data and a
//! symmetric source the solution takes one value per orbit, so it is
//! evaluated once at a canonical representative.

use crate::seminorms::SpaceTimeGrid;

/// Canonical spatial nodes, each with the flat indices of its images
/// (including itself).
#[derive(Debug, Clone)]
pub(crate) struct Orbits {
    pub canonical: Vec<usize>,
    pub images: Vec<Vec<usize>>,
}

impl Orbits {
    /// One orbit per node.
    pub fn trivial(grid: &SpaceTimeGrid) -> Self {
        let ns = grid.spatial_len();
        Self {
            canonical: (0..ns).collect(),
            images: (0..ns).map(|s| vec![s]).collect(),
        }
    }

    /// Orbits of the dihedral group of the square in 2D, and of the square
    /// times the reflection `z -> -z` in 3D. In 1D the trivial orbits.
    pub fn dihedral(grid: &SpaceTimeGrid) -> Self {
        let h = grid.half() as i64;
        let idx = |o: i64| (o + h) as usize;
        let mut canonical = Vec::new();
        let mut images = Vec::new();
        match grid.dim() {
            2 => {
                for a in 0..=h {
                    for b in 0..=a {
                        canonical.push(grid.ravel(&[idx(a), idx(b)]));
                        let mut im = Vec::with_capacity(8);
                        for (p, q) in [(a, b), (b, a)] {
                            for sp in [1, -1] {
                                for sq in [1, -1] {
                                    im.push(grid.ravel(&[idx(sp * p), idx(sq * q)]));
                                }
                            }
                        }
                        im.sort_unstable();
                        im.dedup();
                        images.push(im);
                    }
                }
            }
            3 => {
                for a in 0..=h {
                    for b in 0..=a {
                        for c in 0..=h {
                            canonical.push(grid.ravel(&[idx(a), idx(b), idx(c)]));
                            let mut im = Vec::with_capacity(16);
                            for (p, q) in [(a, b), (b, a)] {
                                for sp in [1, -1] {
                                    for sq in [1, -1] {
                                        for sc in [1, -1] {
                                            im.push(grid.ravel(&[
                                                idx(sp * p),
                                                idx(sq * q),
                                                idx(sc * c),
                                            ]));
                                        }
                                    }
                                }
                            }
                            im.sort_unstable();
                            im.dedup();
                            images.push(im);
                        }
                    }
                }
            }
            _ => return Self::trivial(grid),
        }
        Self { canonical, images }
    }

    /// Whether every time level of `samples` is constant on each orbit,
    /// compared bitwise.
    pub fn is_invariant(&self, grid: &SpaceTimeGrid, samples: &[f64]) -> bool {
        let ns = grid.spatial_len();
        (0..grid.nt()).all(|n| {
            let level = &samples[n * ns..(n + 1) * ns];
            self.canonical.iter().zip(&self.images).all(|(&c, im)| {
                let v = level[c].to_bits();
                im.iter().all(|&s| level[s].to_bits() == v)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbits_partition_the_lattice() {
        for dim in 1..=3 {
            let g = SpaceTimeGrid::new(dim, 0.2, 0.3, 0.1, 0.1).unwrap();
            let o = Orbits::dihedral(&g);
            let mut seen = vec![0u8; g.spatial_len()];
            for im in &o.images {
                for &s in im {
                    seen[s] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1), "dim {dim}");
        }
    }

    #[test]
    fn images_share_radius() {
        let g = SpaceTimeGrid::new(3, 0.2, 0.3, 0.1, 0.1).unwrap();
        let o = Orbits::dihedral(&g);
        for (&c, im) in o.canonical.iter().zip(&o.images) {
            for &s in im {
                assert!((g.radius(s) - g.radius(c)).abs() < 1e-12);
            }
        }
    }
}
