use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest total derivative order available in closed form.
pub const MAX_DATUM_ORDER: usize = 2;

/// Radially symmetric, compactly supported initial datum.
///
/// Every kind vanishes identically for `|x| >= outer_radius`. The amplitude
/// may scale with the regularization parameter as `amplitude * eps^eps_power`,
/// which is how data nets such as `u1 = eps * plateau` are expressed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialDatum {
    /// Equal to `amplitude` on `|x| <= inner_radius`, smooth monotone
    /// transition to zero at `outer_radius`.
    PlateauBump {
        outer_radius: f64,
        inner_radius: f64,
        amplitude: f64,
        #[serde(default)]
        eps_power: f64,
    },
    /// `amplitude * exp(c (1 - 1 / (1 - |x|^2 / r^2)))` with `c = sharpness`,
    /// peak `amplitude` at 0. Near the origin it behaves like the Gaussian
    /// `exp(-c |x|^2 / r^2)`; `c = 1` is the classical mollifier, and
    /// `c` around 6 minimizes the size of the fourth and sixth derivatives.
    GaussianBump {
        outer_radius: f64,
        amplitude: f64,
        #[serde(default = "unit_sharpness")]
        sharpness: f64,
        #[serde(default)]
        eps_power: f64,
    },
    Zero,
}

/// Value and first two derivatives of a datum as a function of `sigma = |x|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Profile {
    pub g: f64,
    pub dg: f64,
    pub d2g: f64,
}

impl Profile {
    const ZERO: Profile = Profile {
        g: 0.0,
        dg: 0.0,
        d2g: 0.0,
    };
}

/// Smooth step `psi` on `[0, 1]` with `psi(0) = 1`, `psi(1) = 0` and all
/// derivatives vanishing at both ends, built from the bump
/// `B(s) = exp(1 - 1/(1 - s^2))` as `B(s) / (B(s) + B(1 - s))`.
///
/// Returns `(psi, psi', psi'')`.
pub fn smooth_step(s: f64) -> (f64, f64, f64) {
    if s <= 0.0 {
        return (1.0, 0.0, 0.0);
    }
    if s >= 1.0 {
        return (0.0, 0.0, 0.0);
    }
    // psi = 1 / (1 + e^l), l = log B(1-s) - log B(s)
    let a = 1.0 - s * s;
    let c = s * (2.0 - s);
    let l = 1.0 / a - 1.0 / c;
    let dl = 2.0 * s / (a * a) + (2.0 - 2.0 * s) / (c * c);
    let d2l = 2.0 / (a * a) + 8.0 * s * s / (a * a * a)
        - 2.0 / (c * c)
        - 2.0 * (2.0 - 2.0 * s).powi(2) / (c * c * c);
    let e = (-l.abs()).exp();
    let psi = if l > 0.0 { e / (1.0 + e) } else { 1.0 / (1.0 + e) };
    let p = e / ((1.0 + e) * (1.0 + e));
    let dpsi = -p * dl;
    let d2psi = -dpsi * (1.0 - 2.0 * psi) * dl - p * d2l;
    (psi, dpsi, d2psi)
}

impl InitialDatum {
    pub fn plateau(outer_radius: f64, inner_radius: f64, amplitude: f64) -> Self {
        InitialDatum::PlateauBump {
            outer_radius,
            inner_radius,
            amplitude,
            eps_power: 0.0,
        }
    }

    pub fn bump(outer_radius: f64, amplitude: f64) -> Self {
        Self::gaussian(outer_radius, amplitude, 1.0)
    }

    pub fn gaussian(outer_radius: f64, amplitude: f64, sharpness: f64) -> Self {
        InitialDatum::GaussianBump {
            outer_radius,
            amplitude,
            sharpness,
            eps_power: 0.0,
        }
    }

    /// Same datum with amplitude multiplied by `a`.
    pub fn scaled(mut self, a: f64) -> Self {
        match &mut self {
            InitialDatum::PlateauBump { amplitude, .. }
            | InitialDatum::GaussianBump { amplitude, .. } => *amplitude *= a,
            InitialDatum::Zero => {}
        }
        self
    }

    /// Same datum with amplitude multiplied by `eps^eps_power`.
    pub fn scaled_by_eps(self, eps_power: f64) -> Self {
        match self {
            InitialDatum::PlateauBump {
                outer_radius,
                inner_radius,
                amplitude,
                ..
            } => InitialDatum::PlateauBump {
                outer_radius,
                inner_radius,
                amplitude,
                eps_power,
            },
            InitialDatum::GaussianBump {
                outer_radius,
                amplitude,
                sharpness,
                ..
            } => InitialDatum::GaussianBump {
                outer_radius,
                amplitude,
                sharpness,
                eps_power,
            },
            InitialDatum::Zero => InitialDatum::Zero,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            InitialDatum::PlateauBump {
                outer_radius,
                inner_radius,
                amplitude,
                eps_power,
            } => {
                if !(outer_radius > 0.0 && outer_radius.is_finite()) {
                    return Err(Error::validation("outer_radius", "must be positive"));
                }
                if !(inner_radius >= 0.0 && inner_radius < outer_radius) {
                    return Err(Error::validation(
                        "inner_radius",
                        format!("must lie in [0, outer_radius = {outer_radius})"),
                    ));
                }
                check_finite("amplitude", amplitude)?;
                check_finite("eps_power", eps_power)
            }
            InitialDatum::GaussianBump {
                outer_radius,
                amplitude,
                sharpness,
                eps_power,
            } => {
                if !(outer_radius > 0.0 && outer_radius.is_finite()) {
                    return Err(Error::validation("outer_radius", "must be positive"));
                }
                if !(sharpness > 0.0 && sharpness.is_finite()) {
                    return Err(Error::validation("sharpness", "must be positive"));
                }
                check_finite("amplitude", amplitude)?;
                check_finite("eps_power", eps_power)
            }
            InitialDatum::Zero => Ok(()),
        }
    }

    /// Radius outside of which the datum vanishes (0 for the zero datum).
    pub fn outer_radius(&self) -> f64 {
        match *self {
            InitialDatum::PlateauBump { outer_radius, .. }
            | InitialDatum::GaussianBump { outer_radius, .. } => outer_radius,
            InitialDatum::Zero => 0.0,
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            InitialDatum::Zero => true,
            InitialDatum::PlateauBump { amplitude, .. }
            | InitialDatum::GaussianBump { amplitude, .. } => amplitude == 0.0,
        }
    }

    /// The concrete member of the data net at parameter `eps`: amplitude
    /// multiplied out, `eps_power` reset to zero.
    pub fn at_eps(&self, eps: f64) -> Self {
        match *self {
            InitialDatum::PlateauBump {
                outer_radius,
                inner_radius,
                amplitude,
                eps_power,
            } => InitialDatum::PlateauBump {
                outer_radius,
                inner_radius,
                amplitude: amplitude * eps.powf(eps_power),
                eps_power: 0.0,
            },
            InitialDatum::GaussianBump {
                outer_radius,
                amplitude,
                sharpness,
                eps_power,
            } => InitialDatum::GaussianBump {
                outer_radius,
                amplitude: amplitude * eps.powf(eps_power),
                sharpness,
                eps_power: 0.0,
            },
            InitialDatum::Zero => InitialDatum::Zero,
        }
    }

    pub(crate) fn profile(&self, sigma: f64) -> Profile {
        match *self {
            InitialDatum::Zero => Profile::ZERO,
            InitialDatum::GaussianBump {
                outer_radius,
                amplitude,
                sharpness: c,
                ..
            } => {
                let r2 = outer_radius * outer_radius;
                let q = 1.0 - sigma / r2;
                if q <= 0.0 {
                    return Profile::ZERO;
                }
                let g = amplitude * (c * (1.0 - 1.0 / q)).exp();
                let dg = -c * g / (r2 * q * q);
                let d2g = -c * dg / (r2 * q * q) - 2.0 * c * g / (r2 * r2 * q * q * q);
                Profile { g, dg, d2g }
            }
            InitialDatum::PlateauBump {
                outer_radius,
                inner_radius,
                amplitude,
                ..
            } => {
                let rho = sigma.sqrt();
                if rho <= inner_radius {
                    return Profile {
                        g: amplitude,
                        dg: 0.0,
                        d2g: 0.0,
                    };
                }
                if rho >= outer_radius {
                    return Profile::ZERO;
                }
                let w = outer_radius - inner_radius;
                let (psi, dpsi, d2psi) = smooth_step((rho - inner_radius) / w);
                let d1 = amplitude * dpsi / w;
                let d2 = amplitude * d2psi / (w * w);
                Profile {
                    g: amplitude * psi,
                    dg: d1 / (2.0 * rho),
                    d2g: (d2 - d1 / rho) / (4.0 * rho * rho),
                }
            }
        }
    }

    /// Value at `x` (length = space dimension).
    pub fn value(&self, x: &[f64]) -> f64 {
        self.profile(norm2(x)).g
    }

    /// Value and gradient at `x`; unused gradient slots are zero.
    pub fn value_and_gradient(&self, x: &[f64]) -> (f64, [f64; 3]) {
        let p = self.profile(norm2(x));
        let mut grad = [0.0; 3];
        for (g, xi) in grad.iter_mut().zip(x) {
            *g = 2.0 * p.dg * xi;
        }
        (p.g, grad)
    }

    /// Partial derivative `d^alpha` at `x`, where `alpha[i]` is the order in
    /// the i-th coordinate. Total order is capped at [`MAX_DATUM_ORDER`].
    pub fn derivative(&self, x: &[f64], alpha: &[usize]) -> Result<f64> {
        let order: usize = alpha.iter().sum();
        if order > MAX_DATUM_ORDER {
            return Err(Error::UnsupportedOrder {
                order,
                max: MAX_DATUM_ORDER,
            });
        }
        if alpha.len() != x.len() {
            return Err(Error::validation(
                "alpha",
                format!("multi-index has {} entries for a {}-d point", alpha.len(), x.len()),
            ));
        }
        let p = self.profile(norm2(x));
        let axes: Vec<usize> = alpha
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat_n(i, k))
            .collect();
        Ok(match axes.as_slice() {
            [] => p.g,
            [i] => 2.0 * p.dg * x[*i],
            [i, j] => {
                let delta = if i == j { 1.0 } else { 0.0 };
                4.0 * p.d2g * x[*i] * x[*j] + 2.0 * p.dg * delta
            }
            _ => unreachable!("order checked above"),
        })
    }
}

fn unit_sharpness() -> f64 {
    1.0
}

fn check_finite(param: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(param, "must be finite"))
    }
}

#[inline]
pub(crate) fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcg(seed: &mut u64) -> f64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*seed >> 11) as f64 / (1u64 << 53) as f64
    }

    #[test]
    fn plateau_values() {
        let d = InitialDatum::plateau(1.0, 0.5, 1.0);
        assert_eq!(d.value(&[0.0]), 1.0);
        assert_eq!(d.value(&[0.3, 0.3]), 1.0);
        assert_eq!(d.value(&[2.0]), 0.0);
        assert_eq!(d.value(&[0.0, 2.0, 0.0]), 0.0);
        let mid = d.value(&[0.75]);
        assert!(mid > 0.0 && mid < 1.0);
    }

    #[test]
    fn zero_outside_support_on_point_cloud() {
        let data = [
            InitialDatum::plateau(1.0, 0.5, 2.0),
            InitialDatum::bump(0.8, -1.5),
        ];
        let mut seed = 7;
        for d in data {
            let r = d.outer_radius();
            for _ in 0..500 {
                let x = [4.0 * lcg(&mut seed) - 2.0, 4.0 * lcg(&mut seed) - 2.0, 4.0 * lcg(&mut seed) - 2.0];
                if norm2(&x).sqrt() >= r {
                    assert_eq!(d.value(&x), 0.0);
                    let (_, g) = d.value_and_gradient(&x);
                    assert_eq!(g, [0.0; 3]);
                }
            }
        }
    }

    #[test]
    fn plateau_is_flat_inside() {
        let d = InitialDatum::plateau(1.0, 0.5, 1.0);
        let h = 1e-3;
        for k in 0..40 {
            let x = -0.45 + 0.9 * k as f64 / 39.0;
            let first = (d.value(&[x + h]) - d.value(&[x - h])) / (2.0 * h);
            let second = d.value(&[x + h]) - 2.0 * d.value(&[x]) + d.value(&[x - h]);
            assert_eq!(first, 0.0);
            assert_eq!(second, 0.0);
        }
    }

    /// Fourth-order centered difference of `f` along axis `i`.
    fn fd(f: impl Fn(&[f64]) -> f64, x: &[f64], i: usize, h: f64) -> f64 {
        let at = |k: f64| {
            let mut y = x.to_vec();
            y[i] += k * h;
            f(&y)
        };
        (8.0 * (at(1.0) - at(-1.0)) - (at(2.0) - at(-2.0))) / (12.0 * h)
    }

    #[test]
    fn closed_form_derivatives_match_finite_differences() {
        let data = [
            InitialDatum::bump(1.0, 1.3),
            InitialDatum::gaussian(1.2, 0.8, 6.0),
            InitialDatum::plateau(1.0, 0.4, 0.7),
        ];
        let h = 1e-4;
        let mut seed = 42;
        for d in data {
            for dim in 1..=3 {
                for _ in 0..20 {
                    let x: Vec<f64> = (0..dim).map(|_| 1.6 * lcg(&mut seed) - 0.8).collect();
                    for i in 0..dim {
                        let mut ai = vec![0; dim];
                        ai[i] = 1;
                        let fd1 = fd(|y| d.value(y), &x, i, h);
                        let exact1 = d.derivative(&x, &ai).unwrap();
                        assert!((fd1 - exact1).abs() < 1e-6, "d1 {fd1} vs {exact1}");
                        for j in 0..dim {
                            let mut aj = vec![0; dim];
                            aj[j] = 1;
                            let mut aij = ai.clone();
                            aij[j] += 1;
                            let fd2 = fd(|y| d.derivative(y, &aj).unwrap(), &x, i, h);
                            let exact2 = d.derivative(&x, &aij).unwrap();
                            assert!((fd2 - exact2).abs() < 1e-6, "d2 {fd2} vs {exact2}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn third_order_is_unsupported() {
        let d = InitialDatum::bump(1.0, 1.0);
        assert!(matches!(
            d.derivative(&[0.1, 0.2], &[2, 1]),
            Err(Error::UnsupportedOrder { order: 3, max: 2 })
        ));
    }

    #[test]
    fn eps_scaling() {
        let d = InitialDatum::plateau(1.0, 0.5, 1.0).scaled_by_eps(1.0);
        assert_eq!(d.at_eps(0.1).value(&[0.0]), 0.1);
        assert_eq!(d.at_eps(0.1).at_eps(0.5).value(&[0.0]), 0.1);
    }

    #[test]
    fn smooth_step_endpoints() {
        assert_eq!(smooth_step(0.0), (1.0, 0.0, 0.0));
        assert_eq!(smooth_step(1.0), (0.0, 0.0, 0.0));
        let (p, _, _) = smooth_step(0.5);
        assert!((p - 0.5).abs() < 1e-15);
        let (p1, d1, _) = smooth_step(1e-3);
        assert!((1.0 - p1) < 1e-200 && d1.abs() < 1e-200);
    }
}
