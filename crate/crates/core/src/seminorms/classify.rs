use super::{valuation, Net, ValuationEstimate, N_MAX};
use crate::error::{Error, Result};

/// Numerical surrogate of membership in the negligible ideal, the bounded
/// type subalgebra, and the moderate nets. Finite ladders cannot decide the
/// true definitions, which quantify over all exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetClass {
    NegligibleAtTestedOrder,
    BoundedType,
    Moderate,
    NotModerate,
}

impl NetClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            NetClass::NegligibleAtTestedOrder => "negligible_at_tested_order",
            NetClass::BoundedType => "bounded_type",
            NetClass::Moderate => "moderate",
            NetClass::NotModerate => "not_moderate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyThresholds {
    /// Slopes at or above this count as negligible.
    pub a_neg: f64,
    /// Slopes at or above `-tol_b` count as bounded.
    pub tol_b: f64,
    /// Slopes at or above `-b_max` count as moderate.
    pub b_max: f64,
}

impl Default for ClassifyThresholds {
    fn default() -> Self {
        Self {
            a_neg: 6.0,
            tol_b: 0.05,
            b_max: 20.0,
        }
    }
}

pub fn classify(net: &Net) -> Result<NetClass> {
    classify_with(net, &ClassifyThresholds::default()).map(|(c, _)| c)
}

/// Classification from the valuations of orders `0..=N_MAX`, which are
/// returned alongside.
pub fn classify_with(
    net: &Net,
    th: &ClassifyThresholds,
) -> Result<(NetClass, Vec<ValuationEstimate>)> {
    let est = (0..=N_MAX)
        .map(|n| valuation(net, n))
        .collect::<Result<Vec<_>>>()?;
    Ok((classify_slopes(&est, th), est))
}

pub fn classify_slopes(est: &[ValuationEstimate], th: &ClassifyThresholds) -> NetClass {
    let min = est.iter().map(|e| e.slope).fold(f64::INFINITY, f64::min);
    if min >= th.a_neg {
        NetClass::NegligibleAtTestedOrder
    } else if min >= -th.tol_b {
        NetClass::BoundedType
    } else if min >= -th.b_max {
        NetClass::Moderate
    } else {
        NetClass::NotModerate
    }
}

/// `p_n(U - V) = exp(-nu_n(U - V))`.
pub fn ultra_pseudo_seminorm(u: &Net, v: &Net, n: usize) -> Result<f64> {
    Ok(valuation(&u.sub(v)?, n)?.ultra_pseudo_seminorm())
}

/// Truncated ultra-metric `sum_{n < n_terms} 2^(-n-1) min(p_n(U - V), 1)`.
pub fn ultra_metric(u: &Net, v: &Net, n_terms: usize) -> Result<f64> {
    if n_terms > N_MAX + 1 {
        return Err(Error::UnsupportedOrder {
            order: n_terms - 1,
            max: N_MAX,
        });
    }
    let diff = u.sub(v)?;
    let levels = (0..n_terms)
        .map(|n| valuation(&diff, n).map(|e| e.ultra_pseudo_seminorm()))
        .collect::<Result<Vec<_>>>()?;
    Ok(metric_from_levels(&levels))
}

/// The truncated ultra-metric sum for given `p_n` values.
pub fn metric_from_levels(p: &[f64]) -> f64 {
    p.iter()
        .enumerate()
        .map(|(n, &pn)| 0.5f64.powi(n as i32 + 1) * pn.min(1.0))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nets::EpsilonLadder;
    use crate::seminorms::SpaceTimeGrid;

    fn grid() -> SpaceTimeGrid {
        SpaceTimeGrid::new(1, 0.5, 0.5, 0.1, 0.1).unwrap()
    }

    fn power_net(b: f64) -> Net {
        Net::from_fn(&EpsilonLadder::default(), grid(), move |e, _, _| e.powf(b))
    }

    fn zero_net() -> Net {
        power_net(0.0).scale_entries(&[0.0; 8])
    }

    #[test]
    fn planted_classes() {
        assert_eq!(classify(&power_net(10.0)).unwrap(), NetClass::NegligibleAtTestedOrder);
        assert_eq!(classify(&power_net(0.0)).unwrap(), NetClass::BoundedType);
        assert_eq!(classify(&power_net(-1.0)).unwrap(), NetClass::Moderate);
        assert_eq!(classify(&power_net(-25.0)).unwrap(), NetClass::NotModerate);
        assert_eq!(classify(&zero_net()).unwrap(), NetClass::NegligibleAtTestedOrder);
    }

    #[test]
    fn pseudo_seminorm_examples() {
        let u = power_net(1.0);
        assert_eq!(ultra_pseudo_seminorm(&u, &u, 0).unwrap(), 0.0);
        let z = zero_net();
        for n in 0..=2 {
            let p = ultra_pseudo_seminorm(&u, &z, n).unwrap();
            assert!((p - (-1.0f64).exp()).abs() < 1e-12);
        }
        let one = power_net(0.0);
        assert!((ultra_pseudo_seminorm(&one, &z, 0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn metric_examples() {
        let u = power_net(1.0);
        let z = zero_net();
        assert_eq!(ultra_metric(&u, &u, 3).unwrap(), 0.0);
        let d = ultra_metric(&u, &z, 3).unwrap();
        assert!((d - 0.875 * (-1.0f64).exp()).abs() < 1e-12);
        assert!((d - 0.321894).abs() < 1e-6);
        let d1 = ultra_metric(&power_net(0.0), &z, 3).unwrap();
        assert!((d1 - 0.875).abs() < 1e-12);
        assert!(ultra_metric(&u, &z, 4).is_err());
    }
}
