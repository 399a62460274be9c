use std::io::Write;

use super::{seminorm, Net};
use crate::error::{Error, Result};
use crate::nets::GeneralizedNumber;

/// Magnitudes at or below this are treated as numerically zero.
pub const UNDERFLOW_FLOOR: f64 = 1e-300;

/// Minimum number of ladder points a rate fit accepts.
pub const MIN_FIT_POINTS: usize = 3;

/// Fitted decay exponent of a seminorm along the ladder: the numerical
/// surrogate of the valuation `nu_n`.
///
/// `slope = +inf` is the sentinel for a net whose seminorms all sit below
/// [`UNDERFLOW_FLOOR`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValuationEstimate {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub n_points: usize,
}

impl ValuationEstimate {
    pub fn is_negligible(&self) -> bool {
        self.slope == f64::INFINITY
    }

    /// `p_n = exp(-nu_n)`, zero for the negligible sentinel.
    pub fn ultra_pseudo_seminorm(&self) -> f64 {
        if self.is_negligible() {
            0.0
        } else {
            (-self.slope).exp()
        }
    }
}

/// Unweighted least-squares fit of `log m_j` against `log eps_j`, over the
/// entries with `m_j > UNDERFLOW_FLOOR`.
pub fn fit_valuation(eps: &[f64], magnitudes: &[f64]) -> Result<ValuationEstimate> {
    assert_eq!(eps.len(), magnitudes.len());
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(magnitudes)
        .filter(|(_, m)| m.abs() > UNDERFLOW_FLOOR)
        .map(|(e, m)| (e.ln(), m.abs().ln()))
        .collect();
    if pts.is_empty() {
        return Ok(ValuationEstimate {
            slope: f64::INFINITY,
            intercept: f64::NEG_INFINITY,
            stderr: 0.0,
            n_points: eps.len(),
        });
    }
    if pts.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            usable: pts.len(),
            required: MIN_FIT_POINTS,
        });
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let stderr = (ssr / (k - 2.0) / sxx).max(0.0).sqrt();
    Ok(ValuationEstimate {
        slope,
        intercept,
        stderr,
        n_points: pts.len(),
    })
}

/// `mu_n` of every entry of a net.
pub fn seminorm_history(net: &Net, n: usize) -> Result<Vec<f64>> {
    net.fields().iter().map(|f| seminorm(f, n)).collect()
}

/// Fitted valuation `nu_n` of a net.
pub fn valuation(net: &Net, n: usize) -> Result<ValuationEstimate> {
    let mu = seminorm_history(net, n)?;
    fit_valuation(net.ladder().values(), &mu)
}

/// Valuation of a generalized number, fitted on `|values|`.
pub fn number_valuation(x: &GeneralizedNumber) -> Result<ValuationEstimate> {
    fit_valuation(x.ladder().values(), x.values())
}

/// Per-eps seminorms of one order together with their fit.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuationReport {
    pub order: usize,
    pub eps: Vec<f64>,
    pub mu: Vec<f64>,
    pub estimate: ValuationEstimate,
}

impl ValuationReport {
    pub fn compute(net: &Net, n: usize) -> Result<Self> {
        let mu = seminorm_history(net, n)?;
        let estimate = fit_valuation(net.ladder().values(), &mu)?;
        Ok(Self {
            order: n,
            eps: net.ladder().values().to_vec(),
            mu,
            estimate,
        })
    }

    pub const CSV_HEADER: &'static str = "eps,mu,n,slope,stderr";

    /// Rows `eps,mu,n,slope,stderr` with 17 significant digits.
    pub fn write_csv_rows(&self, w: &mut impl Write) -> std::io::Result<()> {
        for (e, m) in self.eps.iter().zip(&self.mu) {
            writeln!(
                w,
                "{:.16e},{:.16e},{},{:.16e},{:.16e}",
                e, m, self.order, self.estimate.slope, self.estimate.stderr
            )?;
        }
        Ok(())
    }
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

    #[test]
    fn planted_exponents() {
        let v = valuation(&power_net(1.0), 0).unwrap();
        assert!((v.slope - 1.0).abs() < 1e-12);
        let v = valuation(&power_net(2.5), 0).unwrap();
        assert!((v.slope - 2.5).abs() < 1e-12);
        assert!(v.stderr < 1e-12);
        let v = valuation(&power_net(0.0), 0).unwrap();
        assert!(v.slope.abs() < 1e-12);
    }

    #[test]
    fn zero_net_is_negligible_sentinel() {
        let v = valuation(&Net::from_fn(&EpsilonLadder::default(), grid(), |_, _, _| 0.0), 1).unwrap();
        assert!(v.is_negligible());
        assert_eq!(v.ultra_pseudo_seminorm(), 0.0);
    }

    #[test]
    fn too_few_usable_points() {
        let eps = [0.5, 0.25, 0.125, 0.0625];
        let m = [1.0, 1e-301, 0.5, 0.0];
        assert!(matches!(
            fit_valuation(&eps, &m),
            Err(Error::InsufficientData { usable: 2, required: 3 })
        ));
    }

    #[test]
    fn csv_rows() {
        let r = ValuationReport::compute(&power_net(1.0), 0).unwrap();
        let mut buf = Vec::new();
        r.write_csv_rows(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 8);
        assert!(text.starts_with("5.0000000000000000e-1,5.0000000000000000e-1,0,"));
    }
}
