use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smooth nonlinearity `f` with `f(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Nonlinearity {
    /// `sum_k coefficients[k] * u^(k+1)`. The optional `constant` exists only
    /// so that configs carrying one are rejected instead of silently dropped.
    Polynomial {
        coefficients: Vec<f64>,
        #[serde(default, skip_serializing_if = "is_zero")]
        constant: f64,
    },
    Sine,
    ExpMinusOne,
    Zero,
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

impl Nonlinearity {
    /// Polynomial without constant term; `coefficients[k]` multiplies `u^(k+1)`.
    pub fn polynomial(coefficients: &[f64]) -> Self {
        Nonlinearity::Polynomial {
            coefficients: coefficients.to_vec(),
            constant: 0.0,
        }
    }

    /// Polynomial from a dense power series `sum_k c[k] u^k`. Fails when
    /// `c[0] != 0`.
    pub fn from_power_series(c: &[f64]) -> Result<Self> {
        let f = match c.split_first() {
            None => Nonlinearity::Zero,
            Some((&c0, rest)) => Nonlinearity::Polynomial {
                coefficients: rest.to_vec(),
                constant: c0,
            },
        };
        f.validate()?;
        Ok(f)
    }

    /// The cubic `c * u^3`.
    pub fn cubic(c: f64) -> Self {
        Self::polynomial(&[0.0, 0.0, c])
    }

    pub fn validate(&self) -> Result<()> {
        if let Nonlinearity::Polynomial {
            coefficients,
            constant,
        } = self
        {
            if *constant != 0.0 {
                return Err(Error::validation(
                    "constant",
                    format!("f(0) must vanish, got constant term {constant}"),
                ));
            }
            if coefficients.iter().any(|c| !c.is_finite()) {
                return Err(Error::validation("coefficients", "must be finite"));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Nonlinearity::Zero => true,
            Nonlinearity::Polynomial { coefficients, .. } => coefficients.iter().all(|&c| c == 0.0),
            _ => false,
        }
    }

    #[inline]
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Nonlinearity::Polynomial { coefficients, .. } => {
                u * coefficients.iter().rev().fold(0.0, |acc, &c| acc * u + c)
            }
            Nonlinearity::Sine => u.sin(),
            Nonlinearity::ExpMinusOne => u.exp_m1(),
            Nonlinearity::Zero => 0.0,
        }
    }

    #[inline]
    pub fn derivative(&self, u: f64) -> f64 {
        match self {
            Nonlinearity::Polynomial { coefficients, .. } => coefficients
                .iter()
                .enumerate()
                .rev()
                .fold(0.0, |acc, (k, &c)| acc * u + (k + 1) as f64 * c),
            Nonlinearity::Sine => u.cos(),
            Nonlinearity::ExpMinusOne => u.exp(),
            Nonlinearity::Zero => 0.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(Nonlinearity::polynomial(&[0.0, 0.0, 2.0]).eval(2.0), 16.0);
        assert_eq!(Nonlinearity::Sine.eval(0.0), 0.0);
        assert!((Nonlinearity::ExpMinusOne.eval(1.0) - 1.718281828).abs() < 1e-9);
    }

    #[test]
    fn vanishes_at_zero() {
        for f in [
            Nonlinearity::polynomial(&[1.0, -3.0, 0.5]),
            Nonlinearity::Sine,
            Nonlinearity::ExpMinusOne,
            Nonlinearity::Zero,
        ] {
            assert_eq!(f.eval(0.0), 0.0);
        }
    }

    #[test]
    fn constant_term_rejected() {
        assert!(Nonlinearity::from_power_series(&[1.0, 2.0]).is_err());
        let ok = Nonlinearity::from_power_series(&[0.0, 0.0, 0.0, 2.0]).unwrap();
        assert_eq!(ok.eval(2.0), 16.0);
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let h = 1e-6;
        for f in [
            Nonlinearity::polynomial(&[1.0, -3.0, 0.5]),
            Nonlinearity::Sine,
            Nonlinearity::ExpMinusOne,
        ] {
            for u in [-1.3, -0.2, 0.0, 0.7, 1.9] {
                let fd = (f.eval(u + h) - f.eval(u - h)) / (2.0 * h);
                assert!((fd - f.derivative(u)).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn serde_shape() {
        let f: Nonlinearity =
            serde_json::from_str(r#"{"kind":"polynomial","coefficients":[0,0,2]}"#).unwrap();
        assert_eq!(f, Nonlinearity::cubic(2.0));
        let bad: Nonlinearity =
            serde_json::from_str(r#"{"kind":"polynomial","coefficients":[1],"constant":1}"#).unwrap();
        assert!(bad.validate().is_err());
    }
}
