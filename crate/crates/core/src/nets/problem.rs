use serde::{Deserialize, Serialize};

use super::{InitialDatum, Nonlinearity};
use crate::error::{Error, Result};

/// Cauchy problem `u_tt - Δu = eps^b f(u)`, `u(0) = u0`, `u_t(0) = u1` on
/// `[0, T] x R^d` with data supported in the ball of radius `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Problem {
    pub dim: usize,
    pub horizon: f64,
    pub support_radius: f64,
    pub u0: InitialDatum,
    pub u1: InitialDatum,
    pub nonlinearity: Nonlinearity,
    pub small_exponent: f64,
}

impl Problem {
    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::validation("dim", format!("must be 1, 2 or 3, got {}", self.dim)));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::validation("horizon", "must be positive"));
        }
        if !(self.support_radius >= 0.0 && self.support_radius.is_finite()) {
            return Err(Error::validation("support_radius", "must be non-negative"));
        }
        for (name, d) in [("u0", &self.u0), ("u1", &self.u1)] {
            d.validate().map_err(|e| e.with_prefix(name))?;
            if d.outer_radius() > self.support_radius {
                return Err(Error::validation(
                    format!("{name}.outer_radius"),
                    format!(
                        "datum support {} exceeds support_radius {}",
                        d.outer_radius(),
                        self.support_radius
                    ),
                ));
            }
        }
        self.nonlinearity
            .validate()
            .map_err(|e| e.with_prefix("nonlinearity"))?;
        if !(self.small_exponent > 0.0 && self.small_exponent.is_finite()) {
            return Err(Error::validation("small_exponent", "b must be positive"));
        }
        Ok(())
    }

    /// The small factor `e_eps = eps^b`.
    pub fn small_factor(&self, eps: f64) -> f64 {
        eps.powf(self.small_exponent)
    }

    /// Same data with `f = 0`.
    pub fn linearized(&self) -> Problem {
        Problem {
            nonlinearity: Nonlinearity::Zero,
            ..self.clone()
        }
    }

    pub fn with_exponent(&self, b: f64) -> Problem {
        Problem {
            small_exponent: b,
            ..self.clone()
        }
    }

    pub fn with_nonlinearity(&self, f: Nonlinearity) -> Problem {
        Problem {
            nonlinearity: f,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Problem {
        Problem {
            dim: 1,
            horizon: 1.0,
            support_radius: 1.0,
            u0: InitialDatum::bump(1.0, 0.5),
            u1: InitialDatum::Zero,
            nonlinearity: Nonlinearity::cubic(1.0),
            small_exponent: 1.0,
        }
    }

    #[test]
    fn valid_problem() {
        base().validate().unwrap();
    }

    #[test]
    fn rejects_bad_fields() {
        let cases: Vec<(Problem, &str)> = vec![
            (Problem { dim: 4, ..base() }, "dim"),
            (Problem { small_exponent: 0.0, ..base() }, "small_exponent"),
            (Problem { horizon: -1.0, ..base() }, "horizon"),
            (Problem { u0: InitialDatum::bump(2.0, 1.0), ..base() }, "u0.outer_radius"),
            (
                Problem { u1: InitialDatum::plateau(1.0, 1.0, 1.0), ..base() },
                "u1.inner_radius",
            ),
        ];
        for (p, field) in cases {
            match p.validate() {
                Err(Error::Validation { param, .. }) => assert_eq!(param, field),
                other => panic!("expected validation error for {field}, got {other:?}"),
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p = base();
        let s = serde_json::to_string(&p).unwrap();
        let q: Problem = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
        assert_eq!(serde_json::to_string(&q).unwrap(), s);
    }
}
