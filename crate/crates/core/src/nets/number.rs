use std::ops::Mul;

use super::EpsilonLadder;
use crate::error::{Error, Result};

/// A net of real numbers indexed by a ladder: a representative of an element
/// of the ring of generalized numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedNumber {
    ladder: EpsilonLadder,
    values: Vec<f64>,
    nominal_exponent: Option<f64>,
}

impl GeneralizedNumber {
    pub fn new(ladder: EpsilonLadder, values: Vec<f64>) -> Result<Self> {
        if values.len() != ladder.len() {
            return Err(Error::validation(
                "values",
                format!("expected {} entries, got {}", ladder.len(), values.len()),
            ));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::validation("values", format!("non-finite entry {v}")));
        }
        Ok(Self {
            ladder,
            values,
            nominal_exponent: None,
        })
    }

    /// The net `eps^b`. Used for the small factor `E` in front of the
    /// nonlinearity.
    pub fn power(ladder: &EpsilonLadder, b: f64) -> Self {
        Self {
            values: ladder.iter().map(|e| e.powf(b)).collect(),
            ladder: ladder.clone(),
            nominal_exponent: Some(b),
        }
    }

    pub fn ladder(&self) -> &EpsilonLadder {
        &self.ladder
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nominal_exponent(&self) -> Option<f64> {
        self.nominal_exponent
    }
}

impl Mul for &GeneralizedNumber {
    type Output = GeneralizedNumber;

    /// Entrywise product. Both factors must share a ladder.
    fn mul(self, rhs: &GeneralizedNumber) -> GeneralizedNumber {
        assert_eq!(self.ladder, rhs.ladder, "generalized numbers on different ladders");
        GeneralizedNumber {
            ladder: self.ladder.clone(),
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a * b).collect(),
            nominal_exponent: match (self.nominal_exponent, rhs.nominal_exponent) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_examples() {
        let l = EpsilonLadder::new(1.0, 0.1, 3).unwrap();
        let one = GeneralizedNumber::power(&l, 1.0);
        for (v, e) in one.values().iter().zip([1.0, 0.1, 0.01]) {
            assert!((v - e).abs() <= 1e-15);
        }
        assert_eq!(GeneralizedNumber::power(&l, 0.0).values(), &[1.0, 1.0, 1.0]);

        let halves = EpsilonLadder::new(0.5, 0.5, 3).unwrap();
        let sq = GeneralizedNumber::power(&halves, 2.0);
        assert_eq!(&sq.values()[..2], &[0.25, 0.0625]);
        assert_eq!(sq.nominal_exponent(), Some(2.0));
    }

    #[test]
    fn power_is_multiplicative() {
        let l = EpsilonLadder::default();
        for (b1, b2) in [(0.5, 1.5), (2.0, -1.0), (0.3, 0.7)] {
            let prod = &GeneralizedNumber::power(&l, b1) * &GeneralizedNumber::power(&l, b2);
            let direct = GeneralizedNumber::power(&l, b1 + b2);
            for (a, b) in prod.values().iter().zip(direct.values()) {
                assert!((a - b).abs() <= 4.0 * f64::EPSILON * b.abs());
            }
            assert_eq!(prod.nominal_exponent(), Some(b1 + b2));
        }
    }

    #[test]
    fn rejects_length_mismatch() {
        let l = EpsilonLadder::default();
        assert!(GeneralizedNumber::new(l, vec![1.0; 3]).is_err());
    }
}
