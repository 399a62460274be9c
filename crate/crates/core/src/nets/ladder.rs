use crate::error::{Error, Result};

/// Geometric grid `eps_j = eps0 * ratio^j` of regularization parameters.
///
/// Every net in the crate is indexed by one of these. A finite ladder is the
/// numerical stand-in for the index set `(0, 1]` of a representative family.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonLadder {
    eps0: f64,
    ratio: f64,
    values: Vec<f64>,
}

impl EpsilonLadder {
    /// Largest parameter, ratio and length used when nothing else is asked for.
    pub const DEFAULT: (f64, f64, usize) = (0.5, 0.5, 8);

    pub fn new(eps0: f64, ratio: f64, count: usize) -> Result<Self> {
        if !(eps0 > 0.0 && eps0 <= 1.0) {
            return Err(Error::validation("eps0", format!("must lie in (0, 1], got {eps0}")));
        }
        if !(ratio > 0.0 && ratio < 1.0) {
            return Err(Error::validation("ratio", format!("must lie in (0, 1), got {ratio}")));
        }
        if count < 3 {
            return Err(Error::validation(
                "count",
                format!("a rate fit needs at least 3 points, got {count}"),
            ));
        }
        let values = (0..count).map(|j| eps0 * ratio.powi(j as i32)).collect();
        Ok(Self { eps0, ratio, values })
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, j: usize) -> f64 {
        self.values[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied()
    }
}

impl Default for EpsilonLadder {
    fn default() -> Self {
        let (eps0, ratio, count) = Self::DEFAULT;
        Self::new(eps0, ratio, count).expect("default ladder is valid")
    }
}
