use super::{Field, SpaceTimeGrid};
use crate::error::{Error, Result};
use crate::nets::EpsilonLadder;

/// One field per ladder entry, all on a shared grid: a finite representative
/// family of a generalized function.
#[derive(Debug, Clone, PartialEq)]
pub struct Net {
    ladder: EpsilonLadder,
    fields: Vec<Field>,
}

impl Net {
    pub fn new(ladder: EpsilonLadder, fields: Vec<Field>) -> Result<Self> {
        if fields.len() != ladder.len() {
            return Err(Error::GridMismatch(format!(
                "{} fields for a ladder of {} entries",
                fields.len(),
                ladder.len()
            )));
        }
        if let Some(first) = fields.first() {
            if fields.iter().any(|f| f.grid() != first.grid()) {
                return Err(Error::GridMismatch("net entries on different grids".into()));
            }
        }
        Ok(Self { ladder, fields })
    }

    /// `fields[j] = f(eps_j, t, x)` sampled on `grid`.
    pub fn from_fn(
        ladder: &EpsilonLadder,
        grid: SpaceTimeGrid,
        f: impl Fn(f64, f64, &[f64]) -> f64,
    ) -> Self {
        let fields = ladder
            .iter()
            .map(|eps| Field::from_fn(grid, |t, x| f(eps, t, x)))
            .collect();
        Self {
            ladder: ladder.clone(),
            fields,
        }
    }

    pub fn ladder(&self) -> &EpsilonLadder {
        &self.ladder
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn grid(&self) -> &SpaceTimeGrid {
        self.fields[0].grid()
    }

    fn check_compatible(&self, other: &Net) -> Result<()> {
        if self.ladder != other.ladder {
            return Err(Error::GridMismatch("nets on different ladders".into()));
        }
        Ok(())
    }

    pub fn zip_map(&self, other: &Net, f: impl Fn(f64, f64) -> f64 + Copy) -> Result<Net> {
        self.check_compatible(other)?;
        let fields = self
            .fields
            .iter()
            .zip(&other.fields)
            .map(|(a, b)| a.zip_map(b, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Net {
            ladder: self.ladder.clone(),
            fields,
        })
    }

    pub fn sub(&self, other: &Net) -> Result<Net> {
        self.zip_map(other, |a, b| a - b)
    }

    pub fn add(&self, other: &Net) -> Result<Net> {
        self.zip_map(other, |a, b| a + b)
    }

    /// Entrywise product `U * V`.
    pub fn mul(&self, other: &Net) -> Result<Net> {
        self.zip_map(other, |a, b| a * b)
    }

    /// Multiplies entry `j` by `factors[j]`.
    pub fn scale_entries(&self, factors: &[f64]) -> Net {
        Net {
            ladder: self.ladder.clone(),
            fields: self
                .fields
                .iter()
                .zip(factors)
                .map(|(f, &a)| f.scale(a))
                .collect(),
        }
    }
}
