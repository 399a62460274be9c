//! JSON experiment configuration.
//!
//! ```json
//! {
//!   "problem": {
//!     "dim": 1, "horizon": 0.6, "support_radius": 1.0,
//!     "u0": {"kind": "gaussian_bump", "outer_radius": 1.0, "amplitude": 0.5, "sharpness": 6.0},
//!     "u1": {"kind": "zero"},
//!     "nonlinearity": {"kind": "polynomial", "coefficients": [0.0, 0.0, 1.0]},
//!     "small_exponent": 1.0
//!   },
//!   "ladder": {"eps0": 0.5, "ratio": 0.5, "count": 8},
//!   "grid": {"dx": 0.02, "dt": 0.02},
//!   "quadrature": {"angular_points": 16, "polar_points": 12, "time_points_per_dt": 1},
//!   "tol": 1e-10, "max_iter": 50,
//!   "outputs": "out",
//!   "checks": ["support", "association"]
//! }
//! ```
//!
//! Everything except `problem` and `grid` has a default. Unknown keys are
//! rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linwave::QuadratureSpec;
use crate::nets::{EpsilonLadder, Problem};
use crate::semilinear::{IterationControl, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::seminorms::SpaceTimeGrid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderConfig {
    pub eps0: f64,
    pub ratio: f64,
    pub count: usize,
}

impl Default for LadderConfig {
    fn default() -> Self {
        let (eps0, ratio, count) = EpsilonLadder::DEFAULT;
        Self { eps0, ratio, count }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub dx: f64,
    pub dt: f64,
    #[serde(default = "default_margin")]
    pub margin_cells: usize,
    /// Half-width of the spatial box; `r + T` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spatial_extent: Option<f64>,
}

fn default_margin() -> usize {
    SpaceTimeGrid::DEFAULT_MARGIN
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Support,
    Contraction,
    Association,
    Uniqueness,
    Oracle,
    Residual,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Support,
        CheckKind::Contraction,
        CheckKind::Association,
        CheckKind::Uniqueness,
        CheckKind::Oracle,
        CheckKind::Residual,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::Support => "support",
            CheckKind::Contraction => "contraction",
            CheckKind::Association => "association",
            CheckKind::Uniqueness => "uniqueness",
            CheckKind::Oracle => "oracle",
            CheckKind::Residual => "residual",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == name)
            .ok_or_else(|| {
                Error::validation(
                    "checks",
                    format!(
                        "unknown check {name:?}; expected one of {}",
                        Self::ALL.map(|k| k.as_str()).join(", ")
                    ),
                )
            })
    }
}

/// Knobs of the individual checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckParameters {
    /// Amplitude of the bump added to `U` in the contraction check.
    pub contraction_scale: f64,
    /// Amplitude of the data perturbation the uniqueness check must detect.
    pub data_perturbation: f64,
    /// Parameter at which the residual refinement runs.
    pub residual_eps: f64,
    /// Number of grids in the refinement, each halving `dx` and `dt`.
    pub refinement_levels: usize,
    /// Parameters of the plateau oracle comparison.
    pub oracle_eps: Vec<f64>,
    /// Inner radius of the oracle plateau; the outer radius is one more.
    pub oracle_inner_radius: f64,
    /// Largest admissible `|u - 1/(1 - eps t)|` on the inner backward cone.
    pub oracle_tolerance: f64,
    /// Largest admissible value outside the inflated cone.
    pub support_tolerance: f64,
}

impl Default for CheckParameters {
    fn default() -> Self {
        Self {
            contraction_scale: 0.1,
            data_perturbation: 0.5,
            residual_eps: 0.1,
            refinement_levels: 3,
            oracle_eps: vec![0.1, 0.05, 0.025],
            oracle_inner_radius: 0.6,
            oracle_tolerance: 1e-4,
            support_tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: Problem,
    #[serde(default)]
    pub ladder: LadderConfig,
    pub grid: GridConfig,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default = "default_outputs")]
    pub outputs: PathBuf,
    #[serde(default)]
    pub checks: Vec<CheckKind>,
    #[serde(default)]
    pub parameters: CheckParameters,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

fn default_outputs() -> PathBuf {
    PathBuf::from("out")
}

impl ExperimentConfig {
    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config values serialize")
    }

    pub fn validate(&self) -> Result<()> {
        self.problem
            .validate()
            .map_err(|e| e.with_prefix("problem"))?;
        self.ladder()?;
        self.grid()?;
        self.quadrature
            .validate()
            .map_err(|e| e.with_prefix("quadrature"))?;
        self.control().validate()?;
        let p = &self.parameters;
        let positive = [
            ("contraction_scale", p.contraction_scale),
            ("data_perturbation", p.data_perturbation),
            ("residual_eps", p.residual_eps),
            ("oracle_inner_radius", p.oracle_inner_radius),
            ("oracle_tolerance", p.oracle_tolerance),
            ("support_tolerance", p.support_tolerance),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::validation(
                    format!("parameters.{name}"),
                    format!("must be positive, got {v}"),
                ));
            }
        }
        if p.refinement_levels < 3 {
            return Err(Error::validation(
                "parameters.refinement_levels",
                "an order fit needs at least 3 levels",
            ));
        }
        if let Some(e) = p.oracle_eps.iter().find(|e| !(**e > 0.0 && **e <= 1.0)) {
            return Err(Error::validation(
                "parameters.oracle_eps",
                format!("entries must lie in (0, 1], got {e}"),
            ));
        }
        Ok(())
    }

    pub fn ladder(&self) -> Result<EpsilonLadder> {
        let l = &self.ladder;
        EpsilonLadder::new(l.eps0, l.ratio, l.count).map_err(|e| e.with_prefix("ladder"))
    }

    /// The grid for the configured problem.
    pub fn grid(&self) -> Result<SpaceTimeGrid> {
        self.grid_scaled(1.0)
    }

    /// The grid with `dx` and `dt` multiplied by `factor`.
    pub fn grid_scaled(&self, factor: f64) -> Result<SpaceTimeGrid> {
        let p = &self.problem;
        let g = &self.grid;
        SpaceTimeGrid::with_params(
            p.dim,
            p.horizon,
            p.support_radius,
            g.spatial_extent.unwrap_or(p.support_radius + p.horizon),
            g.dx * factor,
            g.dt * factor,
            g.margin_cells,
        )
        .map_err(|e| e.with_prefix("grid"))
    }

    pub fn control(&self) -> IterationControl {
        IterationControl {
            tol: self.tol,
            max_iter: self.max_iter,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "problem": {
            "dim": 1, "horizon": 0.5, "support_radius": 1.0,
            "u0": {"kind": "gaussian_bump", "outer_radius": 1.0, "amplitude": 0.5},
            "u1": {"kind": "zero"},
            "nonlinearity": {"kind": "sine"},
            "small_exponent": 1.0
        },
        "grid": {"dx": 0.05, "dt": 0.05}
    }"#;

    #[test]
    fn defaults_fill_in() {
        let c = ExperimentConfig::from_json(MINIMAL).unwrap();
        assert_eq!(c.ladder, LadderConfig::default());
        assert_eq!(c.tol, DEFAULT_TOL);
        assert_eq!(c.grid.margin_cells, 2);
        assert!(c.checks.is_empty());
    }

    #[test]
    fn round_trip_is_idempotent() {
        let c = ExperimentConfig::from_json(MINIMAL).unwrap();
        let once = c.to_json();
        let twice = ExperimentConfig::from_json(&once).unwrap().to_json();
        assert_eq!(once, twice);
    }

    #[test]
    fn bad_ratio_names_the_field() {
        let mut v: serde_json::Value = serde_json::from_str(MINIMAL).unwrap();
        v["ladder"] = serde_json::json!({"eps0": 0.5, "ratio": 1.5, "count": 8});
        let err = ExperimentConfig::from_json(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("ladder.ratio"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut v: serde_json::Value = serde_json::from_str(MINIMAL).unwrap();
        v["tolerance"] = serde_json::json!(1e-3);
        assert!(ExperimentConfig::from_json(&v.to_string()).is_err());
    }

    #[test]
    fn check_names_parse() {
        for k in CheckKind::ALL {
            assert_eq!(CheckKind::parse(k.as_str()).unwrap(), k);
        }
        assert!(CheckKind::parse("speed").is_err());
    }
}
