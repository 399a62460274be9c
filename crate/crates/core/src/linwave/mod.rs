//! Solution operator `L(u0, u1, h)` of the linear wave equation in one, two
//! and three space dimensions: d'Alembert, Poisson and Kirchhoff formulas
//! plus the Duhamel integral, each discretized by a dimension-specific rule.

mod quadrature;
mod solver;
mod support;
mod symmetry;

pub use quadrature::QuadratureSpec;
pub use solver::{duhamel, solve_linear, LinearSolver};
pub use support::{
    check_support, datum_seminorm, operator_norm_probe, OperatorNormReport, SupportReport,
    PROBE_MAX_ORDER,
};
