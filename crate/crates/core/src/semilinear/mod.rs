//! Per-eps Picard iteration of `F(U) = L(u0, u1, 0) + eps^b L(0, 0, f(U))`,
//! its assembly into solution nets, and the discrete residual.

mod picard;
mod residual;

pub use picard::{
    picard_solve, solve_net, FixedPointMap, IterationControl, NetSolution, SolveReport,
    DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
pub use residual::{residual, residual_with, sup_residual, MIN_RESIDUAL_LEVELS};
