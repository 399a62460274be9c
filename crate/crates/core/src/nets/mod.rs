//! Regularization ladders, generalized numbers, and the closed-form data
//! (initial values and nonlinearities) that define a problem.

mod datum;
mod ladder;
mod nonlinearity;
mod number;
mod problem;

pub use datum::{smooth_step, InitialDatum, MAX_DATUM_ORDER};
pub use ladder::EpsilonLadder;
pub use nonlinearity::Nonlinearity;
pub use number::GeneralizedNumber;
pub use problem::Problem;
