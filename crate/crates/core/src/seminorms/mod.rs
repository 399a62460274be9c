//! Sampled fields, nets of fields, and the sharp-topology calculus on them:
//! seminorms `mu_n` on the light cone, fitted valuations `nu_n`,
//! ultra-pseudo-seminorms `p_n`, the truncated ultra-metric, and the
//! negligible / bounded / moderate classification.

mod classify;
mod field;
mod grid;
mod net;
mod seminorm;
pub(crate) mod stencil;
mod valuation;

pub use classify::{
    classify, classify_slopes, classify_with, metric_from_levels, ultra_metric,
    ultra_pseudo_seminorm, ClassifyThresholds, NetClass,
};
pub use field::Field;
pub use grid::SpaceTimeGrid;
pub use net::Net;
pub use seminorm::{seminorm, N_MAX};
pub use valuation::{
    fit_valuation, number_valuation, seminorm_history, valuation, ValuationEstimate,
    ValuationReport, MIN_FIT_POINTS, UNDERFLOW_FLOOR,
};
