//! Measurable versions of the structural claims about the solution nets:
//! association with the linear solution and its rate, contraction of the
//! fixed-point map, a uniqueness surrogate, the explicit oracles, and the
//! residual refinement study.

mod association;
mod contraction;
mod oracle;
mod refinement;
mod summary;
mod uniqueness;

pub use association::{
    association_of, check_association, m1_threshold, AssociationReport, MONOTONE_SLACK,
    RATE_TOLERANCE,
};
pub use contraction::{check_contraction, contraction_of, perturbation_profile, ContractionReport};
pub use oracle::{
    check_wave_oracle, ode_check, oracle_field_residual, oracle_lifespan, plateau_oracle_problem,
    OdeCheck, WaveOracleReport,
};
pub use refinement::{
    residual_refinement, RefinementLevel, RefinementReport, CONSTANT_SLACK, MIN_ORDER,
};
pub use summary::{write_summary, CheckSummary};
pub use uniqueness::{
    check_uniqueness_surrogate, Perturbation, UniquenessReport, SEED_EXPONENT, TIGHTENING,
};
