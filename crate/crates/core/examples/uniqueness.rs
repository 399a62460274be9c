//! Uniqueness surrogate: a negligible change of the Picard seed leaves the
//! solution net unchanged up to round-off, while a change of the data is
//! detected.
//!
//! `cargo run --release --example uniqueness`

use colwave::linwave::QuadratureSpec;
use colwave::semilinear::IterationControl;
use colwave::suite::presets;
use colwave::verify::{check_uniqueness_surrogate, Perturbation};

fn main() -> colwave::Result<()> {
    for p in [Perturbation::NegligibleSeed, Perturbation::Data { scale: 0.5 }] {
        let r = check_uniqueness_surrogate(
            &presets::bump_1d(1.0),
            &presets::ladder(),
            &presets::grid_1d(0.02),
            &QuadratureSpec::default(),
            &IterationControl::default(),
            p,
        )?;
        let class = r.class.map_or("too few nonzero entries to fit", |c| c.as_str());
        println!("{p:?}: max mu_n {:?}, class {class}, ok {}", r.max_mu, r.ok);
    }
    Ok(())
}
