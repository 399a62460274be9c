//! Distance between the semilinear and the linear solution nets decays like
//! `eps^b` in the sup norm on the cone.
//!
//! `cargo run --release --example association`

use colwave::linwave::QuadratureSpec;
use colwave::semilinear::IterationControl;
use colwave::suite::presets;
use colwave::verify::check_association;

fn main() -> colwave::Result<()> {
    let grid = presets::grid_1d(0.02);
    for b in [0.5, 1.0, 2.0] {
        let r = check_association(
            &presets::bump_1d(b),
            &presets::ladder(),
            &grid,
            &QuadratureSpec::default(),
            &IterationControl::default(),
        )?;
        println!(
            "b = {b}: rate {:.4} associated {} strong {}",
            r.fitted_rate.slope, r.associated, r.strong_rate_ok
        );
        for (e, m) in r.eps.iter().zip(&r.mu0_history) {
            println!("    eps {e:.6}  mu_0 {m:.4e}");
        }
    }
    Ok(())
}
