//! Grid refinement of the discrete wave residual of converged solutions.
//!
//! `cargo run --release --example refinement`

use colwave::linwave::QuadratureSpec;
use colwave::semilinear::IterationControl;
use colwave::suite::presets;
use colwave::verify::residual_refinement;

fn main() -> colwave::Result<()> {
    let grids = [0.04, 0.02, 0.01, 0.005].map(presets::grid_1d);
    let r = residual_refinement(
        &presets::bump_1d(1.0),
        0.1,
        &grids,
        &QuadratureSpec::default(),
        &IterationControl::default(),
    )?;
    for l in &r.levels {
        println!("dx {:.4} dt {:.4}: residual {:.4e} after {} iterations", l.dx, l.dt, l.sup_residual, l.iterations);
    }
    println!("order {:.3}, C {:.3}, bound ok {}", r.order, r.constant, r.bound_ok);
    Ok(())
}
