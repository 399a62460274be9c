//! Explicit solutions: `y' = eps y^2` has `y = 1 / (1 - eps t)`, and with
//! plateau data and `f(u) = 2 u^3`, `E = eps^2`, the wave solution agrees
//! with it on the inner backward cone.
//!
//! `cargo run --release --example oracles`

use colwave::linwave::QuadratureSpec;
use colwave::semilinear::IterationControl;
use colwave::suite::presets;
use colwave::verify::{check_wave_oracle, ode_check, oracle_field_residual, oracle_lifespan};

fn main() -> colwave::Result<()> {
    println!("y(1) at eps = 0.5: {:?}", oracle_lifespan(0.5, 1.0)?);
    match oracle_lifespan(0.5, 2.0) {
        Err(e) => println!("eps t = 1: {e}"),
        Ok(y) => println!("unexpected value {y}"),
    }
    let times: Vec<f64> = (0..=20).map(|k| 0.05 * k as f64).collect();
    let ode = ode_check(0.5, &times)?;
    println!(
        "defects: analytic {:.1e}, rescaled {:.1e}, finite difference {:.1e}",
        ode.analytic_defect, ode.rescaled_defect, ode.fd_defect
    );
    for dim in [1, 2, 3] {
        let grid = presets::oracle_grid(dim);
        let res = oracle_field_residual(&grid, 0.1)?;
        let r = check_wave_oracle(
            &presets::oracle(dim),
            0.1,
            &grid,
            &QuadratureSpec::default(),
            &IterationControl::default(),
        )?;
        println!(
            "d = {dim}: field residual {res:.2e}, solver error {:.2e} on {} nodes",
            r.max_error, r.nodes_compared
        );
    }
    Ok(())
}
