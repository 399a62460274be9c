//! The linear solver in one, two and three dimensions.
//!
//! With `u0 = 0` and `u1` a unit plateau much wider than the light cone, the
//! solution at the origin is `t` in every dimension. In 1D with `u1 = 0` it
//! is the average of the two translates of `u0`.
//!
//! `cargo run --release --example linear_kernels`

use colwave::linwave::{LinearSolver, QuadratureSpec};
use colwave::nets::InitialDatum;
use colwave::seminorms::SpaceTimeGrid;

fn main() -> colwave::Result<()> {
    let quad = QuadratureSpec::default();
    let u1 = InitialDatum::plateau(2.0, 1.0, 1.0);
    println!("u(t, 0) for u0 = 0, u1 = plateau of inner radius 1");
    for dim in 1..=3 {
        let grid = SpaceTimeGrid::new(dim, 0.5, 2.0, 0.1, 0.05)?;
        let u = LinearSolver::new(grid, quad)?.homogeneous(&InitialDatum::Zero, &u1)?;
        let origin = grid.ravel(&[grid.half(); 3][..dim]);
        let row: Vec<String> = (0..grid.nt())
            .step_by(2)
            .map(|n| format!("{:.6}", u.value(n, origin)))
            .collect();
        println!("  d = {dim}: {}", row.join(" "));
    }

    let grid = SpaceTimeGrid::new(1, 0.6, 1.0, 0.02, 0.02)?;
    let u0 = InitialDatum::gaussian(1.0, 0.5, 6.0);
    let u = LinearSolver::new(grid, quad)?.homogeneous(&u0, &InitialDatum::Zero)?;
    let mut err = 0.0f64;
    for n in 0..grid.nt() {
        let t = grid.time(n);
        for s in 0..grid.spatial_len() {
            let x = grid.point(s)[0];
            let exact = 0.5 * (u0.value(&[x - t]) + u0.value(&[x + t]));
            err = err.max((u.value(n, s) - exact).abs());
        }
    }
    println!("1D translation average, max error {err:.3e}");
    Ok(())
}
