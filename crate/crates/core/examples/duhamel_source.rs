//! Inhomogeneous linear problem: the Duhamel term of a source field, on the
//! whole grid and at single points, in 3D.
//!
//! `cargo run --release --example duhamel_source`

use colwave::linwave::{duhamel, LinearSolver, QuadratureSpec};
use colwave::seminorms::{Field, SpaceTimeGrid};

fn main() -> colwave::Result<()> {
    let grid = SpaceTimeGrid::new(3, 0.4, 1.0, 0.1, 0.05)?;
    let quad = QuadratureSpec::default();
    let solver = LinearSolver::new(grid, quad)?;

    // h = 1 near the origin gives t^2 / 2 there
    let h = Field::from_fn(grid, |_, x| {
        let r2: f64 = x.iter().map(|c| c * c).sum();
        if r2 <= 1.0 { 1.0 } else { 0.0 }
    });
    let w = solver.source(&h)?;
    let origin = grid.ravel(&[grid.half(); 3]);
    for n in [2, 4, 8] {
        let t = grid.time(n);
        println!("t = {t:.2}: L(0, 0, 1)(t, 0) = {:.8}  t^2/2 = {:.8}", w.value(n, origin), 0.5 * t * t);
    }

    // a smooth source, grid values against pointwise evaluation
    let h = Field::from_fn(grid, |t, x| (1.0 + t) * (-4.0 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp());
    let w = solver.source(&h)?;
    let s = grid.ravel(&[grid.half() + 2, grid.half(), grid.half() - 1]);
    let p = grid.point(s);
    let n = grid.nt() - 1;
    let direct = duhamel(&h, grid.time(n), &p, &quad)?;
    println!("at x = {:?}, t = {:.2}: grid {:.12} point {:.12}", &p[..3], grid.time(n), w.value(n, s), direct);
    Ok(())
}
