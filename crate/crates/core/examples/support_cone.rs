//! Finite propagation speed: linear and semilinear solutions vanish outside
//! the light cone of the data, and the linear operator is bounded in the
//! cone seminorms.
//!
//! `cargo run --release --example support_cone`

use colwave::linwave::{check_support, operator_norm_probe, QuadratureSpec};
use colwave::nets::{InitialDatum, Nonlinearity, Problem};
use colwave::semilinear::picard_solve;
use colwave::seminorms::SpaceTimeGrid;

fn main() -> colwave::Result<()> {
    let quad = QuadratureSpec::default();
    let problem = Problem {
        dim: 2,
        horizon: 0.3,
        support_radius: 1.0,
        u0: InitialDatum::gaussian(1.0, 0.5, 6.0),
        u1: InitialDatum::gaussian(0.7, 0.3, 6.0),
        nonlinearity: Nonlinearity::cubic(1.0),
        small_exponent: 1.0,
    };
    let grid = SpaceTimeGrid::new(2, 0.3, 1.0, 0.1, 0.05)?;
    for eps in [0.5, 0.1] {
        let (u, rep) = picard_solve(&problem, eps, &grid, &quad, 1e-10, 50)?;
        let s = check_support(&u, problem.support_radius, 1e-8);
        println!("eps = {eps}: {} iterations, max outside cone {:.3e}, ok {}", rep.iterations, s.max_outside, s.ok);
    }
    for n in 0..=1 {
        let r = operator_norm_probe(&problem.u0, &problem.u1, None, &grid, &quad, n)?;
        println!(
            "mu_{n}(L(u0, u1)) = {:.4}, data terms {:?}, ratio {:?}",
            r.solution_seminorm, r.data_terms, r.ratio
        );
    }
    Ok(())
}
