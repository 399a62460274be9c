//! Picard iteration for `u_tt - u_xx = eps u^3` with bump data, over an
//! epsilon ladder: increments shrink geometrically with a ratio
//! proportional to eps, and the discrete wave residual is small.
//!
//! `cargo run --release --example picard_solve`

use colwave::linwave::QuadratureSpec;
use colwave::nets::{EpsilonLadder, InitialDatum, Nonlinearity, Problem};
use colwave::semilinear::{solve_net, sup_residual};
use colwave::seminorms::SpaceTimeGrid;

fn main() -> colwave::Result<()> {
    let problem = Problem {
        dim: 1,
        horizon: 0.6,
        support_radius: 1.0,
        u0: InitialDatum::gaussian(1.0, 0.5, 6.0),
        u1: InitialDatum::Zero,
        nonlinearity: Nonlinearity::cubic(1.0),
        small_exponent: 1.0,
    };
    let grid = SpaceTimeGrid::new(1, 0.6, 1.0, 0.02, 0.02)?;
    let ladder = EpsilonLadder::new(0.5, 0.5, 8)?;
    let sol = solve_net(&problem, &ladder, &grid, &QuadratureSpec::default(), 1e-10, 50)?;
    println!("{:>10} {:>5} {:>12} {:>12}", "eps", "iter", "ratio", "residual");
    for (rep, u) in sol.reports.iter().zip(sol.net.fields()) {
        let ratio = rep.increment_ratios().first().copied().unwrap_or(f64::NAN);
        let res = sup_residual(u, rep.eps, &problem)?;
        println!("{:>10.6} {:>5} {:>12.4e} {:>12.4e}", rep.eps, rep.iterations, ratio, res);
    }
    let mut csv = Vec::new();
    sol.write_reports_csv(&mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    Ok(())
}
