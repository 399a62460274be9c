//! Nets on an epsilon ladder, their seminorms and valuations, the class of
//! a net, and the truncated ultra-metric.
//!
//! `cargo run --release --example valuations`

use colwave::nets::EpsilonLadder;
use colwave::seminorms::{classify, ultra_metric, Net, SpaceTimeGrid, ValuationReport};

fn main() -> colwave::Result<()> {
    let ladder = EpsilonLadder::new(0.5, 0.5, 8)?;
    let grid = SpaceTimeGrid::new(1, 0.5, 0.5, 0.05, 0.05)?;
    let profile = |t: f64, x: &[f64]| 1.0 + 0.5 * (3.0 * x[0] + t).sin();
    for a in [-1.0, 0.0, 2.5, 10.0] {
        let net = Net::from_fn(&ladder, grid, |e, t, x| e.powf(a) * profile(t, x));
        let r = ValuationReport::compute(&net, 1)?;
        println!(
            "eps^{a:<5}: nu_1 = {:.6} (stderr {:.1e}), class {}",
            r.estimate.slope,
            r.estimate.stderr,
            classify(&net)?.as_str()
        );
    }

    let u = Net::from_fn(&ladder, grid, |_, t, x| profile(t, x));
    let v = Net::from_fn(&ladder, grid, |e, t, x| profile(t, x) + e * x[0].cos());
    println!("d(U, U + eps cos x) = {:.6} (0.875 / e = {:.6})", ultra_metric(&u, &v, 3)?, 0.875 / 1f64.exp());

    let r = ValuationReport::compute(&v.sub(&u)?, 0)?;
    let mut csv = format!("{}\n", ValuationReport::CSV_HEADER).into_bytes();
    r.write_csv_rows(&mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    Ok(())
}
