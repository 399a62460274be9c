//! Running configured checks from a JSON experiment file, as `colwave check`
//! does.
//!
//! `cargo run --release --example config_checks -- configs/linear_1d.json`

use colwave::config::ExperimentConfig;
use colwave::experiment::run_check;

fn main() -> colwave::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/linear_1d.json").into());
    let cfg = ExperimentConfig::load(path.as_ref())?;
    println!("{} checks on a {}D problem", cfg.checks.len(), cfg.problem.dim);
    for &kind in &cfg.checks {
        let o = run_check(&cfg, kind)?;
        println!("{}", o.summary.line());
        print!("{}", o.table);
    }
    Ok(())
}
