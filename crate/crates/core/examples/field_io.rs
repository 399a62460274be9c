//! Exporting a solution: plot-ready CSV and the binary dump, read back.
//!
//! `cargo run --release --example field_io -- [DIR]`

use std::path::PathBuf;

use colwave::io::{load_field_binary, save_field_binary, save_field_csv};
use colwave::linwave::QuadratureSpec;
use colwave::semilinear::picard_solve;
use colwave::suite::presets;

fn main() -> colwave::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    let grid = presets::grid_1d(0.05);
    let (u, _) = picard_solve(&presets::bump_1d(1.0), 0.25, &grid, &QuadratureSpec::default(), 1e-10, 50)?;
    let csv = dir.join("bump_1d.csv");
    let bin = dir.join("bump_1d.bin");
    save_field_csv(&u, &csv)?;
    save_field_binary(&u, &bin)?;
    let back = load_field_binary(&bin)?;
    println!("wrote {} and {}", csv.display(), bin.display());
    println!("{} samples, identical after reload: {}", back.samples().len(), back.samples() == u.samples());
    Ok(())
}
