//! One application of the fixed-point map to `U` and to a perturbed `V`:
//! every valuation of the difference grows by about `b`.
//!
//! `cargo run --release --example contraction`

use colwave::linwave::QuadratureSpec;
use colwave::nets::Nonlinearity;
use colwave::semilinear::IterationControl;
use colwave::suite::presets;
use colwave::verify::check_contraction;

fn main() -> colwave::Result<()> {
    for b in [0.5, 1.0, 2.0] {
        let problem = presets::bump_1d(b).with_nonlinearity(Nonlinearity::Sine);
        let r = check_contraction(
            &problem,
            &presets::ladder(),
            &presets::grid_1d(0.02),
            &QuadratureSpec::default(),
            &IterationControl::default(),
            0.1,
        )?;
        let gaps: Vec<String> = r.gaps.iter().map(|g| format!("{g:.4}")).collect();
        println!(
            "b = {b}: gaps [{}], d(FU, FV) / d(U, V) = {:.4}, exp(-b) = {:.4}, ok {}",
            gaps.join(", "),
            r.metric_ratio,
            r.kappa_bound,
            r.ok && r.metric_ok
        );
    }
    Ok(())
}
