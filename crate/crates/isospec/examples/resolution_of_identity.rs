//! Resolution of identity for the vector coherent states: the moment
//! problem for the weight, the frame operator F = ∫ dν |Ψ><Ψ| at positive
//! δ, the rank-two defect that appears at δ = 0, and the finite-Γ oracle
//! for the γ-average.
//!
//! ```bash
//! cargo run --example resolution_of_identity
//! ```

use isospec::fock::FockSpec;
use isospec::gk::{
    frame_operator_defect, moment_check, oracle_slope, FrameConfig, GKSpectrumData, MomentWeight,
};

fn main() -> Result<(), isospec::error::Error> {
    let data = GKSpectrumData::from_fock(&FockSpec::boson(2)?, 64)?;
    let weight = MomentWeight::exponential();

    // the exponential weight reproduces the factorial moments
    let errs = moment_check(&weight, &data, 15)?;
    println!("moment check for the exponential weight (n <= 15):");
    println!(
        "  worst relative error {:.3e}",
        errs.iter().fold(0.0f64, |m, e| m.max(*e))
    );

    for delta in [0.5, 1.0] {
        let res = frame_operator_defect(&FrameConfig::new(delta, 12), &data, &weight)?;
        println!(
            "frame defect |F - 1| at delta = {delta}: {:.3e} (12 levels per sector)",
            res.max_abs
        );
    }

    // at delta = 0 the gamma-average stops killing the (0,0) cross term
    let zero = frame_operator_defect(&FrameConfig::new(0.0, 12), &data, &weight)?;
    println!(
        "delta = 0: cross corner = {:.12}, everything else {:.3e}",
        zero.cross_corner,
        zero.max_abs_off_pattern()
    );

    // the finite-Gamma average leaks off-identity terms like 1/Gamma
    let cfg = FrameConfig::new(1.0, 12).with_oracle(vec![1e2, 1e3, 1e4]);
    let res = frame_operator_defect(&cfg, &data, &weight)?;
    println!("\nfinite-Gamma oracle (delta = 1):");
    for (g, leak) in &res.oracle {
        println!("  Gamma = {g:>8.0}: max off-identity leakage {leak:.3e}");
    }
    println!(
        "  log-log slope {:.3} (1/Gamma decay)",
        oracle_slope(&res.oracle)
    );
    Ok(())
}
