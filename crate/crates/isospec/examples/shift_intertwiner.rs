//! The projector-shift intertwiner: x = Σ |φ_{l+1}><φ_l| drops the lowest
//! level from the spectrum.
//!
//! ```bash
//! cargo run --example shift_intertwiner
//! ```

use isospec::fock::{build_shift_intertwiner, number_operator, FockSpec};
use isospec::intertwine::{
    construct_partner, construction_margin, map_eigenvectors, KernelPolicy, Tolerances,
};
use isospec::operator::{InteriorSpec, Operator};

fn main() -> Result<(), isospec::error::Error> {
    let dim = 12;
    let spec = FockSpec::boson(dim)?;
    let h1 = number_operator(&spec);
    let es = h1.hermitian_eigensystem()?;

    for step in [1usize, 2] {
        let x = build_shift_intertwiner(&es, step)?;
        println!("step {step}:");
        // x†x is the identity on the retained span
        let n1 = x.adjoint().multiply(&x)?;
        let dev = n1
            .sub(&Operator::identity(dim))?
            .interior_norm(InteriorSpec::new(step));
        println!("  |x†x - 1| on the retained span: {:.3e}", dev);

        let margin = construction_margin(&x, &h1);
        let pair = construct_partner(
            &h1,
            &x,
            InteriorSpec::new(margin),
            &Tolerances::default(),
            KernelPolicy::Refuse,
        )?;
        let mapped = map_eigenvectors(&x, &es, 1e-8);
        let annihilated: Vec<usize> = mapped
            .iter()
            .filter(|m| m.annihilated)
            .map(|m| m.n)
            .collect();
        println!("  annihilated levels: {annihilated:?}");
        println!(
            "  partner spectrum starts at eps_{step}; first diagonal entries: {:?}",
            (0..4).map(|n| pair.h2.entry(n, n).re).collect::<Vec<_>>()
        );
        println!(
            "  worst isospectrality residual: {:.3e}",
            pair.report.gamma_max_rel
        );
    }
    Ok(())
}
