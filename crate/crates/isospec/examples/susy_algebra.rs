//! The block superalgebra of the factorized pair: H = diag(A†A, AA†),
//! Q = [[0,0],[A,0]] satisfy [H,Q] = [H,Q†] = 0, Q² = 0, {Q,Q†} = H.
//! Away from the factorized case the algebra does not hold and the
//! builder refuses rather than reporting garbage.
//!
//! ```bash
//! cargo run --example susy_algebra
//! ```

use isospec::fock::{build_ladder, number_operator, FockSpec};
use isospec::intertwine::{
    build_susy_algebra, construct_partner, construction_margin, KernelPolicy, Tolerances,
};
use isospec::operator::InteriorSpec;

fn main() -> Result<(), isospec::error::Error> {
    let dim = 30;
    let spec = FockSpec::boson(dim)?;
    let (a, ad) = build_ladder(&spec);
    let h1 = ad.multiply(&a)?;
    let h2 = a.multiply(&ad)?;

    let algebra = build_susy_algebra(&h1, &h2, &a, InteriorSpec::new(2))?;
    println!("factorized pair at dimension {dim}:");
    println!("  |[H, Q]|      = {:.3e}", algebra.r_comm_hq);
    println!("  |[H, Q†]|     = {:.3e}", algebra.r_comm_hqdag);
    println!("  |Q^2|         = {:.3e}", algebra.r_q_squared);
    println!("  |{{Q,Q†}} - H|  = {:.3e}", algebra.r_anticommutator);
    println!("  block operators live on dimension {}", algebra.h.dim());

    // a generic intertwined pair is not factorized: refused, not failed
    let x2 = ad.multiply(&ad)?;
    let pair = construct_partner(
        &number_operator(&spec),
        &x2,
        InteriorSpec::new(construction_margin(&x2, &h1)),
        &Tolerances::default(),
        KernelPolicy::Refuse,
    )?;
    match build_susy_algebra(&pair.h1, &pair.h2, &pair.x1, pair.interior) {
        Err(e) => println!("\nnon-factorized pair: {e}"),
        Ok(_) => unreachable!("the factorization check must reject this pair"),
    }
    Ok(())
}
