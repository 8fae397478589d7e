//! Chains of partners over the q-deformed oscillator: the lowering branch
//! folds back onto the seed Hamiltonian (the chain is cyclic), while the
//! raising branch keeps producing new members whose closed forms are
//! geometric in q.
//!
//! ```bash
//! cargo run --example quon_chain
//! ```

use num_complex::Complex64 as C64;

use isospec::fock::{build_ladder, number_operator, FockSpec};
use isospec::intertwine::{
    construct_partner, construction_margin, extend_chain, HamiltonianChain, KernelPolicy,
    Tolerances,
};
use isospec::operator::{InteriorSpec, Operator};

fn main() -> Result<(), isospec::error::Error> {
    let q = 0.5;
    let dim = 40;
    let spec = FockSpec::quon(q, dim)?;
    let (a, a_dag) = build_ladder(&spec);
    let h1 = number_operator(&spec);
    let x_raise = a_dag.multiply(&a_dag)?;
    let x_lower = a.multiply(&a)?;
    let tol = Tolerances::default();

    println!("quon q = {q}: a a† - q a†a = 1");
    println!(
        "number eigenvalues follow (1 - q^n)/(1 - q): {:?}",
        (0..5).map(|n| h1.entry(n, n).re).collect::<Vec<_>>()
    );

    let margin = construction_margin(&x_raise, &h1);
    let first = construct_partner(
        &h1,
        &x_raise,
        InteriorSpec::new(margin),
        &tol,
        KernelPolicy::Refuse,
    )?;
    let id = Operator::identity(dim);
    let h2_closed = id
        .scale(C64::new(1.0 + q, 0.0))
        .add(&h1.scale(C64::new(q * q, 0.0)))?;
    println!(
        "\nlink 1 (x = (a†)^2): |h2 - ((1+q) + q^2 a†a)| = {:.3e}",
        first
            .h2
            .sub(&h2_closed)?
            .interior_norm(InteriorSpec::new(margin))
    );
    let chain = HamiltonianChain::start(first);

    // lowering branch: a^2 annihilates the two lowest levels; the solve
    // deflates that kernel and the result reproduces h1 exactly
    let cyclic = extend_chain(&chain, &x_lower, &tol)?;
    println!(
        "lowering branch: cyclic_at = {:?} (0 means the seed h1), deflated {} directions",
        cyclic.cyclic_at(),
        cyclic.links()[1].report.deflated
    );

    // raising branch: two closed forms of the same operator, then a
    // genuinely new chain member
    let chain = extend_chain(&chain, &x_raise, &tol)?;
    let aad = a.multiply(&a_dag)?;
    let h3_closed = id
        .scale(C64::new(1.0 + q + q * q, 0.0))
        .add(&aad.scale(C64::new(q.powi(3), 0.0)))?;
    let h3_rewritten = id
        .scale(C64::new(1.0 + q + q * q + q.powi(3), 0.0))
        .add(&h1.scale(C64::new(q.powi(4), 0.0)))?;
    let m = InteriorSpec::new(chain.links()[1].check_margin());
    println!("\nraising branch (cyclic_at = {:?}):", chain.cyclic_at());
    println!(
        "  |h3 - ((1+q+q^2) + q^3 a a†)|       = {:.3e}",
        chain.links()[1].h2.sub(&h3_closed)?.interior_norm(m)
    );
    println!(
        "  |h3 - ((1+q+q^2+q^3) + q^4 a†a)|    = {:.3e}   (same operator, q-mutator rewrite)",
        chain.links()[1].h2.sub(&h3_rewritten)?.interior_norm(m)
    );

    let chain = extend_chain(&chain, &x_raise, &tol)?;
    let geo5: f64 = (0..5).map(|k| q.powi(k)).sum();
    let h4_closed = id
        .scale(C64::new(geo5, 0.0))
        .add(&aad.scale(C64::new(q.powi(5), 0.0)))?;
    let m4 = InteriorSpec::new(chain.links()[2].check_margin());
    println!(
        "  next member: |h4 - ((1+...+q^4) + q^5 a a†)| = {:.3e}",
        chain.links()[2].h2.sub(&h4_closed)?.interior_norm(m4)
    );

    // and lowering from there folds back to the second member
    let folded = extend_chain(&chain, &x_lower, &tol)?;
    println!(
        "  lowering again: cyclic_at = {:?} (the chain revisits h3)",
        folded.cyclic_at()
    );
    Ok(())
}
