//! The block operator X = L + L† built from the intertwiner, and its
//! closed relations with the coherent states: a constant amplitude
//! pattern mirrors the state parameters, the eigenvalue pattern brings in
//! the adjoint ladder, and a generic intertwiner admits no closed
//! relation.
//!
//! ```bash
//! cargo run --example x_operator
//! ```

use isospec::fock::{
    build_ladder, finite_example, number_operator, Ex5Params, FiniteExampleName,
    FiniteExampleParams, FockSpec,
};
use isospec::gk::{
    build_x_operator, check_x_relations, synthesize_vector_cs, GKSpectrumData, VectorCSParams,
};
use isospec::intertwine::{construct_partner, KernelPolicy, Tolerances};
use isospec::operator::{InteriorSpec, Operator};

fn main() -> Result<(), isospec::error::Error> {
    // scaled-unitary intertwiner: every amplitude equals the scale
    let p = Ex5Params {
        alpha: 2.0f64.sqrt(),
        hbar: 1.0,
    };
    let (h1, x1) = finite_example(FiniteExampleName::Ex5Angular, &FiniteExampleParams::Ex5(p))?;
    let pair = construct_partner(
        &h1,
        &x1,
        InteriorSpec::full(),
        &Tolerances::default(),
        KernelPolicy::Refuse,
    )?;
    let es1 = h1.hermitian_eigensystem()?;
    let es2 = pair.h2.hermitian_eigensystem()?;
    let xdata = build_x_operator(&x1, &es1, &es2, 3)?;
    println!("scaled-unitary intertwiner: amplitudes {:?}", xdata.alpha1);
    let data = GKSpectrumData::from_eigensystem(&es1)?;
    let mut params = VectorCSParams::new(0.7, 1.1, 0.9, 1.0);
    params.n_max = Some(2);
    let state = synthesize_vector_cs(&params, &data)?;
    let rel = check_x_relations(&xdata, &state, &data)?;
    println!(
        "  case {:?}: |X Psi(J,g) - alpha Psi(J-swapped,-g)| = {:.3e}\n",
        rel.case,
        rel.residual.unwrap()
    );

    // amplitudes equal to the spectrum: the relation goes through the
    // adjoint ladder operator
    let d = 64;
    let diag: Vec<f64> = (0..d).map(|n| n as f64).collect();
    let hx = Operator::from_real_diagonal(&diag);
    let xx = Operator::from_real_diagonal(&diag);
    let es = hx.hermitian_eigensystem()?;
    let xdata = build_x_operator(&xx, &es, &es, d)?;
    let boson = GKSpectrumData::from_fock(&FockSpec::boson(2)?, d)?;
    let state = synthesize_vector_cs(&VectorCSParams::new(1.0, 2.5, 0.8, 1.0), &boson)?;
    let rel = check_x_relations(&xdata, &state, &boson)?;
    println!(
        "eigenvalue amplitudes: case {:?}, residual {:.3e}\n",
        rel.case,
        rel.residual.unwrap()
    );

    // generic amplitudes: classification is the result
    let spec = FockSpec::boson(32)?;
    let hg = number_operator(&spec);
    let esg = hg.hermitian_eigensystem()?;
    let (_, adg) = build_ladder(&spec);
    let generic = adg.multiply(&adg)?;
    let xdata = build_x_operator(&generic, &esg, &esg, 24)?;
    let mut short = VectorCSParams::new(1.0, 1.0, 0.3, 1.0);
    short.n_max = Some(20);
    let state = synthesize_vector_cs(&short, &boson)?;
    let rel = check_x_relations(&xdata, &state, &boson)?;
    println!(
        "generic intertwiner: case {:?} (alpha spread {:.3}, spectrum mismatch {:.3})",
        rel.case, rel.alpha_spread, rel.eps_mismatch
    );
    Ok(())
}
