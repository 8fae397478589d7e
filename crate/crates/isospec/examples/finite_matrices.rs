//! The small closed-form examples on two- and three-dimensional spaces,
//! including the parameter constraint that makes the construction refuse.
//!
//! ```bash
//! cargo run --example finite_matrices
//! ```

use num_complex::Complex64 as C64;

use isospec::fock::{
    ex4_expected_h2, ex5_expected_h2, finite_example, Ex4Params, Ex5Params, FiniteExampleName,
    FiniteExampleParams,
};
use isospec::intertwine::{construct_partner, KernelPolicy, Tolerances};
use isospec::operator::InteriorSpec;

fn main() -> Result<(), isospec::error::Error> {
    let tol = Tolerances::default();

    // two-level, diagonal branch: the partner swaps the eigenvalues
    let diag = Ex4Params {
        a: 1.0,
        b: 3.0,
        c: C64::new(0.0, 0.0),
        alpha: C64::new(1.0, 0.0),
        beta: C64::new(1.0, 0.0),
    };
    let (h1, x1) = finite_example(FiniteExampleName::Ex4Diag, &FiniteExampleParams::Ex4(diag))?;
    let pair = construct_partner(&h1, &x1, InteriorSpec::full(), &tol, KernelPolicy::Refuse)?;
    println!("two-level diagonal: h1 = diag(1, 3) maps to");
    println!(
        "  h2 = diag({}, {})   (closed-form agreement {:.1e})",
        pair.h2.entry(0, 0).re,
        pair.h2.entry(1, 1).re,
        pair.h2.sub(&ex4_expected_h2(&diag))?.frobenius_norm()
    );

    // two-level, off-diagonal branch: |alpha| = |beta| carries a phase
    let phase = Ex4Params {
        a: 0.0,
        b: 0.0,
        c: C64::new(1.0, 0.0),
        alpha: C64::new(1.0, 0.0),
        beta: C64::new(0.0, 1.0),
    };
    let (h1, x1) = finite_example(
        FiniteExampleName::Ex4Phase,
        &FiniteExampleParams::Ex4(phase),
    )?;
    let pair = construct_partner(&h1, &x1, InteriorSpec::full(), &tol, KernelPolicy::Refuse)?;
    println!("\ntwo-level phase branch: h2 =");
    for i in 0..2 {
        println!(
            "  [{:+.3}{:+.3}i, {:+.3}{:+.3}i]",
            pair.h2.entry(i, 0).re,
            pair.h2.entry(i, 0).im,
            pair.h2.entry(i, 1).re,
            pair.h2.entry(i, 1).im
        );
    }
    println!(
        "  closed-form agreement {:.1e}",
        pair.h2.sub(&ex4_expected_h2(&phase))?.frobenius_norm()
    );

    // inadmissible parameters are refused, naming the condition
    let bad = Ex4Params {
        c: C64::new(0.5, 0.0),
        beta: C64::new(2.0, 0.0),
        ..diag
    };
    match finite_example(FiniteExampleName::Ex4Phase, &FiniteExampleParams::Ex4(bad)) {
        Err(e) => println!("\ninadmissible parameters: {e}"),
        Ok(_) => unreachable!("the constraint must reject c != 0 with |alpha| != |beta|"),
    }

    // the angular-momentum triad with its self-adjoint intertwiner
    let p5 = Ex5Params {
        alpha: 2.0f64.sqrt(),
        hbar: 1.0,
    };
    let (h1, x1) = finite_example(FiniteExampleName::Ex5Angular, &FiniteExampleParams::Ex5(p5))?;
    let pair = construct_partner(&h1, &x1, InteriorSpec::full(), &tol, KernelPolicy::Refuse)?;
    println!("\nangular-momentum triad: h2 =");
    for i in 0..3 {
        let row: Vec<String> = (0..3)
            .map(|j| {
                let z = pair.h2.entry(i, j);
                format!("{:+.3}{:+.3}i", z.re, z.im)
            })
            .collect();
        println!("  [{}]", row.join(", "));
    }
    println!(
        "  closed-form agreement {:.1e}",
        pair.h2.sub(&ex5_expected_h2(&p5))?.frobenius_norm()
    );
    let es = h1.hermitian_eigensystem()?;
    let es2 = pair.h2.hermitian_eigensystem()?;
    println!("  spectrum of h1: {:?}", es.values());
    println!("  spectrum of h2: {:?}", es2.values());
    Ok(())
}
