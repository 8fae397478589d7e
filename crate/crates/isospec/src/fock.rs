//! Concrete operators on truncated Fock space: bosonic and quonic ladder
//! operators, projector/shift intertwiners, and the small finite-matrix
//! examples.
//!
//! The quon family interpolates bosons and fermions through the q-mutator
//! a a† - q a†a = 1 with q in (-1, 1); its number operator has eigenvalues
//! given by the q-numbers α_n = 1 + q + ... + q^{n-1}.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::{EigenSystem, Operator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FockKind {
    Boson,
    Quon,
}

/// Which truncated Fock space to build ladder operators on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FockSpec {
    pub kind: FockKind,
    pub q: f64,
    pub dim: usize,
}

impl FockSpec {
    pub fn boson(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter {
                name: "dim".into(),
                requirement: "dim >= 2".into(),
            });
        }
        Ok(FockSpec {
            kind: FockKind::Boson,
            q: 1.0,
            dim,
        })
    }

    /// The boson is the q -> 1 limit; the quon family itself requires
    /// |q| < 1 strictly.
    pub fn quon(q: f64, dim: usize) -> Result<Self> {
        if !(q.is_finite() && q.abs() < 1.0) {
            return Err(Error::InvalidParameter {
                name: "q".into(),
                requirement: "|q| < 1 for the quon family".into(),
            });
        }
        if dim < 2 {
            return Err(Error::InvalidParameter {
                name: "dim".into(),
                requirement: "dim >= 2".into(),
            });
        }
        Ok(FockSpec {
            kind: FockKind::Quon,
            q,
            dim,
        })
    }
}

/// q-numbers α_n = 1 + q + ... + q^{n-1} and the ladder amplitudes
/// β_n = sqrt(α_{n+1}).
#[derive(Clone, Debug)]
pub struct QNumberTable {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl QNumberTable {
    /// Evaluated from the stable closed form (1 - q^n)/(1 - q) rather than
    /// by repeated summation; the two differ materially for q near -1.
    pub fn new(q: f64, len: usize) -> Self {
        let alpha: Vec<f64> = (0..len).map(|n| q_number(q, n)).collect();
        let beta: Vec<f64> = (0..len).map(|n| q_number(q, n + 1).sqrt()).collect();
        QNumberTable { alpha, beta }
    }
}

/// α_n for the given q; reduces to n at q = 1.
pub fn q_number(q: f64, n: usize) -> f64 {
    if q == 1.0 {
        n as f64
    } else {
        (1.0 - q.powi(n as i32)) / (1.0 - q)
    }
}

/// Annihilation and creation operators: a carries sqrt(α_n) on the
/// (n-1, n) superdiagonal, a† is its adjoint. Both have band 1 and satisfy
/// a a† - q a†a = 1 on interior margin 1.
pub fn build_ladder(spec: &FockSpec) -> (Operator, Operator) {
    let q = match spec.kind {
        FockKind::Boson => 1.0,
        FockKind::Quon => spec.q,
    };
    let a = Operator::from_fn(spec.dim, |i, j| {
        if j == i + 1 {
            C64::new(q_number(q, j).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let a_dagger = a.adjoint();
    (a, a_dagger)
}

/// a†a; diagonal equals α_n exactly away from the truncation corner.
pub fn number_operator(spec: &FockSpec) -> Operator {
    let (a, a_dagger) = build_ladder(spec);
    a_dagger.multiply(&a).expect("equal dims by construction")
}

/// Shift intertwiner built on an eigenbasis: x = Σ_l |φ_{l+step}><φ_l|
/// over every representable l. Its x†x is the projector onto the retained
/// span and x x† misses the lowest `step` projectors.
pub fn build_shift_intertwiner(es: &EigenSystem, step: usize) -> Result<Operator> {
    let d = es.source_dim();
    if step == 0 || step >= d {
        return Err(Error::InvalidParameter {
            name: "step".into(),
            requirement: format!("0 < step < dim = {d}"),
        });
    }
    let mut m = DMatrix::<C64>::zeros(d, d);
    for l in 0..=(d - 1 - step) {
        let lo = es.vector(l);
        let hi = es.vector(l + step);
        m += hi * lo.adjoint();
    }
    Ok(Operator::from_matrix(m))
}

/// The small closed-form examples on two- and three-dimensional spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteExampleName {
    Ex4Diag,
    Ex4Phase,
    Ex5Angular,
}

#[derive(Clone, Copy, Debug)]
pub struct Ex4Params {
    pub a: f64,
    pub b: f64,
    pub c: C64,
    pub alpha: C64,
    pub beta: C64,
}

#[derive(Clone, Copy, Debug)]
pub struct Ex5Params {
    /// Real scale of the intertwiner; x₁ is self-adjoint because of it.
    pub alpha: f64,
    pub hbar: f64,
}

#[derive(Clone, Copy, Debug)]
pub enum FiniteExampleParams {
    Ex4(Ex4Params),
    Ex5(Ex5Params),
}

/// Returns (h1, x1) for the named finite example, rejecting parameters
/// that violate the admissibility condition of the construction.
pub fn finite_example(
    name: FiniteExampleName,
    params: &FiniteExampleParams,
) -> Result<(Operator, Operator)> {
    match (name, params) {
        (FiniteExampleName::Ex4Diag, FiniteExampleParams::Ex4(p)) => {
            validate_ex4(p)?;
            if p.c.norm() > 1e-12 * scale_ex4(p) {
                return Err(Error::InvalidParameter {
                    name: "c".into(),
                    requirement: "c = 0 for the diagonal branch".into(),
                });
            }
            Ok(ex4_matrices(p))
        }
        (FiniteExampleName::Ex4Phase, FiniteExampleParams::Ex4(p)) => {
            validate_ex4(p)?;
            Ok(ex4_matrices(p))
        }
        (FiniteExampleName::Ex5Angular, FiniteExampleParams::Ex5(p)) => {
            if !(p.alpha.is_finite() && p.alpha != 0.0) {
                return Err(Error::InvalidParameter {
                    name: "alpha".into(),
                    requirement: "a nonzero real scale".into(),
                });
            }
            if !(p.hbar.is_finite() && p.hbar > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "hbar".into(),
                    requirement: "a positive scale".into(),
                });
            }
            Ok(ex5_matrices(p))
        }
        _ => Err(Error::InvalidParameter {
            name: "params".into(),
            requirement: "parameter block matching the example name".into(),
        }),
    }
}

fn scale_ex4(p: &Ex4Params) -> f64 {
    p.a.abs()
        .max(p.b.abs())
        .max(p.c.norm())
        .max(p.alpha.norm())
        .max(p.beta.norm())
        .max(1.0)
}

fn validate_ex4(p: &Ex4Params) -> Result<()> {
    if p.alpha.norm() == 0.0 || p.beta.norm() == 0.0 {
        return Err(Error::InvalidParameter {
            name: "alpha, beta".into(),
            requirement: "both nonzero, otherwise N1 is not invertible".into(),
        });
    }
    let c_zero = p.c.norm() <= 1e-12 * scale_ex4(p);
    let moduli_match = (p.alpha.norm() - p.beta.norm()).abs() <= 1e-12 * scale_ex4(p);
    if !(c_zero || moduli_match) {
        return Err(Error::InvalidParameter {
            name: "c, alpha, beta".into(),
            requirement: "c = 0 or |alpha| = |beta|, otherwise [x1 x1\u{2020}, h1] != 0".into(),
        });
    }
    Ok(())
}

fn ex4_matrices(p: &Ex4Params) -> (Operator, Operator) {
    let zero = C64::new(0.0, 0.0);
    let h1 = Operator::from_matrix_dense(DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(p.a, 0.0), p.c, p.c.conj(), C64::new(p.b, 0.0)],
    ));
    let x1 = Operator::from_matrix_dense(DMatrix::from_row_slice(
        2,
        2,
        &[zero, p.alpha, p.beta, zero],
    ));
    (h1, x1)
}

/// Closed-form partner for either admissible branch:
/// [[b, c̄ e^{i(φα-φβ)}], [c e^{-i(φα-φβ)}, a]]; at c = 0 this is diag(b, a).
pub fn ex4_expected_h2(p: &Ex4Params) -> Operator {
    let phase = if p.c.norm() == 0.0 {
        C64::new(1.0, 0.0)
    } else {
        let delta = p.alpha.arg() - p.beta.arg();
        C64::from_polar(1.0, delta)
    };
    Operator::from_matrix_dense(DMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new(p.b, 0.0),
            p.c.conj() * phase,
            p.c * phase.conj(),
            C64::new(p.a, 0.0),
        ],
    ))
}

fn ex5_matrices(p: &Ex5Params) -> (Operator, Operator) {
    let s = p.hbar / 2.0f64.sqrt();
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let h1 = Operator::from_matrix_dense(DMatrix::from_row_slice(
        3,
        3,
        &[
            zero,
            C64::new(s, 0.0),
            zero,
            C64::new(s, 0.0),
            zero,
            C64::new(s, 0.0),
            zero,
            C64::new(s, 0.0),
            zero,
        ],
    ));
    let al = C64::new(p.alpha, 0.0);
    let x1 = Operator::from_matrix_dense(DMatrix::from_row_slice(
        3,
        3,
        &[
            zero,
            al * C64::i(),
            zero,
            -al * C64::i(),
            zero,
            zero,
            zero,
            zero,
            al * one,
        ],
    ));
    (h1, x1)
}

/// Closed-form partner of the angular-momentum triad; independent of the
/// intertwiner scale because N1 = α²·1 cancels.
pub fn ex5_expected_h2(p: &Ex5Params) -> Operator {
    let s = p.hbar / 2.0f64.sqrt();
    let zero = C64::new(0.0, 0.0);
    Operator::from_matrix_dense(DMatrix::from_row_slice(
        3,
        3,
        &[
            zero,
            C64::new(-s, 0.0),
            C64::new(0.0, s),
            C64::new(-s, 0.0),
            zero,
            zero,
            C64::new(0.0, -s),
            zero,
            zero,
        ],
    ))
}

/// n-th normalized Fock vector built the slow way: (β1...β_{n-1})^{-1}
/// (a†)^n applied to the vacuum. Agrees with the n-th basis column.
pub fn fock_vector_from_ladder(spec: &FockSpec, n: usize) -> nalgebra::DVector<C64> {
    assert!(n < spec.dim);
    let (_, a_dagger) = build_ladder(spec);
    let table = QNumberTable::new(
        match spec.kind {
            FockKind::Boson => 1.0,
            FockKind::Quon => spec.q,
        },
        n + 1,
    );
    let mut v = nalgebra::DVector::<C64>::zeros(spec.dim);
    v[0] = C64::new(1.0, 0.0);
    for _ in 0..n {
        v = a_dagger.matrix() * v;
    }
    let mut norm = 1.0;
    for k in 1..n {
        norm *= table.beta[k];
    }
    if n >= 1 {
        // β0 = 1 for every q, kept explicit for clarity
        norm *= table.beta[0];
    }
    v / C64::new(norm, 0.0)
}
