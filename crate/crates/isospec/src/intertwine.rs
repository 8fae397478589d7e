//! The partner construction: given a Hermitian h1 and an operator x1 with
//! [x1 x1†, h1] = 0 and invertible N1 = x1†x1, build
//! h2 = N1^{-1}(x1† h1 x1), verify that it is Hermitian, weakly
//! intertwined and isospectral with h1, map eigenvectors both ways, and
//! iterate the construction into chains.
//!
//! All identity checks are truncation-aware: products of banded operators
//! corrupt a boundary strip of predictable width, so every residual is
//! taken on an interior block whose margin follows from the band
//! bookkeeping of the factors involved.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::operator::{EigenSystem, InteriorSpec, Operator, HERMITICITY_TOL};

/// Property \[α\]: ||h2 - h2†|| < 1e-10 ||h2||_F.
pub const ALPHA_REL_BOUND: f64 = 1e-10;
/// Property \[β\]: interior ||x1†(x1 h2 - h1 x1)|| < 1e-9 ||h1||_F ||x1||_F.
pub const BETA_REL_BOUND: f64 = 1e-9;
/// Property \[γ\]: surviving eigen-residuals < 1e-8 relative to the
/// spectral scale.
pub const GAMMA_REL_BOUND: f64 = 1e-8;

/// Numerical meanings of the construction hypotheses.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Gate on the commutant residual, relative to ||h1||_F ||x1||_F^2.
    pub commutant_rel: f64,
    /// N1 counts as invertible when its smallest trusted-block singular
    /// value exceeds this times the spectral norm.
    pub invert_rel: f64,
    /// Mapped vectors with norm below this times the largest mapped norm
    /// count as annihilated.
    pub vanish_rel: f64,
    /// Interior Frobenius distance (relative) below which a chain link
    /// matches an earlier Hamiltonian.
    pub cyclic_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            commutant_rel: 1e-10,
            invert_rel: 1e-8,
            vanish_rel: 1e-8,
            cyclic_rel: 1e-10,
        }
    }
}

/// What to do when N1 has a kernel on the trusted block.
///
/// `Refuse` is the default: without an invertible N1 the partner is not
/// defined. `DeflateConsistent` accepts the one benign case: ker(N1) =
/// ker(x1), with the right-hand side x1† h1 x1 vanishing identically on
/// the kernel, so the division is exact on the orthogonal complement and
/// nothing is approximated. Chains use it because repeated annihilation
/// genuinely produces such kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelPolicy {
    Refuse,
    DeflateConsistent,
}

/// Margin for identities involving x† h x style products: two x factors
/// plus one h factor worth of boundary corruption.
pub fn construction_margin(x: &Operator, h: &Operator) -> usize {
    2 * x.band().margin_contribution() + h.band().margin_contribution()
}

/// Outcome of testing the two hypotheses on (h1, x1).
#[derive(Clone, Copy, Debug)]
pub struct HypothesisCheck {
    pub r_commutant: f64,
    pub r_commutant_rel: f64,
    pub n1_min_singular: f64,
    pub n1_spectral_norm: f64,
}

/// Interior commutant residual of [x1 x1†, h1] and the extreme singular
/// values of N1 on the trusted block. Gating is the caller's job.
pub fn check_hypotheses(
    h1: &Operator,
    x1: &Operator,
    interior: InteriorSpec,
) -> Result<HypothesisCheck> {
    h1.require_hermitian(HERMITICITY_TOL)?;
    if h1.dim() != x1.dim() {
        return Err(Error::DimensionMismatch {
            op: "check_hypotheses",
            left: h1.dim(),
            right: x1.dim(),
        });
    }
    let xxd = x1.multiply(&x1.adjoint())?;
    let r_commutant = xxd.commutator(h1)?.interior_norm(interior);
    let scale = commutant_scale(h1, x1);
    let n1 = x1.adjoint().multiply(x1)?;
    let block = trusted_block(&n1, interior);
    let eigs = nalgebra::linalg::SymmetricEigen::new(block).eigenvalues;
    let n1_min_singular = eigs.iter().fold(f64::INFINITY, |m, l| m.min(l.abs()));
    let n1_spectral_norm = eigs.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    Ok(HypothesisCheck {
        r_commutant,
        r_commutant_rel: r_commutant / scale,
        n1_min_singular,
        n1_spectral_norm,
    })
}

fn commutant_scale(h1: &Operator, x1: &Operator) -> f64 {
    let s = h1.frobenius_norm() * x1.frobenius_norm() * x1.frobenius_norm();
    if s == 0.0 {
        1.0
    } else {
        s
    }
}

fn trusted_block(op: &Operator, interior: InteriorSpec) -> DMatrix<C64> {
    let size = op.dim().saturating_sub(interior.margin).max(1);
    op.matrix().view((0, 0), (size, size)).into_owned()
}

/// One surviving (or annihilated) image of an h1 eigenvector under x1†.
#[derive(Clone, Debug)]
pub struct MappedVector {
    pub n: usize,
    pub eps: f64,
    pub vector: DVector<C64>,
    pub norm: f64,
    pub annihilated: bool,
}

/// φ_n^(2) = x1† φ̂_n^(1) for every n, with norms; vectors whose norm falls
/// below `vanish_rel` times the largest are flagged annihilated and take
/// no part in the isospectrality checks.
pub fn map_eigenvectors(x1: &Operator, es1: &EigenSystem, vanish_rel: f64) -> Vec<MappedVector> {
    // one batched product instead of a matvec per level
    let all = x1.adjoint().matrix() * es1.vectors();
    let mut mapped: Vec<MappedVector> = (0..es1.len())
        .map(|n| {
            let v = all.column(n).into_owned();
            let norm = v.norm();
            MappedVector {
                n,
                eps: es1.value(n),
                vector: v,
                norm,
                annihilated: false,
            }
        })
        .collect();
    let max_norm = mapped.iter().fold(0.0f64, |m, r| m.max(r.norm));
    for r in mapped.iter_mut() {
        r.annihilated = r.norm < vanish_rel * max_norm || max_norm == 0.0;
    }
    mapped
}

/// Isospectrality record for one surviving mapped vector.
#[derive(Clone, Copy, Debug)]
pub struct GammaRecord {
    pub n: usize,
    pub eps: f64,
    pub mapped_norm: f64,
    /// ||h2 φ - ε φ|| / ||φ|| restricted to interior components.
    pub residual: f64,
}

/// Residuals of h2 φ_n^(2) = ε_n φ_n^(2) for the surviving vectors,
/// restricted to the components the truncation leaves trustworthy.
pub fn verify_gamma(
    h2: &Operator,
    mapped: &[MappedVector],
    component_margin: usize,
) -> Vec<GammaRecord> {
    let d = h2.dim();
    let keep = d.saturating_sub(component_margin);
    let surviving: Vec<&MappedVector> = mapped.iter().filter(|m| !m.annihilated).collect();
    if surviving.is_empty() {
        return vec![];
    }
    // batch all surviving vectors into one product
    let mut cols = DMatrix::<C64>::zeros(d, surviving.len());
    for (slot, m) in surviving.iter().enumerate() {
        cols.set_column(slot, &m.vector);
    }
    let acted = h2.matrix() * &cols;
    surviving
        .iter()
        .enumerate()
        .map(|(slot, m)| {
            let mut sq = 0.0f64;
            for i in 0..keep {
                sq += (acted[(i, slot)] - C64::new(m.eps, 0.0) * m.vector[i]).norm_sqr();
            }
            GammaRecord {
                n: m.n,
                eps: m.eps,
                mapped_norm: m.norm,
                residual: sq.sqrt() / m.norm,
            }
        })
        .collect()
}

/// The verified residual set of a constructed pair. Field names are the
/// wire names of the JSON report.
#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub r_commutant: f64,
    pub r_commutant_rel: f64,
    pub r_alpha: f64,
    pub r_alpha_rel: f64,
    pub r_beta: f64,
    pub r_beta_rel: f64,
    pub r_beta_strong: f64,
    pub n1_min_singular: f64,
    pub n1_spectral_norm: f64,
    pub deflated: usize,
    pub gamma: Vec<GammaRecord>,
    pub gamma_max_rel: f64,
    pub tolerances: Tolerances,
    pub pass_alpha: bool,
    pub pass_beta: bool,
    pub pass_gamma: bool,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.pass_alpha && self.pass_beta && self.pass_gamma
    }
}

/// A constructed (h1, x1, N1, h2) quadruple with its verification report.
#[derive(Clone, Debug)]
pub struct IntertwinedPair {
    pub h1: Operator,
    pub x1: Operator,
    pub n1: Operator,
    pub h2: Operator,
    pub interior: InteriorSpec,
    pub report: PropertyReport,
    /// Projector onto the retained subspace when the solve deflated a
    /// kernel; identities downstream are asserted under this mask.
    pub retained_projector: Option<Operator>,
}

impl IntertwinedPair {
    /// Margin for checks that apply h2 once more (γ records, closed-form
    /// comparisons): the construction margin plus one x1 and one h1 band.
    pub fn check_margin(&self) -> usize {
        self.interior.margin
            + self.x1.band().margin_contribution()
            + self.h1.band().margin_contribution()
    }
}

struct SpectralSolve {
    solution: DMatrix<C64>,
    min_retained: f64,
    spectral_norm: f64,
    deflated: usize,
    retained_projector: Option<DMatrix<C64>>,
}

/// Solve N·X = R through the spectral decomposition of the Hermitian N,
/// optionally deflating an exactly consistent kernel.
fn spectral_solve(
    n_block: &DMatrix<C64>,
    rhs_block: &DMatrix<C64>,
    invert_rel: f64,
    policy: KernelPolicy,
) -> Result<SpectralSolve> {
    let se = nalgebra::linalg::SymmetricEigen::new(n_block.clone());
    let spectral_norm = se.eigenvalues.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let threshold = invert_rel * spectral_norm;
    let retained: Vec<usize> = (0..se.eigenvalues.len())
        .filter(|&i| se.eigenvalues[i] > threshold)
        .collect();
    let deflated = se.eigenvalues.len() - retained.len();
    let min_all = se
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |m, l| m.min(l.abs()));

    if deflated > 0 {
        if policy == KernelPolicy::Refuse || spectral_norm == 0.0 {
            return Err(Error::SingularN1 {
                min_singular: min_all,
                bound: threshold,
            });
        }
        // consistency: the right-hand side must vanish on the kernel
        let mut kernel_proj = DMatrix::<C64>::zeros(n_block.nrows(), n_block.ncols());
        for i in 0..se.eigenvalues.len() {
            if !retained.contains(&i) {
                let v = se.eigenvectors.column(i);
                kernel_proj += v * v.adjoint();
            }
        }
        let rhs_scale = rhs_block.norm().max(1.0);
        let leakage = (&kernel_proj * rhs_block)
            .norm()
            .max((rhs_block * &kernel_proj).norm())
            / rhs_scale;
        if leakage > 1e-10 {
            return Err(Error::InconsistentKernel { leakage });
        }
        let mut solution = DMatrix::<C64>::zeros(n_block.nrows(), n_block.ncols());
        for &i in &retained {
            let v = se.eigenvectors.column(i);
            let coeff = C64::new(1.0 / se.eigenvalues[i], 0.0);
            solution += (v * (v.adjoint() * rhs_block)) * coeff;
        }
        let retained_projector =
            DMatrix::<C64>::identity(n_block.nrows(), n_block.ncols()) - kernel_proj;
        let min_retained = retained
            .iter()
            .fold(f64::INFINITY, |m, &i| m.min(se.eigenvalues[i]));
        return Ok(SpectralSolve {
            solution,
            min_retained,
            spectral_norm,
            deflated,
            retained_projector: Some(retained_projector),
        });
    }

    let mut solution = DMatrix::<C64>::zeros(n_block.nrows(), n_block.ncols());
    for i in 0..se.eigenvalues.len() {
        let v = se.eigenvectors.column(i);
        let coeff = C64::new(1.0 / se.eigenvalues[i], 0.0);
        solution += (v * (v.adjoint() * rhs_block)) * coeff;
    }
    Ok(SpectralSolve {
        solution,
        min_retained: min_all,
        spectral_norm,
        deflated: 0,
        retained_projector: None,
    })
}

fn embed_block(block: &DMatrix<C64>, dim: usize) -> DMatrix<C64> {
    let mut full = DMatrix::<C64>::zeros(dim, dim);
    full.view_mut((0, 0), (block.nrows(), block.ncols()))
        .copy_from(block);
    full
}

/// Construct the partner h2 = N1^{-1}(x1† h1 x1) on the trusted block and
/// attach the full property report.
///
/// The linear system is solved on the leading `(dim - margin)` block,
/// where the truncated N1 is free of boundary corruption; the result is
/// embedded back with zeros outside. Construction is gated on the
/// commutant residual and on the invertibility of N1; Hermiticity of h2
/// is reported, never silently repaired.
pub fn construct_partner(
    h1: &Operator,
    x1: &Operator,
    interior: InteriorSpec,
    tol: &Tolerances,
    policy: KernelPolicy,
) -> Result<IntertwinedPair> {
    let hypo = check_hypotheses(h1, x1, interior)?;
    let scale = commutant_scale(h1, x1);
    if hypo.r_commutant > tol.commutant_rel * scale {
        return Err(Error::CommutantViolated {
            residual: hypo.r_commutant,
            bound: tol.commutant_rel * scale,
        });
    }

    let dim = h1.dim();
    let n1 = x1.adjoint().multiply(x1)?;
    let rhs = x1.adjoint().multiply(h1)?.multiply(x1)?;
    let n_block = trusted_block(&n1, interior);
    let rhs_block = trusted_block(&rhs, interior);
    let solve = spectral_solve(&n_block, &rhs_block, tol.invert_rel, policy)?;

    let h2_matrix = embed_block(&solve.solution, dim);
    let h2 = if matches!(h1.band(), crate::operator::Band::Dense)
        || matches!(x1.band(), crate::operator::Band::Dense)
    {
        Operator::from_matrix_dense(h2_matrix)
    } else {
        Operator::from_matrix(h2_matrix)
    };

    let r_alpha = h2.sub(&h2.adjoint())?.frobenius_norm();
    let h2_norm = h2.frobenius_norm().max(f64::MIN_POSITIVE);
    let r_alpha_rel = r_alpha / h2_norm;

    let bw_x = x1.band().margin_contribution();
    let bw_h = h1.band().margin_contribution();
    let beta_margin = interior.margin + 2 * bw_x + bw_h;
    let strong = x1.multiply(&h2)?.sub(&h1.multiply(x1)?)?;
    let r_beta_strong = strong.interior_norm(InteriorSpec::new(beta_margin.min(dim - 1)));
    let weak = x1.adjoint().multiply(&strong)?;
    let r_beta = weak.interior_norm(InteriorSpec::new(beta_margin.min(dim - 1)));
    let beta_scale = (h1.frobenius_norm() * x1.frobenius_norm()).max(f64::MIN_POSITIVE);
    let r_beta_rel = r_beta / beta_scale;

    let es1 = h1.hermitian_eigensystem()?;
    let mapped = map_eigenvectors(x1, &es1, tol.vanish_rel);
    let gamma_margin = interior.margin + bw_x + bw_h;
    let gamma = verify_gamma(&h2, &mapped, gamma_margin);
    let eps_scale = es1.values().iter().fold(1.0f64, |m, e| m.max(e.abs()));
    let gamma_max_rel = gamma
        .iter()
        .fold(0.0f64, |m, g| m.max(g.residual / eps_scale));

    let report = PropertyReport {
        r_commutant: hypo.r_commutant,
        r_commutant_rel: hypo.r_commutant_rel,
        r_alpha,
        r_alpha_rel,
        r_beta,
        r_beta_rel,
        r_beta_strong,
        n1_min_singular: solve.min_retained,
        n1_spectral_norm: solve.spectral_norm,
        deflated: solve.deflated,
        gamma,
        gamma_max_rel,
        tolerances: *tol,
        pass_alpha: r_alpha_rel < ALPHA_REL_BOUND,
        pass_beta: r_beta_rel < BETA_REL_BOUND,
        pass_gamma: gamma_max_rel < GAMMA_REL_BOUND,
    };

    let retained_projector = solve
        .retained_projector
        .as_ref()
        .map(|p| Operator::from_matrix(embed_block(p, dim)));

    Ok(IntertwinedPair {
        h1: h1.clone(),
        x1: x1.clone(),
        n1,
        h2,
        interior,
        report,
        retained_projector,
    })
}

/// The \[α\]-proof pivot, checked directly: ||\[N1^{-1}, x1† h1 x1\]|| on the
/// trusted block, evaluated through two spectral solves (never an explicit
/// inverse).
pub fn n1_commutation_residual(pair: &IntertwinedPair) -> f64 {
    let interior = pair.interior;
    let rhs = pair
        .x1
        .adjoint()
        .multiply(&pair.h1)
        .and_then(|m| m.multiply(&pair.x1))
        .expect("dims fixed at construction");
    let n_block = trusted_block(&pair.n1, interior);
    let rhs_block = trusted_block(&rhs, interior);
    let tol = pair.report.tolerances;
    let left = spectral_solve(
        &n_block,
        &rhs_block,
        tol.invert_rel,
        KernelPolicy::DeflateConsistent,
    )
    .expect("construction already validated this system");
    // X N^{-1} = (N^{-1} X†)† because N is Hermitian
    let right = spectral_solve(
        &n_block,
        &rhs_block.adjoint(),
        tol.invert_rel,
        KernelPolicy::DeflateConsistent,
    )
    .expect("construction already validated this system");
    (left.solution - right.solution.adjoint()).norm()
}

/// Result of mapping an h2 eigenvector back with x1.
#[derive(Clone, Debug)]
pub struct ReverseMapped {
    pub candidate: DVector<C64>,
    pub eigen_residual: f64,
    pub collinearity: f64,
}

/// For nondegenerate ε_n, x1 φ_n^(2) is again an h1 eigenvector with the
/// same eigenvalue, collinear with φ̂_n^(1).
pub fn reverse_map_eigenvector(
    pair: &IntertwinedPair,
    es1: &EigenSystem,
    n: usize,
) -> Result<ReverseMapped> {
    if es1.is_degenerate(n) {
        return Err(Error::DegenerateEigenvalue {
            index: n,
            size: es1.cluster_size(n),
        });
    }
    let phi1 = es1.vector(n);
    let phi2 = pair.x1.adjoint().matrix() * &phi1;
    let candidate = pair.x1.matrix() * &phi2;
    let norm = candidate.norm();
    if norm < pair.report.tolerances.vanish_rel {
        return Err(Error::InvalidParameter {
            name: "n".into(),
            requirement: "a surviving (non-annihilated) mapped eigenvector".into(),
        });
    }
    let eps = es1.value(n);
    let acted = pair.h1.matrix() * &candidate;
    let keep = pair.h1.dim().saturating_sub(pair.check_margin());
    let mut sq = 0.0f64;
    for i in 0..keep {
        sq += (acted[i] - C64::new(eps, 0.0) * candidate[i]).norm_sqr();
    }
    let eigen_residual = sq.sqrt() / norm;
    let overlap = phi1.dotc(&candidate).norm();
    let collinearity = overlap / norm;
    Ok(ReverseMapped {
        candidate,
        eigen_residual,
        collinearity,
    })
}

/// An iterated sequence of partner constructions. Link j's h2 is link
/// j+1's h1, shared as the same matrix value.
#[derive(Clone, Debug)]
pub struct HamiltonianChain {
    links: Vec<IntertwinedPair>,
    cyclic_at: Option<usize>,
}

impl HamiltonianChain {
    pub fn start(first: IntertwinedPair) -> Self {
        HamiltonianChain {
            links: vec![first],
            cyclic_at: None,
        }
    }

    pub fn links(&self) -> &[IntertwinedPair] {
        &self.links
    }

    pub fn last_h(&self) -> &Operator {
        &self.links.last().expect("chains are nonempty").h2
    }

    /// Index into the sequence h1, h2, h3, ... of the earlier Hamiltonian
    /// the latest link reproduced, if any (0 is the seed).
    pub fn cyclic_at(&self) -> Option<usize> {
        self.cyclic_at
    }

    /// The sequence h1, h2, ..., h_{k+1} seen so far.
    fn hamiltonians(&self) -> Vec<&Operator> {
        let mut hs = vec![&self.links[0].h1];
        hs.extend(self.links.iter().map(|l| &l.h2));
        hs
    }
}

/// Append one more link, constructed against the chain's last
/// Hamiltonian, and detect cyclicity by comparing the new h against every
/// earlier one on the trusted interior (masked to the retained subspace
/// when the link deflated a kernel).
pub fn extend_chain(
    chain: &HamiltonianChain,
    x_next: &Operator,
    tol: &Tolerances,
) -> Result<HamiltonianChain> {
    let h_prev = chain.last_h();
    let margin =
        chain.links.last().expect("nonempty").interior.margin + construction_margin(x_next, h_prev);
    if margin >= h_prev.dim() {
        return Err(Error::InvalidParameter {
            name: "dim".into(),
            requirement: format!(
                "a dimension larger than the accumulated margin {margin} of the chain"
            ),
        });
    }
    let pair = construct_partner(
        h_prev,
        x_next,
        InteriorSpec::new(margin),
        tol,
        KernelPolicy::DeflateConsistent,
    )?;

    let compare_margin = pair.check_margin().min(pair.h2.dim() - 1);
    let mask = |op: &Operator| -> Operator {
        match &pair.retained_projector {
            Some(p) => p
                .multiply(op)
                .and_then(|m| m.multiply(p))
                .expect("projector dims match"),
            None => op.clone(),
        }
    };
    let masked_new = mask(&pair.h2);
    let mut cyclic_at = chain.cyclic_at;
    if cyclic_at.is_none() {
        for (idx, h_old) in chain.hamiltonians().into_iter().enumerate() {
            let masked_old = mask(h_old);
            let diff = masked_new
                .sub(&masked_old)
                .expect("chain dims are uniform")
                .interior_norm(InteriorSpec::new(compare_margin));
            let scale = masked_old
                .interior_norm(InteriorSpec::new(compare_margin))
                .max(1.0);
            if diff < tol.cyclic_rel * scale {
                cyclic_at = Some(idx);
                break;
            }
        }
    }

    let mut links = chain.links.clone();
    links.push(pair);
    Ok(HamiltonianChain { links, cyclic_at })
}

/// One step of the unitary chain x_j = a_j† e^{iB_j}.
#[derive(Clone, Debug)]
pub struct UnitaryStep {
    pub x: Operator,
    pub a_next: Operator,
    pub h_next: Operator,
    /// ||x x† - a_j† a_j||_F; the exponential cancels, so this is
    /// rounding-sized.
    pub r_xxdag_vs_h: f64,
    /// ||h_next - x†x||_F.
    pub r_hnext_vs_n1: f64,
}

/// Build x = a† e^{iB}, the transported ladder a' = e^{-iB} a† e^{iB},
/// and the next Hamiltonian h' = a'† a'.
pub fn build_unitary_chain_step(a_j: &Operator, b_j: &Operator) -> Result<UnitaryStep> {
    if a_j.dim() != b_j.dim() {
        return Err(Error::DimensionMismatch {
            op: "build_unitary_chain_step",
            left: a_j.dim(),
            right: b_j.dim(),
        });
    }
    let u = b_j.unitary_from_hermitian()?;
    let a_dag = a_j.adjoint();
    let x = a_dag.multiply(&u)?;
    let a_next = u.adjoint().multiply(&a_dag)?.multiply(&u)?;
    let h_next = a_next.adjoint().multiply(&a_next)?;

    let h_j = a_dag.multiply(a_j)?;
    let r_xxdag_vs_h = x.multiply(&x.adjoint())?.sub(&h_j)?.frobenius_norm();
    let n1 = x.adjoint().multiply(&x)?;
    let r_hnext_vs_n1 = h_next.sub(&n1)?.frobenius_norm();
    Ok(UnitaryStep {
        x,
        a_next,
        h_next,
        r_xxdag_vs_h,
        r_hnext_vs_n1,
    })
}

/// The block superalgebra of the factorized case.
#[derive(Clone, Debug)]
pub struct SusyAlgebra {
    pub h: Operator,
    pub q: Operator,
    pub q_dagger: Operator,
    pub r_comm_hq: f64,
    pub r_comm_hqdag: f64,
    pub r_q_squared: f64,
    pub r_anticommutator: f64,
}

/// Assemble H = diag(H1, H2), Q = `[[0,0],[A,0]]` and verify the
/// superalgebra residuals. Requires the factorized form H1 = A†A,
/// H2 = AA† (checked on the interior); the algebra does not hold for
/// general intertwined pairs, so everything else is refused.
pub fn build_susy_algebra(
    h1: &Operator,
    h2: &Operator,
    a: &Operator,
    interior: InteriorSpec,
) -> Result<SusyAlgebra> {
    let dim = h1.dim();
    if h2.dim() != dim || a.dim() != dim {
        return Err(Error::DimensionMismatch {
            op: "build_susy_algebra",
            left: dim,
            right: h2.dim().max(a.dim()),
        });
    }
    let ada = a.adjoint().multiply(a)?;
    let aad = a.multiply(&a.adjoint())?;
    let scale = h1.frobenius_norm().max(h2.frobenius_norm()).max(1.0);
    let d1 = ada.sub(h1)?.interior_norm(interior);
    let d2 = aad.sub(h2)?.interior_norm(interior);
    let factor_tol = 1e-10 * scale;
    if d1 > factor_tol {
        return Err(Error::NotFactorized {
            detail: format!("||A\u{2020}A - h1|| = {d1:.3e} on the interior"),
        });
    }
    if d2 > factor_tol {
        return Err(Error::NotFactorized {
            detail: format!("||AA\u{2020} - h2|| = {d2:.3e} on the interior"),
        });
    }

    let zero = Operator::zeros(dim);
    let h = block_two_by_two(h1, &zero, &zero, h2);
    let q = block_two_by_two(&zero, &zero, a, &zero);
    let q_dagger = q.adjoint();

    // block-wise residuals: [H,Q] lives in the lower-left block,
    // [H,Q†] in the upper-right, {Q,Q†}-H on the diagonal
    let r_comm_hq = h2
        .multiply(a)?
        .sub(&a.multiply(h1)?)?
        .interior_norm(interior);
    let r_comm_hqdag = h1
        .multiply(&a.adjoint())?
        .sub(&a.adjoint().multiply(h2)?)?
        .interior_norm(interior);
    let r_q_squared = q.multiply(&q)?.frobenius_norm();
    let r_anticommutator = d1.hypot(d2);

    Ok(SusyAlgebra {
        h,
        q,
        q_dagger,
        r_comm_hq,
        r_comm_hqdag,
        r_q_squared,
        r_anticommutator,
    })
}

fn block_two_by_two(ul: &Operator, ur: &Operator, ll: &Operator, lr: &Operator) -> Operator {
    let d = ul.dim();
    let mut m = DMatrix::<C64>::zeros(2 * d, 2 * d);
    m.view_mut((0, 0), (d, d)).copy_from(ul.matrix());
    m.view_mut((0, d), (d, d)).copy_from(ur.matrix());
    m.view_mut((d, 0), (d, d)).copy_from(ll.matrix());
    m.view_mut((d, d), (d, d)).copy_from(lr.matrix());
    Operator::from_matrix(m)
}
