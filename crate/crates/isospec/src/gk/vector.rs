//! Two-sector vector coherent states on C^2 (x) H.
//!
//! A state is a coefficient table over the basis Φ̂_n^(b), Φ̂_n^(f):
//!   b_n = (2N(J))^{-1/2} J1^{n/2} e^{-i(ε_n+δ)γ} / sqrt(ρ_n)
//!   f_n = (2N(J))^{-1/2} J2^{n/2} e^{+i(ε_n+δ)γ} / sqrt(ρ_n)
//! with N(J) = (M(J1) + M(J2))/2.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gk::spectrum::{big_m, series_cutoff, GKSpectrumData};

/// Parameters of a vector coherent state. `n_max: None` selects the
/// truncation order adaptively from the series ratio test; the
/// coefficient table is extended well past the certified-normalization
/// cutoff so operator-identity residuals stay rounding-limited.
#[derive(Clone, Copy, Debug)]
pub struct VectorCSParams {
    pub j1: f64,
    pub j2: f64,
    pub gamma: f64,
    pub delta: f64,
    pub n_max: Option<usize>,
    pub tail_tol: f64,
}

impl VectorCSParams {
    pub fn new(j1: f64, j2: f64, gamma: f64, delta: f64) -> Self {
        VectorCSParams {
            j1,
            j2,
            gamma,
            delta,
            n_max: None,
            tail_tol: 1e-14,
        }
    }
}

/// Coefficient table of a synthesized state.
#[derive(Clone, Debug)]
pub struct VectorCoherentState {
    b: Vec<C64>,
    f: Vec<C64>,
    params: VectorCSParams,
    norm_n: f64,
}

impl VectorCoherentState {
    pub fn from_coefficients(b: Vec<C64>, f: Vec<C64>, params: VectorCSParams) -> Self {
        assert_eq!(b.len(), f.len());
        VectorCoherentState {
            b,
            f,
            params,
            norm_n: f64::NAN,
        }
    }

    pub fn b_coeffs(&self) -> &[C64] {
        &self.b
    }

    pub fn f_coeffs(&self) -> &[C64] {
        &self.f
    }

    pub fn params(&self) -> &VectorCSParams {
        &self.params
    }

    /// N(J) used at synthesis.
    pub fn normalization(&self) -> f64 {
        self.norm_n
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn norm(&self) -> f64 {
        let sq: f64 = self
            .b
            .iter()
            .chain(self.f.iter())
            .map(|z| z.norm_sqr())
            .sum();
        sq.sqrt()
    }

    /// susy-norm of the coefficient-wise difference, zero-extending the
    /// shorter table.
    pub fn distance(&self, other: &VectorCoherentState) -> f64 {
        let len = self.len().max(other.len());
        let zero = C64::new(0.0, 0.0);
        let mut sq = 0.0f64;
        for n in 0..len {
            let sb = self.b.get(n).copied().unwrap_or(zero);
            let ob = other.b.get(n).copied().unwrap_or(zero);
            let sf = self.f.get(n).copied().unwrap_or(zero);
            let of = other.f.get(n).copied().unwrap_or(zero);
            sq += (sb - ob).norm_sqr() + (sf - of).norm_sqr();
        }
        sq.sqrt()
    }
}

fn validate(params: &VectorCSParams, data: &GKSpectrumData) -> Result<()> {
    data.check_j(params.j1)?;
    data.check_j(params.j2)?;
    if !params.delta.is_finite() || params.delta <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "delta".into(),
            requirement: "a strictly positive value".into(),
        });
    }
    if !params.gamma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "gamma".into(),
            requirement: "a finite value".into(),
        });
    }
    if !params.tail_tol.is_finite() || params.tail_tol <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "tail_tol".into(),
            requirement: "a positive tail tolerance".into(),
        });
    }
    Ok(())
}

/// Synthesize the state for the given parameters. Unit susy-norm within
/// the tail tolerance by construction.
pub fn synthesize_vector_cs(
    params: &VectorCSParams,
    data: &GKSpectrumData,
) -> Result<VectorCoherentState> {
    validate(params, data)?;
    let m1 = big_m(params.j1, data, params.tail_tol)?;
    let m2 = big_m(params.j2, data, params.tail_tol)?;
    let norm_n = 0.5 * (m1 + m2);

    // coefficients run past the normalization cutoff so ladder identities
    // are not truncation-limited
    let coeff_tail = params.tail_tol * 1e-16;
    let n_max = params.n_max.unwrap_or_else(|| {
        series_cutoff(params.j1, data, coeff_tail).max(series_cutoff(params.j2, data, coeff_tail))
    });
    let n_max = n_max.min(data.levels() - 1);

    let scale = 1.0 / (2.0 * norm_n).sqrt();
    let mut b = Vec::with_capacity(n_max + 1);
    let mut f = Vec::with_capacity(n_max + 1);
    let mut amp1 = scale;
    let mut amp2 = scale;
    for n in 0..=n_max {
        if n > 0 {
            amp1 *= (params.j1 / data.eps(n)).sqrt();
            amp2 *= (params.j2 / data.eps(n)).sqrt();
        }
        let phase = (data.eps(n) + params.delta) * params.gamma;
        b.push(C64::from_polar(amp1, -phase));
        f.push(C64::from_polar(amp2, phase));
    }
    Ok(VectorCoherentState {
        b,
        f,
        params: *params,
        norm_n,
    })
}

/// Both routes to the action identity: the coefficient-sum expectation of
/// H and the closed form (J1 M(J1) + J2 M(J2)) / (M(J1) + M(J2)). Both
/// carry the spectrum's frequency scale ω.
#[derive(Clone, Copy, Debug)]
pub struct ActionIdentity {
    pub expectation: f64,
    pub closed_form: f64,
    pub difference: f64,
}

pub fn action_identity(
    state: &VectorCoherentState,
    data: &GKSpectrumData,
) -> Result<ActionIdentity> {
    let params = state.params();
    let expectation: f64 = (0..state.len())
        .map(|n| data.eps(n) * (state.b[n].norm_sqr() + state.f[n].norm_sqr()))
        .sum::<f64>()
        * data.omega();
    let m1 = big_m(params.j1, data, params.tail_tol)?;
    let m2 = big_m(params.j2, data, params.tail_tol)?;
    let closed_form = data.omega() * (params.j1 * m1 + params.j2 * m2) / (m1 + m2);
    Ok(ActionIdentity {
        expectation,
        closed_form,
        difference: (expectation - closed_form).abs(),
    })
}

/// Apply V_δ(t) = diag(e^{-i(h1+δ)t}, e^{+i(h2+δ)t}) in the eigenbasis:
/// the result equals the synthesis at γ + t coefficient by coefficient.
pub fn evolve(state: &VectorCoherentState, t: f64, data: &GKSpectrumData) -> VectorCoherentState {
    let delta = state.params.delta;
    let b = state
        .b
        .iter()
        .enumerate()
        .map(|(n, z)| z * C64::from_polar(1.0, -(data.eps(n) + delta) * t))
        .collect();
    let f = state
        .f
        .iter()
        .enumerate()
        .map(|(n, z)| z * C64::from_polar(1.0, (data.eps(n) + delta) * t))
        .collect();
    let mut params = state.params;
    params.gamma += t;
    VectorCoherentState {
        b,
        f,
        params,
        norm_n: state.norm_n,
    }
}

/// A_γ lowers both sectors with conjugate phases:
/// A_γ Φ̂_n^(b) = sqrt(ε_n) e^{+i(ε_n-ε_{n-1})γ} Φ̂_{n-1}^(b) (zero at n=0),
/// and the f-sector with e^{-i(...)γ}.
pub fn apply_a_gamma(
    state: &VectorCoherentState,
    gamma: f64,
    data: &GKSpectrumData,
) -> VectorCoherentState {
    let len = state.len();
    let zero = C64::new(0.0, 0.0);
    let mut b = vec![zero; len];
    let mut f = vec![zero; len];
    for n in 0..len.saturating_sub(1) {
        let amp = data.eps(n + 1).sqrt();
        let phase = (data.eps(n + 1) - data.eps(n)) * gamma;
        b[n] = state.b[n + 1] * C64::from_polar(amp, phase);
        f[n] = state.f[n + 1] * C64::from_polar(amp, -phase);
    }
    VectorCoherentState {
        b,
        f,
        params: state.params,
        norm_n: state.norm_n,
    }
}

/// The adjoint ladder: A_γ† Φ̂_n^(b) = sqrt(ε_{n+1}) e^{-i(ε_{n+1}-ε_n)γ}
/// Φ̂_{n+1}^(b), with the conjugate phase on the f sector.
pub fn apply_a_gamma_dagger(
    state: &VectorCoherentState,
    gamma: f64,
    data: &GKSpectrumData,
) -> VectorCoherentState {
    let len = state.len();
    let zero = C64::new(0.0, 0.0);
    let mut b = vec![zero; len];
    let mut f = vec![zero; len];
    for n in 0..len.saturating_sub(1) {
        let amp = data.eps(n + 1).sqrt();
        let phase = (data.eps(n + 1) - data.eps(n)) * gamma;
        b[n + 1] = state.b[n] * C64::from_polar(amp, -phase);
        f[n + 1] = state.f[n] * C64::from_polar(amp, phase);
    }
    VectorCoherentState {
        b,
        f,
        params: state.params,
        norm_n: state.norm_n,
    }
}

/// ||A_γ Ψ - J^{1/2} Ψ||: the states are eigenstates of their own A_γ,
/// sector-wise with sqrt(J1) and sqrt(J2).
pub fn a_gamma_eigen_residual(state: &VectorCoherentState, data: &GKSpectrumData) -> f64 {
    let params = state.params();
    let lowered = apply_a_gamma(state, params.gamma, data);
    let s1 = params.j1.sqrt();
    let s2 = params.j2.sqrt();
    let mut sq = 0.0f64;
    for n in 0..state.len() {
        sq += (lowered.b[n] - state.b[n] * C64::new(s1, 0.0)).norm_sqr();
        sq += (lowered.f[n] - state.f[n] * C64::new(s2, 0.0)).norm_sqr();
    }
    sq.sqrt()
}

/// ||Ψ(params) - Ψ(params0)||; the family is continuous in (J, γ).
pub fn continuity_check(
    params: &VectorCSParams,
    params0: &VectorCSParams,
    data: &GKSpectrumData,
) -> Result<f64> {
    let a = synthesize_vector_cs(params, data)?;
    let b = synthesize_vector_cs(params0, data)?;
    Ok(a.distance(&b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockSpec;

    fn boson(levels: usize) -> GKSpectrumData {
        GKSpectrumData::from_fock(&FockSpec::boson(2).unwrap(), levels).unwrap()
    }

    #[test]
    fn vacuum_state_has_single_term_per_sector() {
        let data = boson(64);
        let params = VectorCSParams::new(0.0, 0.0, 0.7, 1.0);
        let state = synthesize_vector_cs(&params, &data).unwrap();
        // only n = 0 survives: (Φ0^b e^{-iδγ} + Φ0^f e^{iδγ})/sqrt(2)
        let want = C64::from_polar(1.0 / 2.0f64.sqrt(), -0.7);
        assert!((state.b_coeffs()[0] - want).norm() < 1e-15);
        assert!((state.f_coeffs()[0] - want.conj()).norm() < 1e-15);
        for n in 1..state.len() {
            assert_eq!(state.b_coeffs()[n].norm(), 0.0);
        }
        assert!((state.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn boson_unit_j_coefficients_match_closed_form() {
        // J1 = J2 = 1, gamma = 0: b_n = f_n = (2e)^{-1/2}/sqrt(n!)
        let data = boson(64);
        let params = VectorCSParams::new(1.0, 1.0, 0.0, 1.0);
        let state = synthesize_vector_cs(&params, &data).unwrap();
        let mut fact = 1.0f64;
        for n in 0..12 {
            if n > 0 {
                fact *= n as f64;
            }
            let want = 1.0 / (2.0 * std::f64::consts::E * fact).sqrt();
            assert!((state.b_coeffs()[n].re - want).abs() < 1e-13, "n = {n}");
            assert!(state.b_coeffs()[n].im.abs() < 1e-15);
        }
    }

    #[test]
    fn norm_is_one_across_parameter_draws() {
        let data = boson(128);
        // deterministic pseudo-random draws
        let mut s = 0.2137f64;
        let mut next = || {
            s = (s * 997.0 + 0.317).fract();
            s
        };
        for _ in 0..50 {
            let params =
                VectorCSParams::new(4.0 * next(), 4.0 * next(), 3.0 * next() - 1.5, 0.1 + next());
            let state = synthesize_vector_cs(&params, &data).unwrap();
            assert!(
                (state.norm() - 1.0).abs() < params.tail_tol.max(1e-13),
                "params {params:?}: norm {}",
                state.norm()
            );
        }
    }

    #[test]
    fn action_identity_equal_j_returns_j() {
        let data = boson(64);
        for j in [0.0, 0.5, 1.0, 4.0] {
            let params = VectorCSParams::new(j, j, 0.3, 0.5);
            let state = synthesize_vector_cs(&params, &data).unwrap();
            let action = action_identity(&state, &data).unwrap();
            assert!((action.closed_form - j).abs() < 1e-12, "j = {j}");
            assert!(action.difference < 1e-12, "j = {j}");
        }
    }

    #[test]
    fn action_identity_mixed_j_both_routes() {
        let data = boson(64);
        let params = VectorCSParams::new(1.0, 4.0, 0.0, 1.0);
        let state = synthesize_vector_cs(&params, &data).unwrap();
        let action = action_identity(&state, &data).unwrap();
        let e1 = std::f64::consts::E;
        let e4 = e1.powi(4);
        let want = (e1 + 4.0 * e4) / (e1 + e4);
        assert!((action.closed_form - want).abs() < 1e-12);
        assert!(action.difference < 1e-10);
    }

    #[test]
    fn evolution_shifts_gamma() {
        let data = boson(64);
        let params = VectorCSParams::new(1.0, 2.0, 0.4, 0.8);
        let state = synthesize_vector_cs(&params, &data).unwrap();
        assert!(evolve(&state, 0.0, &data).distance(&state) == 0.0);
        for t in [0.1, 1.0, 10.0] {
            let evolved = evolve(&state, t, &data);
            let mut shifted = params;
            shifted.gamma += t;
            let direct = synthesize_vector_cs(&shifted, &data).unwrap();
            assert!(
                evolved.distance(&direct) < 1e-12,
                "t = {t}: {}",
                evolved.distance(&direct)
            );
        }
    }

    #[test]
    fn evolution_composes() {
        let data = boson(64);
        let params = VectorCSParams::new(0.5, 1.5, -0.2, 1.0);
        let state = synthesize_vector_cs(&params, &data).unwrap();
        let two_step = evolve(&evolve(&state, 0.7, &data), 1.8, &data);
        let one_step = evolve(&state, 2.5, &data);
        assert!(two_step.distance(&one_step) < 1e-12);
        // t = -gamma returns to the zero-phase synthesis
        let back = evolve(&state, -params.gamma, &data);
        let mut zeroed = params;
        zeroed.gamma = 0.0;
        let direct = synthesize_vector_cs(&zeroed, &data).unwrap();
        assert!(back.distance(&direct) < 1e-12);
    }

    #[test]
    fn a_gamma_annihilates_ground_basis_vector() {
        let data = boson(8);
        let mut b = vec![C64::new(0.0, 0.0); 4];
        b[0] = C64::new(1.0, 0.0);
        let f = vec![C64::new(0.0, 0.0); 4];
        let basis =
            VectorCoherentState::from_coefficients(b, f, VectorCSParams::new(0.0, 0.0, 0.3, 1.0));
        let lowered = apply_a_gamma(&basis, 0.3, &data);
        assert_eq!(lowered.norm(), 0.0);
    }

    #[test]
    fn a_gamma_eigen_relation() {
        let data = boson(96);
        for (j1, j2) in [(1.0, 1.0), (0.5, 4.0), (0.0, 2.0)] {
            let params = VectorCSParams::new(j1, j2, 1.3, 0.5);
            let state = synthesize_vector_cs(&params, &data).unwrap();
            let resid = a_gamma_eigen_residual(&state, &data);
            assert!(resid < 1e-10, "J = ({j1}, {j2}): residual {resid:.3e}");
        }
    }

    #[test]
    fn a_gamma_mismatch_is_bounded_away_from_zero() {
        let data = boson(64);
        let params = VectorCSParams::new(1.0, 1.0, 0.4, 1.0);
        let state = synthesize_vector_cs(&params, &data).unwrap();
        let lowered = apply_a_gamma(&state, params.gamma + 0.7, &data);
        let s = params.j1.sqrt();
        let mut sq = 0.0f64;
        for n in 0..state.len() {
            sq += (lowered.b_coeffs()[n] - state.b_coeffs()[n] * C64::new(s, 0.0)).norm_sqr();
            sq += (lowered.f_coeffs()[n] - state.f_coeffs()[n] * C64::new(s, 0.0)).norm_sqr();
        }
        assert!(sq.sqrt() > 0.01);
    }

    #[test]
    fn dagger_is_adjoint_of_lowering() {
        // <A† u, v> = <u, A v> on coefficient tables
        let data = boson(16);
        let params = VectorCSParams::new(1.0, 1.0, 0.9, 1.0);
        let mk = |seed: f64| {
            let mut s = seed;
            let mut next = || {
                s = (s * 997.0 + 0.317).fract();
                s - 0.5
            };
            let b: Vec<C64> = (0..10).map(|_| C64::new(next(), next())).collect();
            let f: Vec<C64> = (0..10).map(|_| C64::new(next(), next())).collect();
            VectorCoherentState::from_coefficients(b, f, params)
        };
        let u = mk(0.3);
        let v = mk(0.7);
        let gamma = 0.9;
        let av = apply_a_gamma(&v, gamma, &data);
        let adu = apply_a_gamma_dagger(&u, gamma, &data);
        let dot = |x: &VectorCoherentState, y: &VectorCoherentState| -> C64 {
            let mut acc = C64::new(0.0, 0.0);
            for n in 0..x.len() {
                acc += x.b_coeffs()[n].conj() * y.b_coeffs()[n]
                    + x.f_coeffs()[n].conj() * y.f_coeffs()[n];
            }
            acc
        };
        assert!((dot(&adu, &v) - dot(&u, &av)).norm() < 1e-12);
    }

    #[test]
    fn continuity_identical_params_is_zero() {
        let data = boson(64);
        let p = VectorCSParams::new(1.0, 2.0, 0.5, 1.0);
        assert_eq!(continuity_check(&p, &p, &data).unwrap(), 0.0);
    }

    #[test]
    fn continuity_shrinks_along_halved_distances() {
        let data = boson(64);
        let target = VectorCSParams::new(1.0, 1.0, 0.0, 1.0);
        let mut dj = 1.0f64;
        let mut dg = 1.0f64;
        let mut prev = f64::INFINITY;
        for _ in 0..8 {
            let p = VectorCSParams::new(target.j1 + dj, target.j2 + dj, target.gamma + dg, 1.0);
            let dist = continuity_check(&p, &target, &data).unwrap();
            assert!(dist < prev, "distance must shrink strictly");
            prev = dist;
            dj *= 0.5;
            dg *= 0.5;
        }
    }

    #[test]
    fn gamma_perturbation_bounded_first_order() {
        let data = boson(96);
        let base = VectorCSParams::new(1.0, 2.0, 0.3, 1.0);
        let state = synthesize_vector_cs(&base, &data).unwrap();
        // C = sqrt(<(H+δ)^2>) bounds the γ-derivative norm
        let c_sq: f64 = (0..state.len())
            .map(|n| {
                let w = data.eps(n) + base.delta;
                w * w * (state.b_coeffs()[n].norm_sqr() + state.f_coeffs()[n].norm_sqr())
            })
            .sum();
        let c = c_sq.sqrt();
        for h in [1e-6, -1e-6] {
            let mut p = base;
            p.gamma += h;
            let dist = continuity_check(&p, &base, &data).unwrap();
            assert!(
                dist <= c * h.abs() * (1.0 + 1e-6),
                "dist = {dist:.3e} vs C|h| = {:.3e}",
                c * h.abs()
            );
        }
    }

    #[test]
    fn synthesis_rejects_bad_parameters() {
        let data = boson(32);
        assert!(synthesize_vector_cs(&VectorCSParams::new(-1.0, 0.0, 0.0, 1.0), &data).is_err());
        assert!(synthesize_vector_cs(&VectorCSParams::new(0.0, 0.0, 0.0, 0.0), &data).is_err());
        let quon = GKSpectrumData::from_fock(&FockSpec::quon(0.5, 2).unwrap(), 64).unwrap();
        assert!(synthesize_vector_cs(&VectorCSParams::new(2.5, 0.0, 0.0, 1.0), &quon).is_err());
    }
}
