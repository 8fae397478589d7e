//! Scalar Gazeau-Klauder states in the original normalization convention:
//! coefficients N(J)^{-1} J^{n/2} e^{-i ε_n γ} / sqrt(ρ_n) with
//! N(J)^2 = Σ J^n/ρ_n = M(J).
//!
//! The vector states of this crate use the standard N^{-1/2} convention
//! instead; the two differ only by which symbol carries the square root,
//! and the states themselves are unit vectors either way. At J1 = J2 = J
//! the b-sector of a vector state is proportional to the scalar state,
//! up to the δ-phase e^{-iδγ} and the constant 1/sqrt(2).

use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::gk::spectrum::{big_m, series_cutoff, GKSpectrumData};

#[derive(Clone, Debug)]
pub struct ScalarGKState {
    coeffs: Vec<C64>,
    pub j: f64,
    pub gamma: f64,
    /// N(J) in the original convention: N^2 = M(J).
    pub big_n: f64,
}

impl ScalarGKState {
    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn distance(&self, other: &ScalarGKState) -> f64 {
        let len = self.len().max(other.len());
        let zero = C64::new(0.0, 0.0);
        (0..len)
            .map(|n| {
                let a = self.coeffs.get(n).copied().unwrap_or(zero);
                let b = other.coeffs.get(n).copied().unwrap_or(zero);
                (a - b).norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }
}

pub fn scalar_gk_state(
    j: f64,
    gamma: f64,
    data: &GKSpectrumData,
    tail_tol: f64,
) -> Result<ScalarGKState> {
    data.check_j(j)?;
    let m = big_m(j, data, tail_tol)?;
    let big_n = m.sqrt();
    let n_max = series_cutoff(j, data, tail_tol * 1e-16).min(data.levels() - 1);
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut amp = 1.0 / big_n;
    for n in 0..=n_max {
        if n > 0 {
            amp *= (j / data.eps(n)).sqrt();
        }
        coeffs.push(C64::from_polar(amp, -data.eps(n) * gamma));
    }
    Ok(ScalarGKState {
        coeffs,
        j,
        gamma,
        big_n,
    })
}

/// The γ-dependent annihilation-like operator:
/// a_γ |n> = sqrt(ε_n) e^{i(ε_n - ε_{n-1})γ} |n-1>, zero on the ground
/// state.
pub fn apply_a_gamma_scalar(
    state: &ScalarGKState,
    gamma: f64,
    data: &GKSpectrumData,
) -> ScalarGKState {
    let len = state.len();
    let zero = C64::new(0.0, 0.0);
    let mut coeffs = vec![zero; len];
    for (n, slot) in coeffs.iter_mut().enumerate().take(len.saturating_sub(1)) {
        let amp = data.eps(n + 1).sqrt();
        let phase = (data.eps(n + 1) - data.eps(n)) * gamma;
        *slot = state.coeffs[n + 1] * C64::from_polar(amp, phase);
    }
    ScalarGKState {
        coeffs,
        j: state.j,
        gamma: state.gamma,
        big_n: state.big_n,
    }
}

/// e^{-iHt}|J,γ> = |J,γ+ωt>.
pub fn evolve_scalar(state: &ScalarGKState, t: f64, data: &GKSpectrumData) -> ScalarGKState {
    let coeffs = state
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, z)| z * C64::from_polar(1.0, -data.omega() * data.eps(n) * t))
        .collect();
    ScalarGKState {
        coeffs,
        j: state.j,
        gamma: state.gamma + data.omega() * t,
        big_n: state.big_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockSpec;
    use crate::gk::vector::{synthesize_vector_cs, VectorCSParams};

    fn boson(levels: usize) -> GKSpectrumData {
        GKSpectrumData::from_fock(&FockSpec::boson(2).unwrap(), levels).unwrap()
    }

    #[test]
    fn vanishing_j_gives_ground_state() {
        let data = boson(32);
        let state = scalar_gk_state(0.0, 0.4, &data, 1e-14).unwrap();
        assert!((state.coeffs()[0].norm() - 1.0).abs() < 1e-15);
        for c in &state.coeffs()[1..] {
            assert_eq!(c.norm(), 0.0);
        }
    }

    #[test]
    fn boson_normalization_and_eigen_relation() {
        let data = boson(64);
        let state = scalar_gk_state(1.0, 0.7, &data, 1e-14).unwrap();
        assert!((state.big_n * state.big_n - std::f64::consts::E).abs() < 1e-12);
        assert!((state.norm() - 1.0).abs() < 1e-13);
        // a_gamma |J,γ> = sqrt(J) |J,γ>
        let lowered = apply_a_gamma_scalar(&state, 0.7, &data);
        let mut sq = 0.0f64;
        for n in 0..state.len() {
            sq += (lowered.coeffs()[n] - state.coeffs()[n]).norm_sqr();
        }
        assert!(sq.sqrt() < 1e-12);
    }

    #[test]
    fn temporal_stability_shifts_gamma_by_omega_t() {
        let data = boson(64).with_omega(2.0);
        let state = scalar_gk_state(1.5, 0.3, &data, 1e-14).unwrap();
        let evolved = evolve_scalar(&state, 0.7, &data);
        let direct = scalar_gk_state(1.5, 0.3 + 2.0 * 0.7, &data, 1e-14).unwrap();
        assert!(evolved.distance(&direct) < 1e-12);
    }

    #[test]
    fn scalar_and_vector_coefficients_are_proportional() {
        // at J1 = J2 = J the vector b-sector equals the scalar state up to
        // the normalization convention and the δ-phase
        let data = boson(64);
        let j = 1.7;
        let gamma = 0.45;
        let delta = 0.9;
        let scalar = scalar_gk_state(j, gamma, &data, 1e-14).unwrap();
        let vector = synthesize_vector_cs(&VectorCSParams::new(j, j, gamma, delta), &data).unwrap();
        let mut ratios = vec![];
        for n in 0..scalar.len().min(vector.len()) {
            if scalar.coeffs()[n].norm() > 1e-12 {
                ratios.push(vector.b_coeffs()[n] / scalar.coeffs()[n]);
            }
        }
        let first = ratios[0];
        // constant ratio: (N_scalar / sqrt(2 N_vector)) e^{-iδγ}
        for r in &ratios {
            assert!((r - first).norm() < 1e-12);
        }
        assert!((first.arg() - (-delta * gamma)).abs() < 1e-12);
    }
}
