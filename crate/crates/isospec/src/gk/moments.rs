//! Moment verification for resolution-of-identity weights: a candidate
//! density ρ(u) must satisfy ∫ ρ(u) u^n du = ρ_n for every n.
//!
//! The only closed-form weight the construction comes with is the bosonic
//! exponential e^{-u} on [0, ∞), whose moments are n!. Quadrature is
//! Gauss-Laguerre, which integrates e^{-u} p(u) exactly for polynomials up
//! to degree 2m - 1, so the bosonic moments are exact up to rounding.

use nalgebra::DMatrix;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gk::spectrum::GKSpectrumData;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrature {
    GaussLaguerre { nodes: usize },
}

/// A candidate moment density with its quadrature rule. The density is
/// stored relative to the Laguerre weight, g(u) = ρ(u) e^{u}, which keeps
/// the evaluation stable (no e^{u} blowup for exponentially decaying ρ).
#[derive(Clone)]
pub struct MomentWeight {
    laguerre_density: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub quadrature: Quadrature,
    pub support_radius: f64,
}

impl std::fmt::Debug for MomentWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MomentWeight")
            .field("quadrature", &self.quadrature)
            .field("support_radius", &self.support_radius)
            .finish()
    }
}

impl MomentWeight {
    /// ρ(u) = e^{-u} on [0, ∞): the bosonic weight, moments n!.
    pub fn exponential() -> Self {
        MomentWeight {
            laguerre_density: Arc::new(|_| 1.0),
            quadrature: Quadrature::GaussLaguerre { nodes: 80 },
            support_radius: f64::INFINITY,
        }
    }

    /// Custom density given relative to the Laguerre weight:
    /// `laguerre_density(u) = ρ(u) e^{u}`.
    pub fn from_laguerre_density(
        laguerre_density: impl Fn(f64) -> f64 + Send + Sync + 'static,
        quadrature: Quadrature,
        support_radius: f64,
    ) -> Self {
        MomentWeight {
            laguerre_density: Arc::new(laguerre_density),
            quadrature,
            support_radius,
        }
    }

    /// ρ(u) itself.
    pub fn density(&self, u: f64) -> f64 {
        (self.laguerre_density)(u) * (-u).exp()
    }

    /// ∫ ρ(u) u^n du for n = 0..=n_up_to.
    pub fn raw_moments(&self, n_up_to: usize) -> Result<Vec<f64>> {
        let Quadrature::GaussLaguerre { nodes } = self.quadrature;
        let (us, ws) = gauss_laguerre(nodes);
        for &u in &us {
            if (self.laguerre_density)(u) < 0.0 {
                return Err(Error::InvalidParameter {
                    name: "weight".into(),
                    requirement: format!("a nonnegative density (negative at u = {u})"),
                });
            }
        }
        let mut moments = Vec::with_capacity(n_up_to + 1);
        for n in 0..=n_up_to {
            let mut acc = 0.0f64;
            for (&u, &w) in us.iter().zip(ws.iter()) {
                acc += w * (self.laguerre_density)(u) * u.powi(n as i32);
            }
            moments.push(acc);
        }
        Ok(moments)
    }

    /// Half-integer moments ∫ ρ(u) u^{n/2} du, needed by cross-sector
    /// frame elements.
    pub fn half_moments(&self, n_up_to: usize) -> Result<Vec<f64>> {
        let Quadrature::GaussLaguerre { nodes } = self.quadrature;
        let (us, ws) = gauss_laguerre(nodes);
        let mut moments = Vec::with_capacity(n_up_to + 1);
        for n in 0..=n_up_to {
            let p = n as f64 / 2.0;
            let mut acc = 0.0f64;
            for (&u, &w) in us.iter().zip(ws.iter()) {
                acc += w * (self.laguerre_density)(u) * u.powf(p);
            }
            moments.push(acc);
        }
        Ok(moments)
    }
}

/// Gauss-Laguerre nodes and weights: Golub-Welsch eigenvalues of the
/// Jacobi matrix (diagonal 2k+1, off-diagonal k) as initial guesses,
/// polished by Newton steps on the Laguerre recurrence. The polish
/// matters: raw eigenvalue nodes carry ~||J|| eps absolute error, which
/// high moments amplify past 1e-8 relative.
pub fn gauss_laguerre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut jac = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        jac[(k, k)] = 2.0 * k as f64 + 1.0;
        if k > 0 {
            jac[(k, k - 1)] = k as f64;
            jac[(k - 1, k)] = k as f64;
        }
    }
    let se = nalgebra::linalg::SymmetricEigen::new(jac);
    let mut nodes: Vec<f64> = se.eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));

    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (ln, lnp1) = laguerre_pair(n, *x);
            // x L_n'(x) = n (L_n - L_{n-1}), with L_{n-1} from the
            // downward form of the recurrence through L_{n+1}
            let lnm1 = ((2.0 * n as f64 + 1.0 - *x) * ln - (n as f64 + 1.0) * lnp1) / n as f64;
            let dln = (n as f64) * (ln - lnm1) / *x;
            *x -= ln / dln;
        }
        let (_, lnp1) = laguerre_pair(n, *x);
        let np1 = n as f64 + 1.0;
        weights.push(*x / (np1 * np1 * lnp1 * lnp1));
    }
    (nodes, weights)
}

/// (L_n(x), L_{n+1}(x)) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut lkm1 = 1.0f64;
    let mut lk = 1.0 - x;
    if n == 0 {
        return (lkm1, lk);
    }
    for k in 1..=n {
        let lkp1 = ((2.0 * k as f64 + 1.0 - x) * lk - k as f64 * lkm1) / (k as f64 + 1.0);
        lkm1 = lk;
        lk = lkp1;
        if k == n {
            return (lkm1, lk);
        }
    }
    unreachable!()
}

/// Relative error of each numerical moment against ρ_n from the spectrum.
pub fn moment_check(
    weight: &MomentWeight,
    data: &GKSpectrumData,
    n_up_to: usize,
) -> Result<Vec<f64>> {
    if n_up_to >= data.levels() {
        return Err(Error::InvalidParameter {
            name: "n_up_to".into(),
            requirement: format!("fewer than the {} tabulated levels", data.levels()),
        });
    }
    let moments = weight.raw_moments(n_up_to)?;
    Ok((0..=n_up_to)
        .map(|n| {
            let want = data.rho(n);
            (moments[n] - want).abs() / want.abs().max(f64::MIN_POSITIVE)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockSpec;

    #[test]
    fn laguerre_two_point_rule_matches_closed_form() {
        // nodes 2 -+ sqrt(2), weights (2 +- sqrt(2))/4
        let (us, ws) = gauss_laguerre(2);
        let s2 = 2.0f64.sqrt();
        assert!((us[0] - (2.0 - s2)).abs() < 1e-12);
        assert!((us[1] - (2.0 + s2)).abs() < 1e-12);
        assert!((ws[0] - (2.0 + s2) / 4.0).abs() < 1e-12);
        assert!((ws[1] - (2.0 - s2) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn weights_sum_to_one() {
        for n in [4usize, 16, 80] {
            let (_, ws) = gauss_laguerre(n);
            assert!((ws.iter().sum::<f64>() - 1.0).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn bosonic_moments_are_factorials() {
        let data = GKSpectrumData::from_fock(&FockSpec::boson(2).unwrap(), 32).unwrap();
        let errs = moment_check(&MomentWeight::exponential(), &data, 15).unwrap();
        for (n, e) in errs.iter().enumerate() {
            assert!(*e < 1e-8, "moment {n}: rel err {e:.3e}");
        }
        // zeroth moment is the weight normalization itself
        assert!(errs[0] < 1e-12);
    }

    #[test]
    fn mismatched_weight_fails_with_geometric_pattern() {
        // rho(u) = 2 e^{-2u} has moments n!/2^n: relative error 1 - 2^{-n}
        let data = GKSpectrumData::from_fock(&FockSpec::boson(2).unwrap(), 32).unwrap();
        let wrong = MomentWeight::from_laguerre_density(
            |u| 2.0 * (-u).exp(),
            Quadrature::GaussLaguerre { nodes: 80 },
            f64::INFINITY,
        );
        let errs = moment_check(&wrong, &data, 12).unwrap();
        for (n, e) in errs.iter().enumerate().skip(1) {
            let want = 1.0 - 0.5f64.powi(n as i32);
            assert!(
                (e - want).abs() < 1e-6,
                "moment {n}: rel err {e:.6} vs analytic {want:.6}"
            );
        }
        assert!(errs[5] > 0.9, "mismatch must be flagged as a failure");
    }

    #[test]
    fn negative_density_is_rejected() {
        let bad = MomentWeight::from_laguerre_density(
            |u| 1.0 - u,
            Quadrature::GaussLaguerre { nodes: 16 },
            f64::INFINITY,
        );
        assert!(bad.raw_moments(3).is_err());
    }

    #[test]
    fn half_moments_approximate_gamma_function() {
        // ∫ e^{-u} u^{1/2} du = Γ(3/2) = sqrt(pi)/2; the sqrt kink caps
        // Gauss-Laguerre at algebraic convergence, which is plenty for
        // the oracle leakage factors these feed
        let w = MomentWeight::exponential();
        let hm = w.half_moments(2).unwrap();
        assert!((hm[0] - 1.0).abs() < 1e-12);
        let gamma_3_2 = std::f64::consts::PI.sqrt() / 2.0;
        assert!((hm[1] - gamma_3_2).abs() < 1e-3, "got {}", hm[1]);
        assert!((hm[2] - 1.0).abs() < 1e-12);
    }
}
