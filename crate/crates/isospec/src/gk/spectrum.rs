//! Admissible spectra for the coherent-state construction and the series
//! M(J) = Σ J^k / ε_k!.

use crate::error::{Error, Result};
use crate::fock::{q_number, FockKind, FockSpec};
use crate::operator::EigenSystem;

/// Spectral input of the construction: 0 = ε_0 < ε_1 < ..., the factorial
/// products ρ_n = ε_n!, the convergence radius R = lim ε_n and a frequency
/// scale ω.
///
/// ρ_n overflows f64 past a few hundred levels for unbounded spectra; all
/// series in this module therefore run on term ratios J/ε_{n+1} and never
/// divide by ρ_n directly. The table is still exposed for moment checks at
/// small n.
#[derive(Clone, Debug)]
pub struct GKSpectrumData {
    eps: Vec<f64>,
    rho: Vec<f64>,
    radius: f64,
    omega: f64,
    shift: f64,
}

impl GKSpectrumData {
    /// Analytic spectrum of a Fock backend, tabulated to `levels`.
    /// Bosons give ε_n = n with R infinite; quons with q in (0,1) give the
    /// q-numbers with R = 1/(1-q). Nonpositive q makes the q-numbers
    /// non-monotone, which the construction cannot accept.
    pub fn from_fock(spec: &FockSpec, levels: usize) -> Result<Self> {
        let q = match spec.kind {
            FockKind::Boson => 1.0,
            FockKind::Quon => spec.q,
        };
        if spec.kind == FockKind::Quon && q <= 0.0 {
            return Err(Error::InadmissibleSpectrum {
                reason: format!(
                    "quon q-numbers are strictly increasing only for q > 0 (got q = {q})"
                ),
            });
        }
        let eps: Vec<f64> = (0..levels).map(|n| q_number(q, n)).collect();
        let radius = if q == 1.0 {
            f64::INFINITY
        } else {
            1.0 / (1.0 - q)
        };
        Ok(Self::from_strict_spectrum(eps, radius, 0.0))
    }

    /// Spectrum taken from a Hermitian eigensystem. A nonzero ground level
    /// is shifted to zero (recorded in `shift`); degenerate or decreasing
    /// level sequences are rejected. The convergence radius of a finite
    /// table is its top level.
    pub fn from_eigensystem(es: &EigenSystem) -> Result<Self> {
        if es.is_empty() {
            return Err(Error::InadmissibleSpectrum {
                reason: "empty spectrum".into(),
            });
        }
        let shift = es.value(0);
        let eps: Vec<f64> = es.values().iter().map(|v| v - shift).collect();
        let scale = eps.last().copied().unwrap_or(1.0).max(1.0);
        for n in 1..eps.len() {
            if eps[n] - eps[n - 1] <= 1e-12 * scale {
                return Err(Error::InadmissibleSpectrum {
                    reason: format!(
                        "levels {} and {} are not strictly increasing ({} vs {})",
                        n - 1,
                        n,
                        eps[n - 1],
                        eps[n]
                    ),
                });
            }
        }
        let radius = *eps.last().unwrap();
        Ok(Self::from_strict_spectrum(eps, radius, shift))
    }

    fn from_strict_spectrum(eps: Vec<f64>, radius: f64, shift: f64) -> Self {
        let mut rho = Vec::with_capacity(eps.len());
        rho.push(1.0);
        for n in 1..eps.len() {
            let prev = rho[n - 1];
            rho.push(prev * eps[n]);
        }
        GKSpectrumData {
            eps,
            rho,
            radius,
            omega: 1.0,
            shift,
        }
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = omega;
        self
    }

    pub fn levels(&self) -> usize {
        self.eps.len()
    }

    pub fn eps(&self, n: usize) -> f64 {
        self.eps[n]
    }

    pub fn eps_slice(&self) -> &[f64] {
        &self.eps
    }

    /// ρ_n = ε_1 ε_2 ... ε_n (ρ_0 = 1). May be infinite at large n.
    pub fn rho(&self, n: usize) -> f64 {
        self.rho[n]
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Shift applied to bring ε_0 to zero.
    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn check_j(&self, j: f64) -> Result<()> {
        if !(j >= 0.0 && j < self.radius) {
            return Err(Error::OutsideConvergenceDomain {
                j,
                radius: self.radius,
            });
        }
        Ok(())
    }
}

/// Number of terms after which the remaining tail of Σ J^k/ρ_k is
/// certified below `tail_bound` relative to the partial sum. Uses the
/// ratio test: once J/ε_{n+1} = r < 1 the tail after term t_n is at most
/// t_n r/(1-r).
pub fn series_cutoff(j: f64, data: &GKSpectrumData, tail_bound: f64) -> usize {
    let levels = data.levels();
    let mut term = 1.0f64;
    let mut partial = 1.0f64;
    for n in 0..levels - 1 {
        let ratio = j / data.eps(n + 1);
        if ratio < 1.0 {
            let tail = term * ratio / (1.0 - ratio);
            if tail < tail_bound * partial {
                return n;
            }
        }
        term *= ratio;
        partial += term;
        if term == 0.0 {
            return n + 1;
        }
    }
    levels - 1
}

/// Partial sum of M(J) = Σ J^k/ε_k! with certified tail below `tail_tol`
/// (relative). For spectra tabulated from a finite eigensystem the sum is
/// finite and exact.
pub fn big_m(j: f64, data: &GKSpectrumData, tail_tol: f64) -> Result<f64> {
    data.check_j(j)?;
    let cutoff = series_cutoff(j, data, tail_tol);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..cutoff {
        term *= j / data.eps(n + 1);
        sum += term;
    }
    Ok(sum)
}
