//! The frame operator F = ∫ dν(J,γ) |Ψ_δ><Ψ_δ| and its deviation from the
//! identity.
//!
//! The γ-average is exact analytically: a matrix element survives the
//! Γ→∞ limit iff its total phase frequency vanishes, which happens on the
//! sector diagonals (ε_n = ε_m) and, only at δ = 0, on the (0,0) cross
//! element where ε_n + ε_m + 2δ = 0. The 2N(J) factor in dν cancels the
//! state normalization exactly, so what is left per surviving element is
//! a J-moment ratio. A finite-Γ numerical average is kept alongside as an
//! oracle; its off-identity leakage decays like 1/Γ.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gk::moments::MomentWeight;
use crate::gk::spectrum::GKSpectrumData;
use crate::operator::Operator;

/// Frame computation parameters. `sector_levels` is the per-sector block
/// size of the analytic defect matrix; the numeric oracle runs on a
/// smaller `oracle_levels` block for each Γ in `oracle_gammas`.
#[derive(Clone, Debug)]
pub struct FrameConfig {
    pub delta: f64,
    pub sector_levels: usize,
    pub oracle_gammas: Vec<f64>,
    pub oracle_levels: usize,
}

impl FrameConfig {
    pub fn new(delta: f64, sector_levels: usize) -> Self {
        FrameConfig {
            delta,
            sector_levels,
            oracle_gammas: vec![],
            oracle_levels: 4,
        }
    }

    pub fn with_oracle(mut self, gammas: Vec<f64>) -> Self {
        self.oracle_gammas = gammas;
        self
    }
}

/// F - 1 in the (b, f) basis: b levels occupy rows/columns 0..s, f levels
/// s..2s.
#[derive(Clone, Debug)]
pub struct FrameDefect {
    pub defect: Operator,
    pub max_abs: f64,
    /// The (b0, f0) element of F; 1 at δ = 0, absent otherwise.
    pub cross_corner: f64,
    /// (Γ, max off-identity leakage) pairs from the numeric γ-average.
    pub oracle: Vec<(f64, f64)>,
}

impl FrameDefect {
    /// Largest defect entry outside the two δ=0 corner positions.
    pub fn max_abs_off_pattern(&self) -> f64 {
        let s = self.defect.dim() / 2;
        let mut worst = 0.0f64;
        for i in 0..2 * s {
            for j in 0..2 * s {
                if (i, j) == (0, s) || (i, j) == (s, 0) {
                    continue;
                }
                worst = worst.max(self.defect.entry(i, j).norm());
            }
        }
        worst
    }
}

/// Assemble F - 1 for the given δ ≥ 0 and weight, with the γ-average done
/// analytically and the J-moments by quadrature.
pub fn frame_operator_defect(
    cfg: &FrameConfig,
    data: &GKSpectrumData,
    weight: &MomentWeight,
) -> Result<FrameDefect> {
    if cfg.delta < 0.0 {
        return Err(Error::InvalidParameter {
            name: "delta".into(),
            requirement: "a nonnegative value".into(),
        });
    }
    let s = cfg.sector_levels;
    if s == 0 || s > data.levels() {
        return Err(Error::InvalidParameter {
            name: "sector_levels".into(),
            requirement: format!("between 1 and the {} tabulated levels", data.levels()),
        });
    }
    let moments = weight.raw_moments(s - 1)?;
    let mut m = DMatrix::<C64>::zeros(2 * s, 2 * s);
    for n in 0..s {
        let diag = moments[n] / data.rho(n) - 1.0;
        m[(n, n)] = C64::new(diag, 0.0);
        m[(s + n, s + n)] = C64::new(diag, 0.0);
    }
    let cross_corner = if cfg.delta == 0.0 {
        let c = moments[0] * moments[0];
        m[(0, s)] = C64::new(c, 0.0);
        m[(s, 0)] = C64::new(c, 0.0);
        c
    } else {
        0.0
    };
    let max_abs = (0..2 * s)
        .flat_map(|i| (0..2 * s).map(move |j| (i, j)))
        .fold(0.0f64, |w, (i, j)| w.max(m[(i, j)].norm()));

    let oracle = if cfg.oracle_gammas.is_empty() {
        vec![]
    } else {
        finite_gamma_oracle(cfg, data, weight)?
    };

    Ok(FrameDefect {
        defect: Operator::from_matrix_dense(m),
        max_abs,
        cross_corner,
        oracle,
    })
}

/// Numerically γ-averaged off-identity leakage at each finite Γ: the
/// largest magnitude among the sector off-diagonal and cross elements of
/// F_Γ on the oracle block.
fn finite_gamma_oracle(
    cfg: &FrameConfig,
    data: &GKSpectrumData,
    weight: &MomentWeight,
) -> Result<Vec<(f64, f64)>> {
    let s = cfg.oracle_levels.min(data.levels());
    let half = weight.half_moments(2 * (s - 1))?;
    let full = weight.raw_moments(s - 1)?;
    let mut out = Vec::with_capacity(cfg.oracle_gammas.len());
    for &big_gamma in &cfg.oracle_gammas {
        let mut worst = 0.0f64;
        for n in 0..s {
            for mm in 0..s {
                // sector off-diagonal: frequency ε_n - ε_m, J1-moment
                // (n+m)/2 against sqrt(ρ_n ρ_m), times the normalized
                // J2 mass
                if n != mm {
                    let lambda = data.eps(n) - data.eps(mm);
                    let factor = half[n + mm] * full[0] / (data.rho(n) * data.rho(mm)).sqrt();
                    worst = worst.max((gamma_average_numeric(lambda, big_gamma) * factor).abs());
                }
                // cross sector: frequency ε_n + ε_m + 2δ
                let lambda = data.eps(n) + data.eps(mm) + 2.0 * cfg.delta;
                let factor = half[n] * half[mm] / (data.rho(n) * data.rho(mm)).sqrt();
                worst = worst.max((gamma_average_numeric(lambda, big_gamma) * factor).abs());
            }
        }
        out.push((big_gamma, worst));
    }
    Ok(out)
}

/// (1/2Γ) ∫_{-Γ}^{Γ} e^{-iλγ} dγ = (1/Γ) ∫_0^Γ cos(λγ) dγ by symmetry,
/// via composite Simpson with the panel count tied to the total phase.
fn gamma_average_numeric(lambda: f64, big_gamma: f64) -> f64 {
    if lambda == 0.0 {
        return 1.0;
    }
    let cycles = (lambda.abs() * big_gamma) / std::f64::consts::TAU;
    let intervals = ((cycles * 128.0).ceil() as usize).clamp(256, 16_000_000);
    let intervals = intervals + intervals % 2;
    let h = big_gamma / intervals as f64;
    let mut acc = 1.0 + (lambda * big_gamma).cos();
    for k in 1..intervals {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * (lambda * h * k as f64).cos();
    }
    acc * h / 3.0 / big_gamma
}

/// Least-squares reading of the decay exponent from (Γ, leakage) pairs:
/// the slope of log10 leakage against log10 Γ between the first and last
/// points.
pub fn oracle_slope(oracle: &[(f64, f64)]) -> f64 {
    assert!(oracle.len() >= 2);
    let (g0, l0) = oracle[0];
    let (g1, l1) = oracle[oracle.len() - 1];
    (l1.log10() - l0.log10()) / (g1.log10() - g0.log10())
}
