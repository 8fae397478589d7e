//! Gazeau-Klauder coherent states for the intertwined pair: scalar states
//! built from a strictly increasing spectrum, their two-sector vector
//! generalization on C^2 (x) H, and the verification machinery around them
//! (normalization, action identity, temporal stability, ladder
//! eigen-relations, moment problem and frame operator).

mod frame;
mod moments;
mod scalar;
mod spectrum;
mod vector;
mod xop;

pub use frame::{frame_operator_defect, oracle_slope, FrameConfig, FrameDefect};
pub use moments::{gauss_laguerre, moment_check, MomentWeight, Quadrature};
pub use scalar::{apply_a_gamma_scalar, evolve_scalar, scalar_gk_state, ScalarGKState};
pub use spectrum::{big_m, series_cutoff, GKSpectrumData};
pub use vector::{
    a_gamma_eigen_residual, action_identity, apply_a_gamma, apply_a_gamma_dagger, continuity_check,
    evolve, synthesize_vector_cs, ActionIdentity, VectorCSParams, VectorCoherentState,
};
pub use xop::{build_x_operator, check_x_relations, XOperatorData, XRelationCase};
