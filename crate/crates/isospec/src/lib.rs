//! Isospectral partner Hamiltonians from intertwining operators.
//!
//! Given a Hermitian `h1` and an operator `x1` with `[x1 x1†, h1] = 0` and
//! invertible `N1 = x1† x1`, the partner `h2 = N1^{-1}(x1† h1 x1)` is
//! Hermitian, weakly intertwined with `h1`, and shares its spectrum on
//! every eigenvector that survives the map `φ ↦ x1† φ`. This crate builds
//! such partners on truncated spaces, verifies every claimed identity as a
//! computable residual, iterates the construction into chains, and
//! synthesizes the associated two-sector coherent states together with
//! their resolution-of-identity machinery.
//!
//! Everything is truncation-aware: operators carry bandwidth metadata, and
//! identities of the infinite-dimensional theory are asserted on interior
//! blocks whose margins follow from the band arithmetic of the factors
//! involved.
//!
//! ## Examples
//!
//! The `examples/` directory is the guided tour; each file is runnable on
//! its own:
//!
//! - **`partner_pair`** — construct a partner from a ladder intertwiner
//!   and read its property report
//! - **`shift_intertwiner`** — the projector-shift construction that
//!   drops the lowest levels from a spectrum
//! - **`finite_matrices`** — the closed-form two- and three-dimensional
//!   examples, including the refused parameter branch
//! - **`quon_chain`** — chains over the q-deformed oscillator, with a
//!   cyclic lowering branch and a continuing raising branch
//! - **`unitary_chain`** — the conjugated chain x = a† e^{iB} and its
//!   truncation-convergence behaviour
//! - **`susy_algebra`** — the block superalgebra of the factorized case
//! - **`vector_coherent_states`** — synthesis and the verified state
//!   properties (norm, action identity, stability, ladder relations)
//! - **`resolution_of_identity`** — moment checks, the frame operator,
//!   and the rank-two defect at vanishing regularization
//! - **`x_operator`** — the block intertwiner on state space and its
//!   closed relations
//! - **`operator_io`** — the JSON wire format consumed by `isospec
//!   verify`
//!
//! ```bash
//! cargo run --example partner_pair
//! cargo run --release --example unitary_chain
//! ```
//!
//! ## Scenario runner
//!
//! The thin `isospec` binary maps every worked example onto a registered
//! scenario with pinned residual bounds and deterministic JSON/CSV
//! reports:
//!
//! ```bash
//! isospec list
//! isospec run quon-chain --q -0.5 --dim 40 --out report.json
//! isospec verify --h1 h1.json --x1 x1.json
//! ```
//!
//! Exit codes: 0 all bounds pass, 1 residual failure, 2 configuration
//! error, 3 hypothesis refusal. `ISOSPEC_TOL_SCALE` scales every scalable
//! bound for CI experiments.

pub mod error;
pub mod fock;
pub mod gk;
pub mod intertwine;
pub mod operator;
pub mod report;
pub mod scenario;

pub use error::{Error, Result};
pub use operator::{Band, EigenSystem, InteriorSpec, Operator};
