//! Two-player 2×2 games under a generalized quantization scheme.
//!
//! Each player acts on one qubit of a γ-entangled initial state with a
//! two-parameter unitary `U(θ, φ) = cos(θ/2)·R(φ) + sin(θ/2)·C`, and an
//! arbiter measures in a δ-entangled basis. Payoffs are obtained two ways:
//!
//! * [`scheme::payoffs_oracle`] simulates the state and projects onto the
//!   measurement basis. It is the ground truth and works for any bimatrix.
//! * [`closed_form`] evaluates the analytic Battle-of-the-Sexes expressions
//!   and their parameter-restricted reductions.
//!
//! [`equilibrium`] searches a discretized strategy space for ε-Nash profiles,
//! and [`verify`] runs the numerical certification suite that ties the two
//! payoff routes together.

pub mod closed_form;
pub mod complex;
pub mod equilibrium;
mod error;
pub mod scheme;
pub mod verify;

pub use closed_form::{BosCoefficients, FormVariant};
pub use complex::{apply_local, inner_product, is_unitary, Complex, Mat2, TwoQubitState};
pub use equilibrium::{Player, ProfileResult, StrategyGrid, SweepRow};
pub use error::{Error, Result};
pub use scheme::{Bos, GameMatrix, MeasurementBasis, Outcome, PayoffPair, PhiRange, SchemeParams, StrategyParams};

/// Default absolute tolerance for numerical comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
