//! The quantization scheme itself: entangled initial state, strategy
//! unitaries, entangled measurement basis and payoffs from outcome
//! probabilities.
//!
//! This is the reference route for every payoff in the crate. It never uses
//! the analytic expressions and works for arbitrary 2×2 bimatrices.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;

use crate::complex::{apply_local, inner_product, Complex, Mat2, TwoQubitState};
use crate::error::{Error, Result};

fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(name))
    }
}

fn closed_range(name: &'static str, value: f64, hi: f64, range: &'static str) -> Result<f64> {
    let value = finite(name, value)?;
    if (0.0..=hi).contains(&value) {
        Ok(value)
    } else {
        Err(Error::Domain { name, value, range })
    }
}

/// Entanglement angles of the scheme, both in `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    gamma: f64,
    delta: f64,
}

impl SchemeParams {
    pub fn new(gamma: f64, delta: f64) -> Result<Self> {
        Ok(Self {
            gamma: closed_range("gamma", gamma, FRAC_PI_2, "[0, pi/2]")?,
            delta: closed_range("delta", delta, FRAC_PI_2, "[0, pi/2]")?,
        })
    }

    /// Unentangled state measured in the computational basis.
    pub fn classical() -> Self {
        Self { gamma: 0.0, delta: 0.0 }
    }

    /// Entangled state of strength `gamma`, measured in the computational basis.
    pub fn marinatto_weber(gamma: f64) -> Result<Self> {
        Self::new(gamma, 0.0)
    }

    /// Measurement entanglement matched to the initial state (`δ = γ`).
    pub fn eisert(gamma: f64) -> Result<Self> {
        Self::new(gamma, gamma)
    }

    #[inline]
    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Admissible interval for the phase angle φ of a strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiRange {
    /// `[0, π/2]`
    #[default]
    Narrow,
    /// `[0, 2π)`
    Full,
}

impl PhiRange {
    pub fn contains(self, phi: f64) -> bool {
        match self {
            PhiRange::Narrow => (0.0..=FRAC_PI_2).contains(&phi),
            PhiRange::Full => (0.0..TAU).contains(&phi),
        }
    }

    /// Upper bound of the interval.
    pub fn upper(self) -> f64 {
        match self {
            PhiRange::Narrow => FRAC_PI_2,
            PhiRange::Full => TAU,
        }
    }

    /// True when the upper bound belongs to the range.
    pub fn upper_inclusive(self) -> bool {
        matches!(self, PhiRange::Narrow)
    }

    fn describe(self) -> &'static str {
        match self {
            PhiRange::Narrow => "[0, pi/2]",
            PhiRange::Full => "[0, 2pi)",
        }
    }
}

/// One player's strategy angles: `θ ∈ [0, π]` and `φ` in a [`PhiRange`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyParams {
    theta: f64,
    phi: f64,
}

impl StrategyParams {
    /// Validates against the narrow φ range.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        Self::with_range(theta, phi, PhiRange::Narrow)
    }

    pub fn with_range(theta: f64, phi: f64, range: PhiRange) -> Result<Self> {
        let theta = closed_range("theta", theta, PI, "[0, pi]")?;
        let phi = finite("phi", phi)?;
        if !range.contains(phi) {
            return Err(Error::Domain {
                name: "phi",
                value: phi,
                range: range.describe(),
            });
        }
        Ok(Self { theta, phi })
    }

    /// Always playing `O` (the identity).
    pub const fn pure_o() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }

    /// Always playing `T` (the flip).
    pub const fn pure_t() -> Self {
        Self { theta: PI, phi: 0.0 }
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Probability `cos²(θ/2)` of the classical move `O` that this strategy
    /// reproduces when phases play no role.
    pub fn classical_probability(&self) -> f64 {
        (self.theta / 2.0).cos().powi(2)
    }
}

/// A measurement outcome; Alice's letter first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    OO = 0,
    OT = 1,
    TO = 2,
    TT = 3,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::OO, Outcome::OT, Outcome::TO, Outcome::TT];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::OO => "OO",
            Outcome::OT => "OT",
            Outcome::TO => "TO",
            Outcome::TT => "TT",
        };
        f.write_str(s)
    }
}

/// Battle of the Sexes payoffs with `alpha > beta > sigma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bos {
    alpha: f64,
    beta: f64,
    sigma: f64,
}

impl Bos {
    pub fn new(alpha: f64, beta: f64, sigma: f64) -> Result<Self> {
        finite("alpha", alpha)?;
        finite("beta", beta)?;
        finite("sigma", sigma)?;
        if alpha > beta && beta > sigma {
            Ok(Self { alpha, beta, sigma })
        } else {
            Err(Error::BosOrdering { alpha, beta, sigma })
        }
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

/// A 2×2 bimatrix game; each cell holds `(alice, bob)` payoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameMatrix {
    cells: [(f64, f64); 4],
    bos: Option<Bos>,
}

impl GameMatrix {
    /// Cells in outcome order `OO, OT, TO, TT`.
    pub fn new(cells: [(f64, f64); 4]) -> Result<Self> {
        if cells.iter().all(|(a, b)| a.is_finite() && b.is_finite()) {
            Ok(Self { cells, bos: None })
        } else {
            Err(Error::NonFinite("payoff entry"))
        }
    }

    pub fn battle_of_sexes(alpha: f64, beta: f64, sigma: f64) -> Result<Self> {
        Bos::new(alpha, beta, sigma).map(Self::from)
    }

    pub fn bos(&self) -> Option<&Bos> {
        self.bos.as_ref()
    }

    #[inline]
    pub fn cell(&self, outcome: Outcome) -> (f64, f64) {
        self.cells[outcome.index()]
    }

    /// Expected payoffs for a probability vector over outcomes.
    pub fn expected_payoffs(&self, probs: &[f64; 4]) -> PayoffPair {
        let (alice, bob) = self
            .cells
            .iter()
            .zip(probs)
            .fold((0.0, 0.0), |(a, b), ((pa, pb), p)| (a + pa * p, b + pb * p));
        PayoffPair { alice, bob }
    }

    /// Classical mixed-strategy expectation where Alice plays `O` with
    /// probability `p` and Bob with probability `q`.
    pub fn mixed_expectation(&self, p: f64, q: f64) -> PayoffPair {
        self.expected_payoffs(&[p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)])
    }

    /// `(min, max)` of each player's four entries.
    pub fn payoff_bounds(&self) -> ((f64, f64), (f64, f64)) {
        let span = |pick: fn(&(f64, f64)) -> f64| {
            self.cells
                .iter()
                .map(pick)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        (span(|c| c.0), span(|c| c.1))
    }
}

impl From<Bos> for GameMatrix {
    fn from(g: Bos) -> Self {
        let Bos { alpha, beta, sigma } = g;
        Self {
            cells: [(alpha, beta), (sigma, sigma), (sigma, sigma), (beta, alpha)],
            bos: Some(g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffPair {
    pub fn new(alice: f64, bob: f64) -> Self {
        Self { alice, bob }
    }

    /// Larger of the two per-player absolute differences.
    pub fn max_abs_diff(&self, other: &PayoffPair) -> f64 {
        (self.alice - other.alice).abs().max((self.bob - other.bob).abs())
    }
}

/// The four entangled projector states used by the arbiter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    states: [TwoQubitState; 4],
}

impl MeasurementBasis {
    #[inline]
    pub fn state(&self, outcome: Outcome) -> &TwoQubitState {
        &self.states[outcome.index()]
    }

    pub fn states(&self) -> &[TwoQubitState; 4] {
        &self.states
    }

    /// `G[a][b] = ⟨ψ_a|ψ_b⟩`.
    pub fn gram(&self) -> [[Complex; 4]; 4] {
        let mut g = [[Complex::new(0.0, 0.0); 4]; 4];
        for (a, row) in g.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                *cell = inner_product(&self.states[a], &self.states[b]);
            }
        }
        g
    }

    /// Max-norm deviation of the Gram matrix from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        max_identity_deviation(&self.gram())
    }

    /// Max-norm deviation of `Σ_b |ψ_b⟩⟨ψ_b|` from the identity.
    pub fn completeness_error(&self) -> f64 {
        let mut sum = [[Complex::new(0.0, 0.0); 4]; 4];
        for s in &self.states {
            let amp = s.amplitudes();
            for (r, row) in sum.iter_mut().enumerate() {
                for (c, cell) in row.iter_mut().enumerate() {
                    *cell += amp[r] * amp[c].conj();
                }
            }
        }
        max_identity_deviation(&sum)
    }
}

fn max_identity_deviation(m: &[[Complex; 4]; 4]) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, row) in m.iter().enumerate() {
        for (c, z) in row.iter().enumerate() {
            let target = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((z - target).norm());
        }
    }
    worst
}

/// `cos(γ/2)|OO⟩ + i·sin(γ/2)|TT⟩`.
pub fn initial_state(gamma: f64) -> Result<TwoQubitState> {
    let gamma = closed_range("gamma", gamma, FRAC_PI_2, "[0, pi/2]")?;
    Ok(initial_state_unchecked(gamma))
}

fn initial_state_unchecked(gamma: f64) -> TwoQubitState {
    let (s, c) = (gamma / 2.0).sin_cos();
    let zero = Complex::new(0.0, 0.0);
    TwoQubitState::from_amplitudes([Complex::new(c, 0.0), zero, zero, Complex::new(0.0, s)])
}

/// `R(φ) = diag(e^{iφ}, e^{−iφ})`.
pub fn rotation_op(phi: f64) -> Mat2 {
    Mat2::diagonal(Complex::from_polar(1.0, phi), Complex::from_polar(1.0, -phi))
}

/// The flip `C` with `C|O⟩ = −|T⟩` and `C|T⟩ = |O⟩`.
pub fn flip_op() -> Mat2 {
    let zero = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    Mat2::from_entries([[zero, one], [-one, zero]])
}

/// `U(θ, φ) = cos(θ/2)·R(φ) + sin(θ/2)·C`.
pub fn strategy_op(s: &StrategyParams) -> Mat2 {
    let (sin, cos) = (s.theta / 2.0).sin_cos();
    rotation_op(s.phi).scale(Complex::new(cos, 0.0)) + flip_op().scale(Complex::new(sin, 0.0))
}

/// `(U(s1) ⊗ U(s2))` applied to the γ-entangled initial state.
pub fn final_state(gamma: f64, s1: &StrategyParams, s2: &StrategyParams) -> Result<TwoQubitState> {
    let initial = initial_state(gamma)?;
    Ok(apply_local(&strategy_op(s1), &strategy_op(s2), &initial))
}

/// The δ-entangled basis:
///
/// ```text
/// ψ_OO = cos(δ/2)|OO⟩ + i sin(δ/2)|TT⟩     ψ_TT = cos(δ/2)|TT⟩ + i sin(δ/2)|OO⟩
/// ψ_OT = cos(δ/2)|OT⟩ − i sin(δ/2)|TO⟩     ψ_TO = cos(δ/2)|TO⟩ − i sin(δ/2)|OT⟩
/// ```
pub fn measurement_basis(delta: f64) -> Result<MeasurementBasis> {
    let delta = closed_range("delta", delta, FRAC_PI_2, "[0, pi/2]")?;
    Ok(measurement_basis_unchecked(delta))
}

fn measurement_basis_unchecked(delta: f64) -> MeasurementBasis {
    let (s, c) = (delta / 2.0).sin_cos();
    let z = Complex::new(0.0, 0.0);
    let c = Complex::new(c, 0.0);
    let is = Complex::new(0.0, s);
    MeasurementBasis {
        states: [
            TwoQubitState::from_amplitudes([c, z, z, is]),
            TwoQubitState::from_amplitudes([z, c, -is, z]),
            TwoQubitState::from_amplitudes([z, -is, c, z]),
            TwoQubitState::from_amplitudes([is, z, z, c]),
        ],
    }
}

/// `p_b = |⟨ψ_b|state⟩|²` for each outcome, in `OO, OT, TO, TT` order.
pub fn outcome_probabilities(state: &TwoQubitState, basis: &MeasurementBasis) -> [f64; 4] {
    basis.states.map(|b| inner_product(&b, state).norm_sqr())
}

/// Initial state and measurement basis for one scheme, prepared once and
/// reused across many strategy profiles.
#[derive(Debug, Clone, Copy)]
pub struct PreparedScheme {
    initial: TwoQubitState,
    basis: MeasurementBasis,
}

impl PreparedScheme {
    pub fn new(scheme: &SchemeParams) -> Self {
        Self {
            initial: initial_state_unchecked(scheme.gamma),
            basis: measurement_basis_unchecked(scheme.delta),
        }
    }

    pub fn basis(&self) -> &MeasurementBasis {
        &self.basis
    }

    pub fn final_state(&self, u1: &Mat2, u2: &Mat2) -> TwoQubitState {
        apply_local(u1, u2, &self.initial)
    }

    /// Outcome probabilities for already-built strategy operators.
    pub fn probabilities(&self, u1: &Mat2, u2: &Mat2) -> [f64; 4] {
        outcome_probabilities(&self.final_state(u1, u2), &self.basis)
    }
}

/// Payoffs by explicit state evolution and projective measurement.
pub fn payoffs_oracle(
    game: &GameMatrix,
    scheme: &SchemeParams,
    s1: &StrategyParams,
    s2: &StrategyParams,
) -> PayoffPair {
    let probs = PreparedScheme::new(scheme).probabilities(&strategy_op(s1), &strategy_op(s2));
    game.expected_payoffs(&probs)
}
