//! Analytic payoffs for the Battle of the Sexes under the generalized
//! scheme, plus the reduced forms obtained by pinning some of the angles.
//!
//! Every function here is a direct evaluation of a displayed expression.
//! Each reduction takes only the parameters its restriction leaves free. The
//! pinned angles are baked in, so a reduction cannot be called off its
//! sub-space by accident. Agreement with
//! [`payoffs_oracle`](crate::scheme::payoffs_oracle) is checked in the tests
//! and by [`crate::verify`].

use crate::error::{Error, Result};
use crate::scheme::{Bos, GameMatrix, PayoffPair, SchemeParams, StrategyParams};

/// `ξ`, `η` and `χ` for a measurement angle δ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosCoefficients {
    pub xi: f64,
    pub eta: f64,
    pub chi: f64,
}

/// ```text
/// ξ = α cos²(δ/2) + β sin²(δ/2)
/// η = α sin²(δ/2) + β cos²(δ/2)
/// χ = (α − β)/2 · sin δ
/// ```
pub fn bos_coefficients(alpha: f64, beta: f64, delta: f64) -> BosCoefficients {
    let c2 = (delta / 2.0).cos().powi(2);
    let s2 = (delta / 2.0).sin().powi(2);
    BosCoefficients {
        xi: alpha * c2 + beta * s2,
        eta: alpha * s2 + beta * c2,
        chi: (alpha - beta) / 2.0 * delta.sin(),
    }
}

/// Selects between an expression exactly as it was published and the
/// version re-derived from the general payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormVariant {
    Printed,
    Corrected,
}

struct Halves {
    cos2: f64,
    sin2: f64,
}

fn halves(theta: f64) -> Halves {
    let (s, c) = (theta / 2.0).sin_cos();
    Halves {
        cos2: c * c,
        sin2: s * s,
    }
}

#[allow(clippy::too_many_arguments)]
fn general(
    alpha: f64,
    beta: f64,
    sigma: f64,
    gamma: f64,
    delta: f64,
    theta1: f64,
    theta2: f64,
    phi_sum: f64,
) -> PayoffPair {
    let BosCoefficients { xi, eta, chi } = bos_coefficients(alpha, beta, delta);
    let (h1, h2) = (halves(theta1), halves(theta2));
    let (sg2, cg2) = ((gamma / 2.0).sin().powi(2), (gamma / 2.0).cos().powi(2));
    let sin_g = gamma.sin();
    let both_o = h1.cos2 * h2.cos2;
    let both_t = h1.sin2 * h2.sin2;
    let phase = (2.0 * phi_sum).cos() * sin_g;
    let cross = theta1.sin() * theta2.sin() * phi_sum.sin();
    let mixing = (alpha + beta - 2.0 * sigma) * sin_g;

    let alice = both_o * (eta * sg2 + xi * cg2 + chi * phase - sigma)
        + both_t * (eta * cg2 + xi * sg2 - chi * sin_g - sigma)
        + (mixing - 2.0 * chi) / 4.0 * cross
        + sigma;
    let bob = both_o * (xi * sg2 + eta * cg2 - chi * phase - sigma)
        + both_t * (xi * cg2 + eta * sg2 + chi * sin_g - sigma)
        + (mixing + 2.0 * chi) / 4.0 * cross
        + sigma;
    PayoffPair { alice, bob }
}

/// The general analytic payoffs for any `(γ, δ, θ₁, φ₁, θ₂, φ₂)`.
pub fn bos_payoff_general(game: &Bos, scheme: &SchemeParams, s1: &StrategyParams, s2: &StrategyParams) -> PayoffPair {
    general(
        game.alpha(),
        game.beta(),
        game.sigma(),
        scheme.gamma(),
        scheme.delta(),
        s1.theta(),
        s2.theta(),
        s1.phi() + s2.phi(),
    )
}

/// Like [`bos_payoff_general`], but for an arbitrary matrix. Fails with
/// [`Error::NotBos`] unless the matrix was built as a Battle of the Sexes.
pub fn payoff_general(
    game: &GameMatrix,
    scheme: &SchemeParams,
    s1: &StrategyParams,
    s2: &StrategyParams,
) -> Result<PayoffPair> {
    let bos = game.bos().ok_or(Error::NotBos)?;
    Ok(bos_payoff_general(bos, scheme, s1, s2))
}

// The shared shape of the computational-basis reductions, where `angle` is
// the effective entanglement and `first`/`second` are the coefficients of
// sin² and cos² of half that angle:
//   c1²[c2²(α+β−2σ) − first·sin² − second·cos² + σ]
//     + c2²(−first·sin² − second·cos² + σ) + first·sin² + second·cos²
fn mw_payoff(first: f64, second: f64, sum_minus: f64, sigma: f64, angle: f64, own: f64, other: f64) -> f64 {
    let (s2, c2) = ((angle / 2.0).sin().powi(2), (angle / 2.0).cos().powi(2));
    let k = first * s2 + second * c2;
    own * (other * sum_minus - k + sigma) + other * (-k + sigma) + k
}

fn mw_pair(game: &Bos, angle: f64, theta1: f64, theta2: f64) -> PayoffPair {
    let (a, b, s) = (game.alpha(), game.beta(), game.sigma());
    let (c1, c2) = (halves(theta1).cos2, halves(theta2).cos2);
    let m = a + b - 2.0 * s;
    PayoffPair {
        alice: mw_payoff(a, b, m, s, angle, c1, c2),
        bob: mw_payoff(b, a, m, s, angle, c2, c1),
    }
}

/// `δ = 0`, `φ₁ = φ₂ = 0`: the computational-basis measurement with no
/// phases. The players effectively mix `I` and `C` with probabilities
/// `cos²(θᵢ/2)`.
pub fn payoff_case_a_i(game: &Bos, gamma: f64, theta1: f64, theta2: f64) -> PayoffPair {
    mw_pair(game, gamma, theta1, theta2)
}

/// `δ = 0`, `φ₁ + φ₂ = π/2`: the case a(i) payoffs plus the interference
/// term `(α+β−2σ)/4 · sin γ · sin θ₁ · sin θ₂` for both players.
pub fn payoff_case_a_ii(game: &Bos, gamma: f64, theta1: f64, theta2: f64) -> PayoffPair {
    let base = mw_pair(game, gamma, theta1, theta2);
    let extra = (game.alpha() + game.beta() - 2.0 * game.sigma()) / 4.0 * gamma.sin() * theta1.sin() * theta2.sin();
    PayoffPair {
        alice: base.alice + extra,
        bob: base.bob + extra,
    }
}

/// `δ = γ`, written with `ξ₁ = ξ(γ)`, `η₁ = η(γ)` and
/// `χ₁ = (α − β)/2 · sin²γ`.
pub fn payoff_case_b_i(game: &Bos, gamma: f64, s1: &StrategyParams, s2: &StrategyParams) -> PayoffPair {
    let (a, b, s) = (game.alpha(), game.beta(), game.sigma());
    let (sg2, cg2) = ((gamma / 2.0).sin().powi(2), (gamma / 2.0).cos().powi(2));
    let xi1 = a * cg2 + b * sg2;
    let eta1 = a * sg2 + b * cg2;
    let chi1 = (a - b) / 2.0 * gamma.sin().powi(2);
    let (h1, h2) = (halves(s1.theta()), halves(s2.theta()));
    let both_o = h1.cos2 * h2.cos2;
    let both_t = h1.sin2 * h2.sin2;
    let sum = s1.phi() + s2.phi();
    let phase = (2.0 * sum).cos();
    let cross = gamma.sin() * s1.theta().sin() * s2.theta().sin() * sum.sin();

    PayoffPair {
        alice: both_o * (eta1 * sg2 + xi1 * cg2 + chi1 * phase - s)
            + both_t * (eta1 * cg2 + xi1 * sg2 - chi1 - s)
            + (b - s) / 2.0 * cross
            + s,
        bob: both_o * (xi1 * sg2 + eta1 * cg2 - chi1 * phase - s)
            + both_t * (xi1 * cg2 + eta1 * sg2 + chi1 - s)
            + (a - s) / 2.0 * cross
            + s,
    }
}

/// `δ = γ = π/2`.
///
/// The published form carries `sin²(φ₁+φ₂)` on the `(α−σ)` term for Alice
/// (and on `(β−σ)` for Bob). Specializing the general payoffs gives
/// `cos²(φ₁+φ₂)` there, and only the corrected form agrees with the
/// simulated measurement. Both are available through `form`.
pub fn payoff_du_maximal(game: &Bos, s1: &StrategyParams, s2: &StrategyParams, form: FormVariant) -> PayoffPair {
    let (a, b, s) = (game.alpha(), game.beta(), game.sigma());
    let (sn1, c1) = (s1.theta() / 2.0).sin_cos();
    let (sn2, c2) = (s2.theta() / 2.0).sin_cos();
    let sum = s1.phi() + s2.phi();
    let direct = c1
        * c1
        * c2
        * c2
        * match form {
            FormVariant::Printed => sum.sin().powi(2),
            FormVariant::Corrected => sum.cos().powi(2),
        };
    let swapped = (c1 * c2 * sum.sin() + sn1 * sn2).powi(2);
    PayoffPair {
        alice: (a - s) * direct + (b - s) * swapped + s,
        bob: (a - s) * swapped + (b - s) * direct + s,
    }
}

/// `δ = γ = π/2`, `φ₁ = φ₂ = 0`: the classical mixed-strategy payoffs with
/// `p_i = cos²(θᵢ/2)`.
pub fn payoff_case_b_ii(game: &Bos, theta1: f64, theta2: f64) -> PayoffPair {
    let (a, b, s) = (game.alpha(), game.beta(), game.sigma());
    let (h1, h2) = (halves(theta1), halves(theta2));
    let both_o = h1.cos2 * h2.cos2;
    let both_t = h1.sin2 * h2.sin2;
    let mismatch = h1.cos2 * h2.sin2 + h1.sin2 * h2.cos2;
    PayoffPair {
        alice: a * both_o + b * both_t + s * mismatch,
        bob: b * both_o + a * both_t + s * mismatch,
    }
}

/// `φ₁ = φ₂ = 0` with independent γ and δ: the case a(i) shape in the
/// effective angle `γ − δ`.
pub fn payoff_case_c(game: &Bos, gamma: f64, delta: f64, theta1: f64, theta2: f64) -> PayoffPair {
    mw_pair(game, gamma - delta, theta1, theta2)
}

/// `γ = 0`: an unentangled initial state measured in the δ-entangled basis.
///
/// The interference term is `∓(α − β)/4 · sin δ · sin θ₁ · sin θ₂ · sin(φ₁+φ₂)`,
/// as the general payoffs give at `γ = 0`. See [`payoff_case_d_printed`] for
/// the published coefficient.
pub fn payoff_case_d(game: &Bos, delta: f64, s1: &StrategyParams, s2: &StrategyParams) -> PayoffPair {
    case_d_with(game, delta, s1, s2, 4.0)
}

/// Case d with the interference coefficient `(α − β)/2` as published. It
/// does not agree with the simulated measurement. It is kept for
/// reporting.
pub fn payoff_case_d_printed(game: &Bos, delta: f64, s1: &StrategyParams, s2: &StrategyParams) -> PayoffPair {
    case_d_with(game, delta, s1, s2, 2.0)
}

fn case_d_with(game: &Bos, delta: f64, s1: &StrategyParams, s2: &StrategyParams, divisor: f64) -> PayoffPair {
    let base = mw_pair(game, delta, s1.theta(), s2.theta());
    let term = case_d_interference(game, delta, s1, s2) * 2.0 / divisor;
    PayoffPair {
        alice: base.alice - term,
        bob: base.bob + term,
    }
}

/// `(α − β)/2 · sin δ · sin θ₁ · sin θ₂ · sin(φ₁+φ₂)`. This is the
/// phase-dependent term that an unentangled state picks up from an
/// entangled measurement.
pub fn case_d_interference(game: &Bos, delta: f64, s1: &StrategyParams, s2: &StrategyParams) -> f64 {
    (game.alpha() - game.beta()) / 2.0 * delta.sin() * s1.theta().sin() * s2.theta().sin() * (s1.phi() + s2.phi()).sin()
}
