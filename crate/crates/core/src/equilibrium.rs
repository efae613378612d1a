//! Best responses and ε-Nash certification on a discretized strategy space.
//!
//! All payoffs come from the simulated measurement, so any 2×2 bimatrix can
//! be searched. Profile tables are filled in parallel and read back in grid
//! index order, so the results do not depend on thread scheduling.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::closed_form::bos_payoff_general;
use crate::complex::Mat2;
use crate::error::{Error, Result};
use crate::scheme::{strategy_op, GameMatrix, PayoffPair, PhiRange, PreparedScheme, SchemeParams, StrategyParams};

/// Payoffs within this distance of the maximum count as tied best responses.
pub const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Alice,
    Bob,
}

/// A rectangular grid of `(θ, φ)` strategies for one player. Both players
/// draw from the same grid.
///
/// Points are ordered θ-major: index `i·phis.len() + j` is
/// `(thetas[i], phis[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyGrid {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    points: Vec<StrategyParams>,
}

impl StrategyGrid {
    pub const DEFAULT_THETA_STEPS: usize = 33;
    pub const DEFAULT_PHI_STEPS: usize = 17;

    /// Evenly spaced grid. θ covers `[0, π]` including both ends. The narrow
    /// φ range covers `[0, π/2]` including both ends. The full φ range
    /// takes `phi_steps` points from `[0, 2π)`. A single step means the
    /// lower endpoint alone.
    pub fn uniform(theta_steps: usize, phi_steps: usize, phi_range: PhiRange) -> Result<Self> {
        if theta_steps == 0 || phi_steps == 0 {
            return Err(Error::InvalidGrid(format!(
                "steps must be positive, got {theta_steps}x{phi_steps}"
            )));
        }
        let thetas = spaced(theta_steps, PI, true);
        let phis = spaced(phi_steps, phi_range.upper(), phi_range.upper_inclusive());
        Self::from_values(thetas, phis, phi_range)
    }

    pub fn default_for(phi_range: PhiRange) -> Self {
        Self::uniform(Self::DEFAULT_THETA_STEPS, Self::DEFAULT_PHI_STEPS, phi_range).expect("default grid is valid")
    }

    /// Just the two classical pure moves, `θ ∈ {0, π}` with `φ = 0`.
    pub fn pure_classical() -> Self {
        Self::from_values(vec![0.0, PI], vec![0.0], PhiRange::Narrow).expect("valid grid")
    }

    /// Grid from explicit coordinate lists, each validated against the
    /// strategy ranges.
    pub fn from_values(thetas: Vec<f64>, phis: Vec<f64>, phi_range: PhiRange) -> Result<Self> {
        if thetas.is_empty() || phis.is_empty() {
            return Err(Error::InvalidGrid("coordinate lists must be non-empty".into()));
        }
        let points = thetas
            .iter()
            .flat_map(|&t| phis.iter().map(move |&p| StrategyParams::with_range(t, p, phi_range)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { thetas, phis, points })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn points(&self) -> &[StrategyParams] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn spaced(steps: usize, upper: f64, inclusive: bool) -> Vec<f64> {
    match (steps, inclusive) {
        (1, _) => vec![0.0],
        (n, true) => (0..n)
            .map(|k| {
                if k == n - 1 {
                    upper
                } else {
                    upper * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
        (n, false) => (0..n).map(|k| upper * k as f64 / n as f64).collect(),
    }
}

/// A grid profile and how far it is from equilibrium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileResult {
    /// Grid index of Alice's strategy.
    pub alice_index: usize,
    /// Grid index of Bob's strategy.
    pub bob_index: usize,
    pub s1: StrategyParams,
    pub s2: StrategyParams,
    pub payoffs: PayoffPair,
    /// Largest payoff gain either player could get by deviating on the grid.
    pub eps_cert: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse {
    pub max_payoff: f64,
    /// Every grid strategy within [`TIE_TOL`] of `max_payoff`, in grid order.
    pub argmax: Vec<StrategyParams>,
}

/// Payoffs for every `(alice, bob)` pair of grid points, row-major by Alice.
struct PayoffTable {
    n: usize,
    cells: Vec<PayoffPair>,
}

impl PayoffTable {
    fn build(game: &GameMatrix, scheme: &SchemeParams, grid: &StrategyGrid) -> Self {
        let prepared = PreparedScheme::new(scheme);
        let ops: Vec<Mat2> = grid.points().iter().map(strategy_op).collect();
        let cells = ops
            .par_iter()
            .flat_map_iter(|u1| {
                ops.iter()
                    .map(|u2| game.expected_payoffs(&prepared.probabilities(u1, u2)))
                    .collect::<Vec<_>>()
            })
            .collect();
        Self { n: ops.len(), cells }
    }

    #[inline]
    fn get(&self, alice: usize, bob: usize) -> PayoffPair {
        self.cells[alice * self.n + bob]
    }
}

/// Exhaustive best response of `responder` against a fixed opponent strategy.
pub fn best_response(
    game: &GameMatrix,
    scheme: &SchemeParams,
    opponent: &StrategyParams,
    responder: Player,
    grid: &StrategyGrid,
) -> BestResponse {
    let prepared = PreparedScheme::new(scheme);
    let fixed = strategy_op(opponent);
    let values: Vec<f64> = grid
        .points()
        .iter()
        .map(|s| {
            let own = strategy_op(s);
            match responder {
                Player::Alice => game.expected_payoffs(&prepared.probabilities(&own, &fixed)).alice,
                Player::Bob => game.expected_payoffs(&prepared.probabilities(&fixed, &own)).bob,
            }
        })
        .collect();
    let max_payoff = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let argmax = grid
        .points()
        .iter()
        .zip(&values)
        .filter(|(_, &v)| max_payoff - v <= TIE_TOL)
        .map(|(s, _)| *s)
        .collect();
    BestResponse { max_payoff, argmax }
}

fn certified_profiles(table: &PayoffTable, grid: &StrategyGrid) -> Vec<ProfileResult> {
    let n = table.n;
    // Best Alice payoff against each Bob column, best Bob payoff against each Alice row.
    let alice_best: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| table.get(i, j).alice).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let bob_best: Vec<f64> = (0..n)
        .map(|i| (0..n).map(|j| table.get(i, j).bob).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let points = grid.points();
    (0..n * n)
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let payoffs = table.get(i, j);
            let gain = (alice_best[j] - payoffs.alice).max(bob_best[i] - payoffs.bob);
            ProfileResult {
                alice_index: i,
                bob_index: j,
                s1: points[i],
                s2: points[j],
                payoffs,
                eps_cert: gain.max(0.0),
            }
        })
        .collect()
}

/// Certificate for every profile on the grid, in index order.
pub fn certify_all(game: &GameMatrix, scheme: &SchemeParams, grid: &StrategyGrid) -> Vec<ProfileResult> {
    certified_profiles(&PayoffTable::build(game, scheme, grid), grid)
}

/// All grid profiles whose certificate is at most `eps`, sorted by
/// `(alice_index, bob_index)`. An empty list is a valid answer.
pub fn epsilon_nash(
    game: &GameMatrix,
    scheme: &SchemeParams,
    grid: &StrategyGrid,
    eps: f64,
) -> Result<Vec<ProfileResult>> {
    check_eps(eps)?;
    Ok(certify_all(game, scheme, grid)
        .into_iter()
        .filter(|p| p.eps_cert <= eps)
        .collect())
}

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidEps(eps))
    }
}

/// Summary of the equilibrium landscape at one `(γ, δ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub scheme: SchemeParams,
    pub equilibrium_count: usize,
    /// The equilibrium maximizing `min(alice, bob)`. Ties go to the larger
    /// payoff sum, then to the lowest grid index.
    pub best: Option<ProfileResult>,
    /// Largest `|oracle − closed form|` over the grid. `None` for
    /// non-BoS games.
    pub max_formula_deviation: Option<f64>,
}

fn fairest(equilibria: &[ProfileResult]) -> Option<ProfileResult> {
    let key = |p: &ProfileResult| (p.payoffs.alice.min(p.payoffs.bob), p.payoffs.alice + p.payoffs.bob);
    equilibria.iter().copied().reduce(|best, p| {
        let (kb, kp) = (key(&best), key(&p));
        if kp.0 > kb.0 || (kp.0 == kb.0 && kp.1 > kb.1) {
            p
        } else {
            best
        }
    })
}

/// One [`SweepRow`] per scheme, in input order.
pub fn sweep(game: &GameMatrix, schemes: &[SchemeParams], grid: &StrategyGrid, eps: f64) -> Result<Vec<SweepRow>> {
    check_eps(eps)?;
    Ok(schemes
        .iter()
        .map(|scheme| {
            let table = PayoffTable::build(game, scheme, grid);
            let equilibria: Vec<_> = certified_profiles(&table, grid)
                .into_iter()
                .filter(|p| p.eps_cert <= eps)
                .collect();
            let max_formula_deviation = game.bos().map(|bos| {
                let points = grid.points();
                (0..table.n)
                    .into_par_iter()
                    .map(|i| {
                        (0..table.n)
                            .map(|j| {
                                bos_payoff_general(bos, scheme, &points[i], &points[j]).max_abs_diff(&table.get(i, j))
                            })
                            .fold(0.0, f64::max)
                    })
                    .reduce(|| 0.0, f64::max)
            });
            SweepRow {
                scheme: *scheme,
                equilibrium_count: equilibria.len(),
                best: fairest(&equilibria),
                max_formula_deviation,
            }
        })
        .collect())
}

/// One evaluated profile: strategies, outcome probabilities and payoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub s1: StrategyParams,
    pub s2: StrategyParams,
    pub probabilities: [f64; 4],
    pub payoffs: PayoffPair,
}

/// Every `(alice, bob)` grid profile at one scheme, in index order.
pub fn evaluate_grid(game: &GameMatrix, scheme: &SchemeParams, grid: &StrategyGrid) -> Vec<ProfileSample> {
    let prepared = PreparedScheme::new(scheme);
    let points = grid.points();
    let ops: Vec<Mat2> = points.iter().map(strategy_op).collect();
    (0..points.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let prepared = &prepared;
            let ops = &ops;
            (0..points.len()).map(move |j| {
                let probabilities = prepared.probabilities(&ops[i], &ops[j]);
                ProfileSample {
                    s1: points[i],
                    s2: points[j],
                    probabilities,
                    payoffs: game.expected_payoffs(&probabilities),
                }
            })
        })
        .collect()
}
