use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "gqs",
    version,
    about = "Quantum 2x2 games under a generalized quantization scheme"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Payoffs and outcome probabilities for one strategy profile.
    Payoff(PayoffArgs),
    /// Run the seeded closed-form / oracle certification suite.
    Verify(CommonArgs),
    /// Evaluate a (gamma, delta) sweep over the strategy grid.
    Sweep(SweepArgs),
    /// Search the strategy grid for epsilon-Nash profiles.
    Equilibria(CommonArgs),
}

/// Flags shared by every subcommand. Each flag may also be given as a
/// `key = value` line in the `--config` file; flags win.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Flat key-value config file.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Battle of the Sexes payoffs alpha,beta,sigma with alpha > beta > sigma.
    #[arg(long, value_name = "A,B,S")]
    pub bos: Option<String>,
    /// Full bimatrix a_oo,b_oo,a_ot,b_ot,a_to,b_to,a_tt,b_tt.
    #[arg(long, value_name = "8 VALUES", allow_hyphen_values = true)]
    pub matrix: Option<String>,
    /// Initial-state entanglement in [0, pi/2]; a comma list for sweeps.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<String>,
    /// Measurement entanglement in [0, pi/2]; a comma list for sweeps.
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    /// Grid steps per player as THETA,PHI.
    #[arg(long, value_name = "T,P")]
    pub grid: Option<String>,
    /// Tolerance for the epsilon-Nash test (default 1e-9).
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<String>,
    /// Seed for the verification suite's random draws (default 0).
    #[arg(long)]
    pub seed: Option<String>,
    /// Output format: csv or json (text report when omitted).
    #[arg(long)]
    pub format: Option<String>,
    /// Write output to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<String>,
    /// narrow = [0, pi/2], full = [0, 2pi).
    #[arg(long = "phi-range")]
    pub phi_range: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PayoffArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Alice's strategy THETA,PHI.
    #[arg(long, allow_hyphen_values = true)]
    pub s1: Option<String>,
    /// Bob's strategy THETA,PHI.
    #[arg(long, allow_hyphen_values = true)]
    pub s2: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Emit one summary row per (gamma, delta) instead of one row per profile.
    #[arg(long)]
    pub summary: bool,
    /// Pair each gamma with delta = gamma instead of taking the product.
    #[arg(long)]
    pub diagonal: bool,
}
