use std::fs::File;
use std::io::{self, BufWriter, Write};

use anyhow::{Context, Result};
use serde_json::json;

use gqs_core::closed_form::payoff_general;
use gqs_core::equilibrium::ProfileSample;
use gqs_core::equilibrium::{epsilon_nash, evaluate_grid, sweep};
use gqs_core::scheme::{final_state, measurement_basis, outcome_probabilities};
use gqs_core::verify::{self, SuiteConfig};
use gqs_core::{GameMatrix, StrategyParams};

use crate::config::{OutputFormat, RunConfig};
use crate::output::{sig15, EquilibriumRecord, ProfileRecord, SummaryRecord};

/// How a command finished, mapped to the process exit code by `main`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 2,
        }
    }
}

/// Opens the output sink before any computation so a bad path fails fast.
fn open_sink(cfg: &RunConfig) -> Result<Box<dyn Write>> {
    Ok(match &cfg.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot write output file {path}"))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn describe_game(game: &GameMatrix) -> String {
    match game.bos() {
        Some(b) => format!(
            "BoS(alpha={}, beta={}, sigma={})",
            sig15(b.alpha()),
            sig15(b.beta()),
            sig15(b.sigma())
        ),
        None => {
            let cells: Vec<String> = gqs_core::Outcome::ALL
                .iter()
                .map(|&o| {
                    let (a, b) = game.cell(o);
                    format!("{o}=({}, {})", sig15(a), sig15(b))
                })
                .collect();
            format!("matrix[{}]", cells.join(" "))
        }
    }
}

fn describe_strategy(s: &StrategyParams) -> String {
    format!("theta={} phi={}", sig15(s.theta()), sig15(s.phi()))
}

pub fn payoff(cfg: &RunConfig) -> Result<Status> {
    let scheme = cfg.single_scheme()?;
    let mut out = open_sink(cfg)?;

    let state = final_state(scheme.gamma(), &cfg.s1, &cfg.s2)?;
    let probs = outcome_probabilities(&state, &measurement_basis(scheme.delta())?);
    let oracle = cfg.game.expected_payoffs(&probs);
    let closed = payoff_general(&cfg.game, &scheme, &cfg.s1, &cfg.s2).ok();
    let record = ProfileRecord::new(
        &scheme,
        &ProfileSample {
            s1: cfg.s1,
            s2: cfg.s2,
            probabilities: probs,
            payoffs: oracle,
        },
    );

    match cfg.format {
        Some(OutputFormat::Csv) => {
            writeln!(out, "{}", ProfileRecord::HEADER)?;
            writeln!(out, "{}", record.to_csv())?;
        }
        Some(OutputFormat::Json) => {
            let extra = closed
                .map(|c| {
                    vec![
                        ("closed_a", c.alice),
                        ("closed_b", c.bob),
                        ("diff_a", (c.alice - oracle.alice).abs()),
                        ("diff_b", (c.bob - oracle.bob).abs()),
                    ]
                })
                .unwrap_or_default();
            writeln!(out, "{}", record.to_json_with(&extra))?;
        }
        None => {
            writeln!(out, "game: {}", describe_game(&cfg.game))?;
            writeln!(
                out,
                "scheme: gamma={} delta={}",
                sig15(scheme.gamma()),
                sig15(scheme.delta())
            )?;
            writeln!(out, "s1: {}", describe_strategy(&cfg.s1))?;
            writeln!(out, "s2: {}", describe_strategy(&cfg.s2))?;
            writeln!(
                out,
                "probabilities: p_oo={} p_ot={} p_to={} p_tt={}",
                sig15(probs[0]),
                sig15(probs[1]),
                sig15(probs[2]),
                sig15(probs[3])
            )?;
            writeln!(out, "oracle: alice={} bob={}", sig15(oracle.alice), sig15(oracle.bob))?;
            match closed {
                Some(c) => {
                    writeln!(out, "closed-form: alice={} bob={}", sig15(c.alice), sig15(c.bob))?;
                    writeln!(
                        out,
                        "abs-diff: alice={} bob={}",
                        sig15((c.alice - oracle.alice).abs()),
                        sig15((c.bob - oracle.bob).abs())
                    )?;
                }
                None => writeln!(out, "closed-form: n/a (not a Battle of the Sexes game)")?,
            }
        }
    }
    out.flush()?;
    Ok(Status::Success)
}

pub fn verify(cfg: &RunConfig) -> Result<Status> {
    let mut out = open_sink(cfg)?;
    let report = verify::run(cfg.seed, &SuiteConfig::default());
    match cfg.format {
        Some(OutputFormat::Json) => {
            let checks: Vec<_> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "samples": c.samples,
                        "max_dev": c.max_deviation,
                        "tol": c.tolerance,
                        "required": c.required,
                        "passed": c.passed,
                        "note": c.note,
                    })
                })
                .collect();
            let v = json!({
                "seed": report.seed,
                "passed": report.all_required_passed(),
                "checks": checks,
            });
            writeln!(out, "{v}")?;
        }
        Some(OutputFormat::Csv) => {
            writeln!(out, "name,samples,max_dev,tol,required,passed")?;
            for c in &report.checks {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    c.name,
                    c.samples,
                    sig15(c.max_deviation),
                    sig15(c.tolerance),
                    c.required,
                    c.passed
                )?;
            }
        }
        None => write!(out, "{report}")?,
    }
    out.flush()?;
    Ok(if report.all_required_passed() {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

pub fn sweep_cmd(cfg: &RunConfig) -> Result<Status> {
    let schemes = cfg.sweep_schemes()?;
    let mut out = open_sink(cfg)?;
    let json = cfg.format == Some(OutputFormat::Json);

    if cfg.summary {
        if !json {
            writeln!(out, "{}", SummaryRecord::HEADER)?;
        }
        for row in sweep(&cfg.game, &schemes, &cfg.grid, cfg.eps)? {
            let rec = SummaryRecord(&row);
            writeln!(out, "{}", if json { rec.to_json() } else { rec.to_csv() })?;
        }
    } else {
        if !json {
            writeln!(out, "{}", ProfileRecord::HEADER)?;
        }
        for scheme in &schemes {
            for sample in evaluate_grid(&cfg.game, scheme, &cfg.grid) {
                let rec = ProfileRecord::new(scheme, &sample);
                writeln!(out, "{}", if json { rec.to_json() } else { rec.to_csv() })?;
            }
        }
    }
    out.flush()?;
    Ok(Status::Success)
}

pub fn equilibria(cfg: &RunConfig) -> Result<Status> {
    let scheme = cfg.single_scheme()?;
    let mut out = open_sink(cfg)?;
    let found = epsilon_nash(&cfg.game, &scheme, &cfg.grid, cfg.eps)?;
    let records = found.iter().map(|p| EquilibriumRecord {
        scheme: &scheme,
        profile: p,
    });

    match cfg.format {
        Some(OutputFormat::Csv) => {
            writeln!(out, "{}", EquilibriumRecord::HEADER)?;
            for r in records {
                writeln!(out, "{}", r.to_csv())?;
            }
        }
        Some(OutputFormat::Json) => {
            for r in records {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        None => {
            writeln!(out, "game: {}", describe_game(&cfg.game))?;
            writeln!(
                out,
                "scheme: gamma={} delta={} grid={}x{} eps={}",
                sig15(scheme.gamma()),
                sig15(scheme.delta()),
                cfg.grid_steps.0,
                cfg.grid_steps.1,
                sig15(cfg.eps)
            )?;
            writeln!(out, "equilibria: {}", found.len())?;
            for p in &found {
                writeln!(
                    out,
                    "alice=({}) bob=({}) payoffs=({}, {}) eps_cert={}",
                    describe_strategy(&p.s1),
                    describe_strategy(&p.s2),
                    sig15(p.payoffs.alice),
                    sig15(p.payoffs.bob),
                    sig15(p.eps_cert)
                )?;
            }
        }
    }
    out.flush()?;
    Ok(Status::Success)
}
