//! Run configuration: config-file parsing, flag overlay and validation.
//!
//! The config file is a flat list of `key = value` lines. Blank lines and
//! lines starting with `#` are ignored. Keys are the long flag names without
//! dashes (`bos`, `gamma`, `phi-range`, ...), plus `s1`, `s2`, `summary` and
//! `diagonal`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use gqs_core::{GameMatrix, PhiRange, SchemeParams, StrategyGrid, StrategyParams};

use crate::args::CommonArgs;

pub const KEYS: &[&str] = &[
    "bos",
    "matrix",
    "gamma",
    "delta",
    "s1",
    "s2",
    "grid",
    "eps",
    "seed",
    "format",
    "out",
    "phi-range",
    "summary",
    "diagonal",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("config line {}: expected `key = value`", n + 1))?;
            let key = key.trim();
            if !KEYS.contains(&key) {
                bail!("config line {}: unknown key `{key}`", n + 1);
            }
            map.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Self(map))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("cannot read config file {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config file {}", path.display()))
    }

    pub fn set(&mut self, key: &str, value: Option<impl Into<String>>) {
        if let Some(v) = value {
            self.0.insert(key.to_string(), v.into());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    /// Config file (if any) overlaid with the command-line flags.
    pub fn from_args(args: &CommonArgs) -> Result<Self> {
        let mut s = match &args.config {
            Some(path) => Self::load(path)?,
            None => Self::default(),
        };
        s.set("bos", args.bos.clone());
        s.set("matrix", args.matrix.clone());
        s.set("gamma", args.gamma.clone());
        s.set("delta", args.delta.clone());
        s.set("grid", args.grid.clone());
        s.set("eps", args.eps.clone());
        s.set("seed", args.seed.clone());
        s.set("format", args.format.clone());
        s.set("out", args.out.clone());
        s.set("phi-range", args.phi_range.clone());
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Fully validated settings for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub game: GameMatrix,
    pub gammas: Vec<f64>,
    pub deltas: Vec<f64>,
    pub phi_range: PhiRange,
    pub s1: StrategyParams,
    pub s2: StrategyParams,
    pub grid: StrategyGrid,
    pub grid_steps: (usize, usize),
    pub eps: f64,
    pub seed: u64,
    pub format: Option<OutputFormat>,
    pub out: Option<String>,
    pub summary: bool,
    pub diagonal: bool,
}

impl RunConfig {
    pub fn resolve(s: &Settings) -> Result<Self> {
        let game = match (s.get("bos"), s.get("matrix")) {
            (Some(_), Some(_)) => bail!("give either --bos or --matrix, not both"),
            (Some(b), None) => {
                let v = parse_reals("bos", b, 3)?;
                GameMatrix::battle_of_sexes(v[0], v[1], v[2])?
            }
            (None, Some(m)) => {
                let v = parse_reals("matrix", m, 8)?;
                GameMatrix::new([(v[0], v[1]), (v[2], v[3]), (v[4], v[5]), (v[6], v[7])])?
            }
            (None, None) => GameMatrix::battle_of_sexes(2.0, 1.0, 0.0)?,
        };

        let gammas = parse_angles("gamma", s.get("gamma").unwrap_or("0"))?;
        let deltas = parse_angles("delta", s.get("delta").unwrap_or("0"))?;
        for &g in &gammas {
            SchemeParams::new(g, 0.0)?;
        }
        for &d in &deltas {
            SchemeParams::new(0.0, d)?;
        }

        let phi_range = match s.get("phi-range").unwrap_or("narrow") {
            "narrow" => PhiRange::Narrow,
            "full" => PhiRange::Full,
            other => bail!("phi-range must be `narrow` or `full`, got `{other}`"),
        };
        let s1 = parse_strategy("s1", s.get("s1").unwrap_or("0,0"), phi_range)?;
        let s2 = parse_strategy("s2", s.get("s2").unwrap_or("0,0"), phi_range)?;

        let grid_steps = match s.get("grid") {
            None => (StrategyGrid::DEFAULT_THETA_STEPS, StrategyGrid::DEFAULT_PHI_STEPS),
            Some(g) => {
                let parts: Vec<&str> = g.split(',').map(str::trim).collect();
                if parts.len() != 2 {
                    bail!("grid must be THETA_STEPS,PHI_STEPS, got `{g}`");
                }
                let step = |p: &str| -> Result<usize> {
                    p.parse()
                        .map_err(|_| anyhow!("grid steps must be positive integers, got `{p}`"))
                };
                (step(parts[0])?, step(parts[1])?)
            }
        };
        let grid = StrategyGrid::uniform(grid_steps.0, grid_steps.1, phi_range)?;

        let eps = match s.get("eps") {
            None => 1e-9,
            Some(e) => {
                let v: f64 = e.parse().map_err(|_| anyhow!("eps must be a number, got `{e}`"))?;
                if !(v.is_finite() && v >= 0.0) {
                    bail!("eps must be finite and >= 0, got {v}");
                }
                v
            }
        };
        let seed = match s.get("seed") {
            None => 0,
            Some(v) => v
                .parse()
                .map_err(|_| anyhow!("seed must be an unsigned integer, got `{v}`"))?,
        };
        let format = match s.get("format") {
            None => None,
            Some("csv") => Some(OutputFormat::Csv),
            Some("json") => Some(OutputFormat::Json),
            Some(other) => bail!("format must be `csv` or `json`, got `{other}`"),
        };

        Ok(Self {
            game,
            gammas,
            deltas,
            phi_range,
            s1,
            s2,
            grid,
            grid_steps,
            eps,
            seed,
            format,
            out: s.get("out").map(str::to_string),
            summary: parse_flag("summary", s.get("summary"))?,
            diagonal: parse_flag("diagonal", s.get("diagonal"))?,
        })
    }

    /// The single scheme of a non-sweep command.
    pub fn single_scheme(&self) -> Result<SchemeParams> {
        match (self.gammas.as_slice(), self.deltas.as_slice()) {
            ([g], [d]) => Ok(SchemeParams::new(*g, *d)?),
            _ => bail!("this command takes a single --gamma and --delta"),
        }
    }

    /// Schemes of a sweep, in row order: gamma-major product, or
    /// `(γ, γ)` pairs in diagonal mode.
    pub fn sweep_schemes(&self) -> Result<Vec<SchemeParams>> {
        if self.diagonal {
            return self.gammas.iter().map(|&g| Ok(SchemeParams::eisert(g)?)).collect();
        }
        let mut out = Vec::with_capacity(self.gammas.len() * self.deltas.len());
        for &g in &self.gammas {
            for &d in &self.deltas {
                out.push(SchemeParams::new(g, d)?);
            }
        }
        Ok(out)
    }
}

fn parse_flag(name: &str, v: Option<&str>) -> Result<bool> {
    match v {
        None | Some("false") => Ok(false),
        Some("true") => Ok(true),
        Some(other) => bail!("{name} must be `true` or `false`, got `{other}`"),
    }
}

fn parse_reals(name: &str, text: &str, n: usize) -> Result<Vec<f64>> {
    let v = text
        .split(',')
        .map(|p| {
            let p = p.trim();
            p.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| anyhow!("{name}: `{p}` is not a finite number"))
        })
        .collect::<Result<Vec<_>>>()?;
    if v.len() != n {
        bail!("{name} expects {n} comma-separated values, got {}", v.len());
    }
    Ok(v)
}

/// Radians as a decimal literal, or one of `pi`, `pi/N`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let t = text.trim();
    let bad = || anyhow!("bad angle `{t}`: use radians or pi, pi/N, K*pi, K*pi/N");
    let (coef, rest) = match t.split_once('*') {
        Some((k, rest)) => (k.trim().parse::<f64>().map_err(|_| bad())?, rest.trim()),
        None => (1.0, t),
    };
    let value = if rest == "pi" {
        coef * PI
    } else if let Some(den) = rest.strip_prefix("pi/") {
        let d: f64 = den.parse().map_err(|_| bad())?;
        if d == 0.0 {
            return Err(bad());
        }
        coef * PI / d
    } else if t.contains('*') {
        return Err(bad());
    } else {
        t.parse().map_err(|_| bad())?
    };
    if !value.is_finite() {
        return Err(bad());
    }
    Ok(value)
}

fn parse_angles(name: &str, text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|p| parse_angle(p).with_context(|| format!("in --{name}")))
        .collect()
}

fn parse_strategy(name: &str, text: &str, range: PhiRange) -> Result<StrategyParams> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        bail!("{name} must be THETA,PHI, got `{text}`");
    }
    let theta = parse_angle(parts[0]).with_context(|| format!("in --{name}"))?;
    let phi = parse_angle(parts[1]).with_context(|| format!("in --{name}"))?;
    StrategyParams::with_range(theta, phi, range).with_context(|| format!("in --{name}"))
}
