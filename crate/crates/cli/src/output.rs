//! Row schemas and number formatting for CSV / JSON output.

use anyhow::{bail, Context, Result};

use gqs_core::equilibrium::{ProfileSample, SweepRow};
use gqs_core::{ProfileResult, SchemeParams};

/// Formats `x` with 15 significant digits, trailing zeros trimmed. Values
/// with a decimal exponent in `[-5, 15)` are written positionally, others
/// in `d.ddde±x` form. Negative zero prints as `0`.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// One evaluated strategy profile. Field order is the CSV column order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileRecord {
    pub gamma: f64,
    pub delta: f64,
    pub theta1: f64,
    pub phi1: f64,
    pub theta2: f64,
    pub phi2: f64,
    pub payoff_a: f64,
    pub payoff_b: f64,
    pub p_oo: f64,
    pub p_ot: f64,
    pub p_to: f64,
    pub p_tt: f64,
}

impl ProfileRecord {
    pub const HEADER: &'static str = "gamma,delta,theta1,phi1,theta2,phi2,payoff_a,payoff_b,p_oo,p_ot,p_to,p_tt";

    pub fn new(scheme: &SchemeParams, sample: &ProfileSample) -> Self {
        let p = sample.probabilities;
        Self {
            gamma: scheme.gamma(),
            delta: scheme.delta(),
            theta1: sample.s1.theta(),
            phi1: sample.s1.phi(),
            theta2: sample.s2.theta(),
            phi2: sample.s2.phi(),
            payoff_a: sample.payoffs.alice,
            payoff_b: sample.payoffs.bob,
            p_oo: p[0],
            p_ot: p[1],
            p_to: p[2],
            p_tt: p[3],
        }
    }

    fn values(&self) -> [f64; 12] {
        [
            self.gamma,
            self.delta,
            self.theta1,
            self.phi1,
            self.theta2,
            self.phi2,
            self.payoff_a,
            self.payoff_b,
            self.p_oo,
            self.p_ot,
            self.p_to,
            self.p_tt,
        ]
    }

    pub fn to_csv(&self) -> String {
        self.values().map(sig15).join(",")
    }

    pub fn from_csv(line: &str) -> Result<Self> {
        let v = line
            .split(',')
            .map(|f| f.trim().parse::<f64>().with_context(|| format!("bad field `{f}`")))
            .collect::<Result<Vec<_>>>()?;
        if v.len() != 12 {
            bail!("expected 12 fields, got {}", v.len());
        }
        Ok(Self {
            gamma: v[0],
            delta: v[1],
            theta1: v[2],
            phi1: v[3],
            theta2: v[4],
            phi2: v[5],
            payoff_a: v[6],
            payoff_b: v[7],
            p_oo: v[8],
            p_ot: v[9],
            p_to: v[10],
            p_tt: v[11],
        })
    }

    /// JSON object with the CSV column names, numbers rounded to 15
    /// significant digits.
    pub fn to_json(&self) -> String {
        self.to_json_with(&[])
    }

    /// Like [`to_json`](Self::to_json) with extra numeric fields appended.
    pub fn to_json_with(&self, extra: &[(&str, f64)]) -> String {
        let mut fields: Vec<_> = Self::HEADER.split(',').zip(self.values()).collect();
        fields.extend_from_slice(extra);
        json_object(&fields)
    }
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        sig15(x)
    } else {
        "null".into()
    }
}

fn json_object(fields: &[(&str, f64)]) -> String {
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("\"{k}\":{}", json_number(*v)))
        .collect();
    format!("{{{}}}", body.join(","))
}

/// One certified equilibrium profile.
pub struct EquilibriumRecord<'a> {
    pub scheme: &'a SchemeParams,
    pub profile: &'a ProfileResult,
}

impl EquilibriumRecord<'_> {
    pub const HEADER: &'static str = "gamma,delta,theta1,phi1,theta2,phi2,payoff_a,payoff_b,eps_cert";

    fn values(&self) -> [f64; 9] {
        let p = self.profile;
        [
            self.scheme.gamma(),
            self.scheme.delta(),
            p.s1.theta(),
            p.s1.phi(),
            p.s2.theta(),
            p.s2.phi(),
            p.payoffs.alice,
            p.payoffs.bob,
            p.eps_cert,
        ]
    }

    pub fn to_csv(&self) -> String {
        self.values().map(sig15).join(",")
    }

    pub fn to_json(&self) -> String {
        json_object(&Self::HEADER.split(',').zip(self.values()).collect::<Vec<_>>())
    }
}

/// One `(γ, δ)` summary row of a sweep. Missing values are empty in CSV
/// and `null` in JSON.
pub struct SummaryRecord<'a>(pub &'a SweepRow);

impl SummaryRecord<'_> {
    pub const HEADER: &'static str = "gamma,delta,equilibria,best_theta1,best_phi1,best_theta2,best_phi2,best_payoff_a,best_payoff_b,max_formula_dev";

    fn values(&self) -> [Option<f64>; 10] {
        let r = self.0;
        let b = r.best.as_ref();
        [
            Some(r.scheme.gamma()),
            Some(r.scheme.delta()),
            Some(r.equilibrium_count as f64),
            b.map(|p| p.s1.theta()),
            b.map(|p| p.s1.phi()),
            b.map(|p| p.s2.theta()),
            b.map(|p| p.s2.phi()),
            b.map(|p| p.payoffs.alice),
            b.map(|p| p.payoffs.bob),
            r.max_formula_deviation,
        ]
    }

    pub fn to_csv(&self) -> String {
        self.values()
            .iter()
            .map(|v| v.map(sig15).unwrap_or_default())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_json(&self) -> String {
        let body: Vec<String> = Self::HEADER
            .split(',')
            .zip(self.values())
            .map(|(k, v)| format!("\"{k}\":{}", v.map(json_number).unwrap_or_else(|| "null".into())))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}
