//! JSON report shapes shared by the verification suites and the
//! spectral-side evaluator. Every report embeds the configuration, the seed,
//! and the tool version so runs can be reproduced.

use crate::error::Result;
use serde::Serialize;
use std::path::Path;

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

impl CaseResult {
    /// measured ≤ bound
    pub fn le(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        CaseResult {
            name: name.into(),
            measured,
            bound,
            pass: measured <= bound && measured.is_finite(),
        }
    }

    /// measured ≥ bound
    pub fn ge(name: impl Into<String>, measured: f64, bound: f64) -> Self {
        CaseResult {
            name: name.into(),
            measured,
            bound,
            pass: measured >= bound && measured.is_finite(),
        }
    }

    /// measured inside [lo, hi], encoded with bound = hi
    pub fn within(name: impl Into<String>, measured: f64, lo: f64, hi: f64) -> Self {
        CaseResult {
            name: name.into(),
            measured,
            bound: hi,
            pass: measured >= lo && measured <= hi,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub version: String,
    pub seed: u64,
    pub config: serde_json::Value,
    pub cases: Vec<CaseResult>,
    pub max_deviation: f64,
    pub fitted_constants: Vec<f64>,
    pub pass: bool,
    pub elapsed_seconds: f64,
}

impl VerifyReport {
    pub fn new(suite: &str, seed: u64, config: serde_json::Value) -> Self {
        VerifyReport {
            suite: suite.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            config,
            cases: Vec::new(),
            max_deviation: 0.0,
            fitted_constants: Vec::new(),
            pass: true,
            elapsed_seconds: 0.0,
        }
    }

    pub fn push(&mut self, case: CaseResult) {
        self.pass &= case.pass;
        if case.measured.is_finite() {
            self.max_deviation = self.max_deviation.max(case.measured);
        } else {
            self.max_deviation = f64::INFINITY;
        }
        self.cases.push(case);
    }

    /// Record a deviation-style case where `measured` is the deviation itself.
    pub fn check_le(&mut self, name: impl Into<String>, measured: f64, bound: f64) {
        self.push(CaseResult::le(name, measured, bound));
    }

    pub fn failing_cases(&self) -> Vec<&CaseResult> {
        self.cases.iter().filter(|c| !c.pass).collect()
    }
}

pub fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

/// Floats in CSV output carry 17 significant digits so reruns are
/// byte-identical and lossless.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}
