//! Envelope parameter sweeps driven by a JSON config, emitting plot-ready
//! CSV. Grid points run concurrently; assembly is single-threaded and the
//! output is deterministic for a fixed config.

use super::report::fmt_f64;
use crate::error::{Error, Result};
use crate::reciprocity::{
    hcal_envelope_report, tilde_envelope_dyadic, tilde_envelope_transition, EnvelopeReport,
    GridQuality,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub t_g: Vec<f64>,
    /// Dyadic regimes T = t_g^θ for the first- and mixed-moment sweeps.
    #[serde(default)]
    pub theta: Vec<f64>,
    /// Transition regimes T = 2t_g − t_g^δ.
    #[serde(default)]
    pub transition_delta: Vec<f64>,
    /// Which transform family: "hcal", "tilde-dyadic", or "tilde-transition".
    pub family: String,
    pub m: u32,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub out: Option<std::path::PathBuf>,
    #[serde(default)]
    pub seed: u64,
}

fn default_tol() -> f64 {
    1e-6
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t_g.is_empty() {
            return Err(Error::Config("t_g list must be nonempty".into()));
        }
        match self.family.as_str() {
            "hcal" | "tilde-dyadic" => {
                if self.theta.is_empty() {
                    return Err(Error::Config("dyadic sweeps need a theta grid".into()));
                }
                for &th in &self.theta {
                    if !(0.0 < th && th < 1.0) {
                        return Err(Error::Config(format!("theta {th} outside (0, 1)")));
                    }
                }
            }
            "tilde-transition" => {
                if self.transition_delta.is_empty() {
                    return Err(Error::Config(
                        "transition sweeps need a transition_delta grid".into(),
                    ));
                }
                for &d in &self.transition_delta {
                    if !(1.0 / 3.0 < d && d < 1.0) {
                        return Err(Error::Config(format!(
                            "transition exponent {d} outside (1/3, 1)"
                        )));
                    }
                }
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown family `{other}`; expected hcal, tilde-dyadic, or tilde-transition"
                )))
            }
        }
        Ok(())
    }
}

pub struct Block {
    t_g: f64,
    regime: f64,
    report: EnvelopeReport,
}

fn run_blocks(config: &SweepConfig) -> Result<Vec<Block>> {
    let mut jobs: Vec<(f64, f64)> = Vec::new();
    let regimes: &[f64] = match config.family.as_str() {
        "tilde-transition" => &config.transition_delta,
        _ => &config.theta,
    };
    for &t_g in &config.t_g {
        for &r in regimes {
            jobs.push((t_g, r));
        }
    }
    let family = config.family.clone();
    let m = config.m;
    let blocks: Result<Vec<Block>> = jobs
        .par_iter()
        .map(|&(t_g, regime)| {
            let report = match family.as_str() {
                "hcal" => hcal_envelope_report(t_g, regime, m, GridQuality::Envelope),
                "tilde-dyadic" => tilde_envelope_dyadic(t_g, regime, m, GridQuality::Envelope),
                _ => tilde_envelope_transition(t_g, regime, m, GridQuality::Envelope),
            }?;
            Ok(Block {
                t_g,
                regime,
                report,
            })
        })
        .collect();
    blocks
}

fn emit_csv(config: &SweepConfig, blocks: &[Block], w: &mut impl std::io::Write) -> Result<()> {
    writeln!(w, "# specrec sweep v{}", env!("CARGO_PKG_VERSION"))?;
    writeln!(w, "# seed={}", config.seed)?;
    writeln!(
        w,
        "# config={}",
        serde_json::to_string(config)? // single-line echo for reproducibility
    )?;
    writeln!(
        w,
        "family,t_g,regime,abscissa,measured,envelope,ratio,fitted_constant,suppressed_abscissa,suppressed_value"
    )?;
    for b in blocks {
        for ((t, meas), env) in b
            .report
            .grid
            .iter()
            .zip(b.report.measured.iter())
            .zip(b.report.envelope.iter())
        {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{}",
                config.family,
                fmt_f64(b.t_g),
                fmt_f64(b.regime),
                fmt_f64(*t),
                fmt_f64(*meas),
                fmt_f64(*env),
                fmt_f64(meas / env),
                fmt_f64(b.report.fitted_constant),
                fmt_f64(b.report.suppressed_abscissa.unwrap_or(f64::NAN)),
                fmt_f64(b.report.suppressed_value.unwrap_or(f64::NAN)),
            )?;
        }
    }
    Ok(())
}

pub fn run_from_path(config_path: &Path, out_override: Option<&Path>) -> Result<()> {
    let text = std::fs::read_to_string(config_path)?;
    let config: SweepConfig =
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("bad sweep config: {e}")))?;
    config.validate()?;
    let blocks = run_blocks(&config)?;
    let out = out_override.or(config.out.as_deref());
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            emit_csv(&config, &blocks, &mut buf)?;
            std::fs::write(path, buf)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit_csv(&config, &blocks, &mut lock)?;
        }
    }
    Ok(())
}

/// In-memory variant for tests: returns the CSV bytes.
pub fn run_to_string(config: &SweepConfig) -> Result<String> {
    config.validate()?;
    let blocks = run_blocks(config)?;
    let mut buf = Vec::new();
    emit_csv(config, &blocks, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv is utf8"))
}
