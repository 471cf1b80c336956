//! Spectral-side evaluation of the summation formulas over ingested
//! eigendata, with the geometric side and a truncation estimate for the
//! continuous-weight case.

use super::dataset::SpectralDataset;
use super::report::emit_json;
use crate::arith::{divisor_count, divisor_eigenvalue, gcd, KloostermanCache};
use crate::complexfn::{zeta, Sign};
use crate::error::{Error, Result};
use crate::quad::{adaptive, KahanSum};
use crate::transforms::{
    k_transform, make_triple, spectral_measure_integral, TestFunctionTriple, TripleKind,
};
use num_complex::Complex64;
use serde::Serialize;
use std::path::Path;

/// Weight applied to the spectral parameters.
#[derive(Debug, Clone)]
pub enum WeightSpec {
    /// Even Gaussian bumps at ±center, fed to one sign of the summation
    /// formula; the geometric side is computable for this family.
    Gauss {
        sign: Sign,
        center: f64,
        width: f64,
    },
    Triple(TestFunctionTriple),
    BigH {
        t_g: f64,
    },
}

impl WeightSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad number `{s}` in weight spec")))
        };
        match parts.as_slice() {
            ["gauss-minus", c, w] => Ok(WeightSpec::Gauss {
                sign: Sign::Minus,
                center: num(c)?,
                width: num(w)?,
            }),
            ["gauss-plus", c, w] => Ok(WeightSpec::Gauss {
                sign: Sign::Plus,
                center: num(c)?,
                width: num(w)?,
            }),
            ["triple1", m, t] => Ok(WeightSpec::Triple(make_triple(
                TripleKind::Triple1,
                num(m)? as u32,
                num(t)?,
                None,
            )?)),
            ["triple2", m, t] => Ok(WeightSpec::Triple(make_triple(
                TripleKind::Triple2,
                num(m)? as u32,
                num(t)?,
                None,
            )?)),
            ["triple4", m, t, u] => Ok(WeightSpec::Triple(make_triple(
                TripleKind::Triple4,
                num(m)? as u32,
                num(t)?,
                Some(num(u)?),
            )?)),
            ["big-h", tg] => Ok(WeightSpec::BigH { t_g: num(tg)? }),
            _ => Err(Error::Config(format!(
                "unrecognised weight spec `{text}`; expected gauss-minus:C:W, gauss-plus:C:W, triple1:M:T, triple2:M:T, triple4:M:T:U, or big-h:TG"
            ))),
        }
    }

    fn h_of_t(&self, t: f64) -> f64 {
        match self {
            WeightSpec::Gauss { center, width, .. } => {
                (-((t - center) / width).powi(2)).exp() + (-((t + center) / width).powi(2)).exp()
            }
            WeightSpec::Triple(tr) => tr.h_minus(t) + tr.h_plus(t),
            WeightSpec::BigH { t_g } => crate::reciprocity::big_h(t, *t_g),
        }
    }

    fn support(&self) -> f64 {
        match self {
            WeightSpec::Gauss { center, width, .. } => center + 8.0 * width,
            WeightSpec::Triple(tr) => tr.minus_support().max(tr.plus_support()).max(10.0),
            WeightSpec::BigH { t_g } => 2.0 * t_g + 14.0,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GeometricSide {
    pub delta_term: f64,
    pub kloosterman_sum: f64,
    pub truncation_c: u64,
    pub tail_estimate: f64,
    pub total: f64,
}

#[derive(Debug, Serialize)]
pub struct SpectralSideReport {
    pub version: String,
    pub seed: u64,
    pub weight: String,
    pub m: u64,
    pub n: u64,
    pub synthetic: bool,
    pub records_used: usize,
    pub cusp_sum: f64,
    pub continuous_integral: f64,
    pub holomorphic_sum: f64,
    pub spectral_total: f64,
    pub geometric: Option<GeometricSide>,
    pub discrepancy: Option<f64>,
    pub discrepancy_budget: Option<f64>,
    pub pass: bool,
}

/// Continuous-spectrum term: (1/2π)∫ λ(m,t)λ(n,t)/|ζ(1+2it)|² h(t) dt.
pub fn continuous_part(m: u64, n: u64, h: &dyn Fn(f64) -> f64, t_max: f64) -> f64 {
    let mut f = |t: f64| {
        let z = match zeta(Complex64::new(1.0, 2.0 * t)) {
            Ok(z) => z,
            Err(_) => return 0.0,
        };
        divisor_eigenvalue(m, t) * divisor_eigenvalue(n, t) / z.norm_sqr() * h(t)
    };
    // even integrand; the 1/ζ(1+2it)² factor vanishes fast at t = 0
    2.0 * adaptive(&mut f, 1e-7, t_max, 1e-11, 1e-9, 20_000).value / (2.0 * std::f64::consts::PI)
}

/// Spectral side of the summation formula for the given weight.
pub fn spectral_side(
    dataset: &SpectralDataset,
    weight: &WeightSpec,
    m: u64,
    n: u64,
) -> Result<SpectralSideReport> {
    dataset.validate()?;
    let mut cusp = KahanSum::new();
    for (i, rec) in dataset.records.iter().enumerate() {
        let lam_m = dataset.lambda(i, m)?;
        let lam_n = dataset.lambda(i, n)?;
        let root_factor = match weight {
            WeightSpec::Gauss {
                sign: Sign::Minus, ..
            } => rec.eps_f as f64,
            _ => 1.0,
        };
        cusp.add(root_factor * lam_m * lam_n / rec.l1_adf * weight.h_of_t(rec.t_f));
    }
    let mut hol = KahanSum::new();
    if let WeightSpec::Triple(tr) = weight {
        for rec in &dataset.hol_records {
            let lam_m = rec.lambda.get(m as usize - 1).copied().unwrap_or(0.0);
            let lam_n = rec.lambda.get(n as usize - 1).copied().unwrap_or(0.0);
            hol.add(lam_m * lam_n / rec.l1_adf * tr.h_hol(rec.k_f));
        }
    }
    let t_max = dataset
        .continuous
        .map(|c| c.t_max)
        .unwrap_or(80.0)
        .max(weight.support());
    let continuous = continuous_part(m, n, &|t| weight.h_of_t(t), t_max);
    let geometric = match weight {
        WeightSpec::Gauss { sign, .. } => Some(geometric_side(weight, *sign, m, n)?),
        _ => None,
    };
    let spectral_total = cusp.value() + continuous + hol.value();
    let (discrepancy, budget, pass) = match &geometric {
        Some(g) => {
            let d = (spectral_total - g.total).abs();
            // the spectral side is only as complete as the dataset; the
            // comparison budget is the truncation estimate plus the weight
            // mass beyond the last ingested eigenvalue
            let t_last = dataset.records.last().map(|r| r.t_f).unwrap_or(0.0);
            let mut fm = |t: f64| weight.h_of_t(t) * t / std::f64::consts::PI.powi(2);
            let missing = adaptive(
                &mut fm,
                t_last,
                weight.support().max(t_last + 1.0),
                1e-11,
                1e-9,
                5_000,
            )
            .value
            .abs();
            let budget = g.tail_estimate + missing.max(1e-9);
            // a synthetic fixture exercises the plumbing only: its rows are
            // not eigenvalues of anything, so the two-sided comparison is
            // reported but never asserted
            let pass = dataset.synthetic || d <= budget;
            (Some(d), Some(budget), pass)
        }
        None => (None, None, true),
    };
    Ok(SpectralSideReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: 0,
        weight: format!("{weight:?}"),
        m,
        n,
        synthetic: dataset.synthetic,
        records_used: dataset.records.len(),
        cusp_sum: cusp.value(),
        continuous_integral: continuous,
        holomorphic_sum: hol.value(),
        spectral_total,
        geometric,
        discrepancy,
        discrepancy_budget: budget,
        pass,
    })
}

/// Geometric side: δ_{m,±n}·𝒩h + Σ_c S(m,±n;c)/c · (𝒦^± h)(√(mn)/c),
/// truncated with a fitted-decay tail estimate controlled by the Weil bound.
pub fn geometric_side(weight: &WeightSpec, sign: Sign, m: u64, n: u64) -> Result<GeometricSide> {
    let h = |t: f64| weight.h_of_t(t);
    let r_max = weight.support();
    let delta_term = if sign == Sign::Plus && m == n {
        spectral_measure_integral(&h, r_max).value
    } else {
        0.0
    };
    let cache = KloostermanCache::new();
    let sqrt_mn = ((m * n) as f64).sqrt();
    let mut sum = KahanSum::new();
    let mut transform_at: Vec<(u64, f64)> = Vec::new();
    let c_max = 60u64;
    for c in 1..=c_max {
        let x = sqrt_mn / c as f64;
        let kt = k_transform(&h, sign, x, r_max, 1e-11)?;
        transform_at.push((c, kt.value.abs()));
        let s = cache.get(m as i64, sign.as_f64() as i64 * n as i64, c);
        sum.add(s / c as f64 * kt.value);
    }
    // fitted decay of |𝒦h| over the last dyadic block, then a Weil-weighted
    // geometric tail estimate
    let (c1, v1) = transform_at[(c_max / 2 - 1) as usize];
    let (c2, v2) = transform_at[(c_max - 1) as usize];
    let p = if v1 > 0.0 && v2 > 0.0 {
        ((v1 / v2).ln() / ((c2 as f64 / c1 as f64).ln())).max(0.51)
    } else {
        2.0
    };
    let dmax = (1..=c_max).map(divisor_count).max().unwrap_or(4) as f64;
    let g = (gcd(m, n) as f64).sqrt();
    // Σ_{c > C} d(c)√(g c)/c · v2 (c/C)^{-p} ≤ v2 dmax √g C^{1/2} Σ (c/C)^{-p-1/2}
    let tail_estimate = v2 * dmax * g * (c_max as f64).sqrt() / (p - 0.5) * 1.5;
    Ok(GeometricSide {
        delta_term,
        kloosterman_sum: sum.value(),
        truncation_c: c_max,
        tail_estimate,
        total: delta_term + sum.value(),
    })
}

#[allow(clippy::too_many_arguments)]
pub fn run(
    data: Option<&Path>,
    hol_data: Option<&Path>,
    synthetic: Option<usize>,
    weight_text: &str,
    m: u64,
    n: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<bool> {
    let weight = WeightSpec::parse(weight_text)?;
    let dataset = match (data, synthetic) {
        (Some(path), None) => SpectralDataset::load(path, hol_data)?,
        (None, Some(k)) => SpectralDataset::synthetic(seed, k, 32.max(m.max(n) as usize)),
        (None, None) => {
            return Err(Error::Config(
                "need either --data <file> or --synthetic <N>".into(),
            ))
        }
        (Some(_), Some(_)) => {
            return Err(Error::Config("--data and --synthetic are exclusive".into()))
        }
    };
    let mut report = spectral_side(&dataset, &weight, m, n)?;
    report.seed = seed;
    let pass = report.pass;
    emit_json(&report, out)?;
    Ok(pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::dataset::{ContinuousSpec, MaassRecord};

    #[test]
    fn weight_spec_parsing() {
        assert!(matches!(
            WeightSpec::parse("gauss-minus:20:5").unwrap(),
            WeightSpec::Gauss {
                sign: Sign::Minus,
                ..
            }
        ));
        assert!(WeightSpec::parse("triple1:4:30").is_ok());
        assert!(WeightSpec::parse("triple4:4:100:10").is_ok());
        assert!(WeightSpec::parse("big-h:200").is_ok());
        assert!(WeightSpec::parse("nonsense").is_err());
    }

    #[test]
    fn single_record_hand_sum() {
        // spectral side must equal the hand-evaluated single term plus the
        // continuous part
        let rec = MaassRecord {
            t_f: 9.533_695_261_3,
            eps_f: 1,
            l1_adf: 1.035,
            lambda: vec![1.0, -1.068],
        };
        let dataset = SpectralDataset {
            records: vec![rec.clone()],
            hol_records: vec![],
            continuous: Some(ContinuousSpec {
                t_max: 60.0,
                tol: 1e-9,
            }),
            synthetic: true,
        };
        let weight = WeightSpec::Gauss {
            sign: Sign::Minus,
            center: 10.0,
            width: 3.0,
        };
        let rep = spectral_side(&dataset, &weight, 1, 1).unwrap();
        let h = |t: f64| {
            (-((t - 10.0f64) / 3.0).powi(2)).exp() + (-((t + 10.0f64) / 3.0).powi(2)).exp()
        };
        let hand = h(rec.t_f) / rec.l1_adf;
        let cont = continuous_part(1, 1, &h, 60.0);
        assert!(
            (rep.cusp_sum - hand).abs() < 1e-12 * hand.abs(),
            "{} vs {hand}",
            rep.cusp_sum
        );
        assert!((rep.continuous_integral - cont).abs() < 1e-9 * cont.abs().max(1e-12));
        assert!(rep.geometric.is_some());
    }

    #[test]
    fn empty_cusp_list_is_continuous_only() {
        let dataset = SpectralDataset {
            records: vec![],
            hol_records: vec![],
            continuous: Some(ContinuousSpec::default()),
            synthetic: true,
        };
        let weight = WeightSpec::Gauss {
            sign: Sign::Plus,
            center: 8.0,
            width: 2.0,
        };
        let rep = spectral_side(&dataset, &weight, 1, 1).unwrap();
        assert_eq!(rep.cusp_sum, 0.0);
        assert!(rep.continuous_integral.is_finite() && rep.continuous_integral > 0.0);
    }

    #[test]
    fn missing_eigenvalue_is_named() {
        let rec = MaassRecord {
            t_f: 9.5,
            eps_f: 1,
            l1_adf: 1.0,
            lambda: vec![1.0],
        };
        let dataset = SpectralDataset {
            records: vec![rec],
            hol_records: vec![],
            continuous: None,
            synthetic: true,
        };
        let weight = WeightSpec::Gauss {
            sign: Sign::Minus,
            center: 10.0,
            width: 3.0,
        };
        let err = spectral_side(&dataset, &weight, 1, 3).unwrap_err();
        assert!(err.to_string().contains("lambda_3"), "{err}");
    }
}
