//! Cusp-form eigendata ingestion. The file format is plain CSV with header
//! `t_f,eps_f,l1_adf,lambda_1,...,lambda_N`; holomorphic records live in a
//! parallel file keyed by weight, `k_f,l1_adf,lambda_1,...,lambda_N`.
//!
//! The 1/L(1, ad f) weights assume the ingested rows use the same
//! normalisation as the summation formulas; that is a dataset contract the
//! loader cannot check.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use std::path::Path;

#[derive(Debug, Clone)]
pub struct MaassRecord {
    pub t_f: f64,
    pub eps_f: i8,
    pub l1_adf: f64,
    pub lambda: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct HolRecord {
    pub k_f: u32,
    pub l1_adf: f64,
    pub lambda: Vec<f64>,
}

/// Continuous-spectrum quadrature settings.
#[derive(Debug, Clone, Copy)]
pub struct ContinuousSpec {
    pub t_max: f64,
    pub tol: f64,
}

impl Default for ContinuousSpec {
    fn default() -> Self {
        ContinuousSpec {
            t_max: 80.0,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SpectralDataset {
    pub records: Vec<MaassRecord>,
    pub hol_records: Vec<HolRecord>,
    pub continuous: Option<ContinuousSpec>,
    pub synthetic: bool,
}

impl SpectralDataset {
    pub fn validate(&self) -> Result<()> {
        let mut prev = 0.0f64;
        for (i, rec) in self.records.iter().enumerate() {
            if !(rec.t_f > 0.0) || rec.t_f <= prev {
                return Err(Error::MissingField {
                    record: i,
                    field: "t_f (must be positive and strictly increasing)".into(),
                });
            }
            prev = rec.t_f;
            if rec.eps_f != 1 && rec.eps_f != -1 {
                return Err(Error::MissingField {
                    record: i,
                    field: "eps_f (must be ±1)".into(),
                });
            }
            if !(rec.l1_adf > 0.0) {
                return Err(Error::MissingField {
                    record: i,
                    field: "l1_adf (must be positive)".into(),
                });
            }
            if rec.lambda.is_empty() || (rec.lambda[0] - 1.0).abs() > 1e-9 {
                return Err(Error::MissingField {
                    record: i,
                    field: "lambda_1 (must equal 1)".into(),
                });
            }
        }
        for (i, rec) in self.hol_records.iter().enumerate() {
            if rec.k_f < 2 || rec.k_f % 2 != 0 {
                return Err(Error::MissingField {
                    record: i,
                    field: "k_f (must be even and ≥ 2)".into(),
                });
            }
            if !(rec.l1_adf > 0.0) {
                return Err(Error::MissingField {
                    record: i,
                    field: "l1_adf (must be positive)".into(),
                });
            }
            if rec.lambda.is_empty() || (rec.lambda[0] - 1.0).abs() > 1e-9 {
                return Err(Error::MissingField {
                    record: i,
                    field: "lambda_1 (must equal 1)".into(),
                });
            }
        }
        Ok(())
    }

    /// Hecke eigenvalue λ_f(n) of record `i`, or a missing-field error.
    pub fn lambda(&self, i: usize, n: u64) -> Result<f64> {
        let rec = &self.records[i];
        rec.lambda
            .get(n as usize - 1)
            .copied()
            .ok_or_else(|| Error::MissingField {
                record: i,
                field: format!("lambda_{n}"),
            })
    }

    pub fn load(maass: &Path, hol: Option<&Path>) -> Result<Self> {
        let records = parse_maass_csv(&std::fs::read_to_string(maass)?)?;
        let hol_records = match hol {
            Some(p) => parse_hol_csv(&std::fs::read_to_string(p)?)?,
            None => Vec::new(),
        };
        let ds = SpectralDataset {
            records,
            hol_records,
            continuous: Some(ContinuousSpec::default()),
            synthetic: false,
        };
        ds.validate()?;
        Ok(ds)
    }

    /// Random but internally consistent fixture: eigenvalues are generated
    /// multiplicatively from random prime values, so Hecke relations hold,
    /// but the rows correspond to no actual cusp forms. Plumbing only.
    pub fn synthetic(seed: u64, n_records: usize, n_lambda: usize) -> Self {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut records = Vec::new();
        let mut t = 5.0;
        for _ in 0..n_records {
            t += 0.5 + 4.0 * rng.random::<f64>();
            let eps = if rng.random::<f64>() < 0.5 { 1 } else { -1 };
            let l1 = 0.5 + 1.5 * rng.random::<f64>();
            let lambda = multiplicative_sequence(&mut rng, n_lambda);
            records.push(MaassRecord {
                t_f: t,
                eps_f: eps,
                l1_adf: l1,
                lambda,
            });
        }
        SpectralDataset {
            records,
            hol_records: Vec::new(),
            continuous: Some(ContinuousSpec::default()),
            synthetic: true,
        }
    }
}

/// Multiplicative sequence with |λ(p)| ≤ 2 drawn at primes and extended by
/// λ(p^{j+1}) = λ(p)λ(p^j) − λ(p^{j−1}) and multiplicativity.
fn multiplicative_sequence(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut lambda = vec![0.0f64; n + 1];
    lambda[1] = 1.0;
    for m in 2..=n {
        if lambda[m] != 0.0 {
            continue;
        }
        // factor m = p^j · rest
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                break;
            }
            p += 1;
        }
        if p * p > m {
            p = m; // m prime
        }
        let mut pk = p;
        let mut j = 1;
        while pk * (p) <= m && m % (pk * p) == 0 {
            pk *= p;
            j += 1;
        }
        let rest = m / pk;
        if rest > 1 {
            lambda[m] = lambda[pk] * lambda[rest];
            continue;
        }
        // m = p^j; fill the prime-power ladder
        if j == 1 {
            lambda[m] = 2.0 * (rng.random::<f64>() * 2.0 - 1.0).clamp(-0.99, 0.99);
        } else {
            let lp = lambda[p];
            lambda[m] = lp * lambda[pk / p] - if j >= 2 { lambda[pk / (p * p)] } else { 0.0 };
        }
    }
    lambda.remove(0);
    lambda
}

fn parse_maass_csv(text: &str) -> Result<Vec<MaassRecord>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if lineno == 0 && line.starts_with("t_f") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 4 {
            return Err(Error::MissingField {
                record: out.len(),
                field: "need at least t_f,eps_f,l1_adf,lambda_1".into(),
            });
        }
        let parse = |s: &str, name: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| Error::MissingField {
                record: out.len(),
                field: name.to_string(),
            })
        };
        let t_f = parse(fields[0], "t_f")?;
        let eps_f = parse(fields[1], "eps_f")? as i8;
        let l1_adf = parse(fields[2], "l1_adf")?;
        let mut lambda = Vec::with_capacity(fields.len() - 3);
        for (j, f) in fields[3..].iter().enumerate() {
            lambda.push(parse(f, &format!("lambda_{}", j + 1))?);
        }
        out.push(MaassRecord {
            t_f,
            eps_f,
            l1_adf,
            lambda,
        });
    }
    Ok(out)
}

fn parse_hol_csv(text: &str) -> Result<Vec<HolRecord>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if lineno == 0 && line.starts_with("k_f") {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 3 {
            return Err(Error::MissingField {
                record: out.len(),
                field: "need at least k_f,l1_adf,lambda_1".into(),
            });
        }
        let parse = |s: &str, name: &str| -> Result<f64> {
            s.parse::<f64>().map_err(|_| Error::MissingField {
                record: out.len(),
                field: name.to_string(),
            })
        };
        let k_f = parse(fields[0], "k_f")? as u32;
        let l1_adf = parse(fields[1], "l1_adf")?;
        let mut lambda = Vec::with_capacity(fields.len() - 2);
        for (j, f) in fields[2..].iter().enumerate() {
            lambda.push(parse(f, &format!("lambda_{}", j + 1))?);
        }
        out.push(HolRecord {
            k_f,
            l1_adf,
            lambda,
        });
    }
    Ok(out)
}
