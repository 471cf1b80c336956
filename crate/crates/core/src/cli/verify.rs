//! The named verification suites. Each suite pins its tolerances in code and
//! returns a structured report; the acceptance integration test drives these
//! same functions.

use super::report::{CaseResult, VerifyReport};
use crate::arith::{
    check_sum_xi_f, check_sum_xi_f_contracted, check_sum_xi_xi_f, divisor_count, gcd, kloosterman,
    mod_inverse, ramanujan_sum, ramanujan_sum_direct, Gl3Coefficients, KloostermanCache,
};
use crate::besselkern::KernelOrder;
use crate::complexfn::Sign;
use crate::error::{Error, Result};
use crate::mellin::{mellin_kernel, mellin_kernel_residue, numeric_mellin_kernel};
use crate::oscillatory::{afe_weight, stat_integral, stat_integral_inner};
use crate::reciprocity::{
    big_h, big_h_error_scale, big_h_main, hcal_envelope_report, omega, stirling_expansion_check,
    tilde_envelope_dyadic, tilde_envelope_transition, GridQuality,
};
use crate::transforms::{
    l_hol_closed, l_transform, make_triple, sears_titchmarsh_reconstruction, TripleKind,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use serde_json::json;

pub const SUITES: &[&str] = &[
    "arith-exact",
    "mellin-closed-forms",
    "sears-titchmarsh",
    "envelopes-5.2",
    "envelopes-5.4",
    "envelopes-7.3",
    "h-asymptotic",
    "stat-phase",
    "afe-weights",
];

pub fn run_suite(name: &str, tol: Option<f64>, seed: u64) -> Result<VerifyReport> {
    let t0 = std::time::Instant::now();
    let mut report = match name {
        "arith-exact" => arith_exact(tol.unwrap_or(1e-10), seed),
        "mellin-closed-forms" => mellin_closed_forms(tol.unwrap_or(1e-6)),
        "sears-titchmarsh" => sears_titchmarsh(tol.unwrap_or(1e-3)),
        "envelopes-5.2" => envelopes_first_moment(),
        "envelopes-5.4" => envelopes_dyadic(),
        "envelopes-7.3" => envelopes_transition(),
        "h-asymptotic" => h_asymptotic(),
        "stat-phase" => stat_phase(),
        "afe-weights" => afe_weights(),
        other => {
            return Err(Error::Config(format!(
                "unknown suite `{other}`; expected one of {SUITES:?}"
            )))
        }
    }?;
    report.seed = seed;
    report.elapsed_seconds = t0.elapsed().as_secs_f64();
    Ok(report)
}

// ---------------------------------------------------------------------------

fn random_w(rng: &mut impl Rng, re_lo: f64, re_hi: f64) -> Complex64 {
    Complex64::new(
        re_lo + (re_hi - re_lo) * rng.random::<f64>(),
        2.0 * rng.random::<f64>() - 1.0,
    )
}

/// Exact-identity suite: the two coefficientwise sum identities plus the
/// Ramanujan/Kloosterman ground truths.
fn arith_exact(tol: f64, seed: u64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "arith-exact",
        seed,
        json!({"tol": tol, "ell_max_xi": 24, "ell_max_xixi": 16, "draws": 20}),
    );
    let cache = KloostermanCache::new();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // dual-sum collapse identity, coefficientwise, 20 w-draws per level
    for ell in 1..=24u64 {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let w = random_w(&mut rng, -1.5, -0.55);
            let sign = if rng.random::<f64>() < 0.5 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let rep = check_sum_xi_f(ell, w, sign, 10, &cache);
            worst = worst.max(rep.max_rel_deviation);
        }
        report.check_le(format!("sum-xi collapse, level {ell}"), worst, tol);
    }
    // contracted against random coefficient arrays
    for ell in [4u64, 6, 12, 24] {
        let mut coeffs = Gl3Coefficients::new(24, 24, Gl3Coefficients::self_dual_mu(0.0), false)?;
        for m in 1..=24 {
            for n in 1..=24 {
                let th: f64 = rng.random::<f64>() * std::f64::consts::TAU;
                let rad: f64 = rng.random();
                coeffs.set(m, n, Complex64::from_polar(rad, th));
            }
        }
        let w = random_w(&mut rng, -1.5, -0.55);
        let rep = check_sum_xi_f_contracted(&coeffs, ell, w, Sign::Plus, 20, &cache);
        report.check_le(
            format!("sum-xi collapse vs random coefficients, level {ell}"),
            rep.max_rel_deviation,
            tol,
        );
    }
    // double-series identity, coefficientwise with closed m-sums
    for ell in 1..=16u64 {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let w1 = random_w(&mut rng, -1.2, -0.3);
            let w2 = random_w(&mut rng, -1.2, -0.3);
            let signs = match rng.random_range(0..4) {
                0 => (Sign::Plus, Sign::Plus),
                1 => (Sign::Plus, Sign::Minus),
                2 => (Sign::Minus, Sign::Plus),
                _ => (Sign::Minus, Sign::Minus),
            };
            let rep = check_sum_xi_xi_f(ell, w1, w2, signs, 6, &cache)?;
            worst = worst.max(rep.max_rel_deviation);
        }
        report.check_le(format!("double-series identity, level {ell}"), worst, tol);
    }

    // Ramanujan sums exact vs direct exponential sums, c, n ≤ 200
    let mut worst = 0.0f64;
    for c in 1..=200u64 {
        for n in 1..=200i64 {
            let exact = ramanujan_sum(c, n) as f64;
            let direct = ramanujan_sum_direct(c, n);
            worst = worst.max((exact - direct).abs());
        }
    }
    report.check_le("ramanujan exact vs direct, c,n ≤ 200", worst, 1e-9);

    // Weil bound, m, n ≤ 20, c ≤ 500
    let mut weil_excess = 0.0f64;
    let mut sym_worst = 0.0f64;
    for c in 1..=500u64 {
        for m in 1..=20i64 {
            for n in m..=20i64 {
                let s = cache.get(m, n, c);
                let bound = divisor_count(c) as f64
                    * (gcd(gcd(m as u64, n as u64), c) as f64).sqrt()
                    * (c as f64).sqrt();
                weil_excess = weil_excess.max(s.abs() / bound);
                sym_worst = sym_worst.max((s - cache.get(n, m, c)).abs());
            }
        }
    }
    report.check_le(
        "Weil bound ratio, m,n ≤ 20, c ≤ 500",
        weil_excess,
        1.0 + 1e-9,
    );
    report.check_le("Kloosterman symmetry", sym_worst, 1e-10);

    // twisted multiplicativity vs direct summation, coprime c₁, c₂ ≤ 50
    let mut tm_worst = 0.0f64;
    for c1 in 2..=50u64 {
        for c2 in (c1 + 1)..=50u64 {
            if gcd(c1, c2) != 1 {
                continue;
            }
            for (m, n) in [(1i64, 1i64), (3, 7)] {
                let lhs = kloosterman(m, n, c1 * c2);
                let c2_inv = mod_inverse(c2 % c1, c1).unwrap() as i64;
                let c1_inv = mod_inverse(c1 % c2, c2).unwrap() as i64;
                let rhs = kloosterman(m * c2_inv, n * c2_inv, c1)
                    * kloosterman(m * c1_inv, n * c1_inv, c2);
                tm_worst = tm_worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
        }
    }
    report.check_le("twisted multiplicativity vs direct", tm_worst, 1e-9);
    Ok(report)
}

/// Kernel transform closed forms against the numeric Mellin oracle, plus the
/// residue ground truths.
fn mellin_closed_forms(tol: f64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "mellin-closed-forms",
        0,
        json!({"tol": tol, "r": [0.0, 1.0, 5.0, 10.0], "k": [2, 4, 10], "sigma": [0.3, 0.5, 1.2]}),
    );
    let sigmas = [0.3f64, 0.5, 1.2];
    let taus = [0.0f64, 3.7, 9.2, 20.0];
    let mut orders: Vec<KernelOrder> = Vec::new();
    for r in [0.0, 1.0, 5.0, 10.0] {
        orders.push(KernelOrder::Plus { r });
        orders.push(KernelOrder::Minus { r });
    }
    for k in [2u32, 4, 10] {
        orders.push(KernelOrder::Hol { k });
    }
    for order in orders {
        let mut worst_rel = 0.0f64;
        let mut all_ok = true;
        for &sigma in &sigmas {
            for &tau in &taus {
                let s = Complex64::new(sigma, tau);
                if crate::mellin::mellin_kernel_pole_distance(order, s) < 1e-4 {
                    continue;
                }
                let closed = mellin_kernel(order, s)?.value;
                let numeric = numeric_mellin_kernel(order, s)?;
                let diff = (closed - numeric.value).norm();
                let budget = (tol * closed.norm()).max(10.0 * numeric.error_estimate);
                all_ok &= diff <= budget;
                // record the relative deviation where the oracle's certified
                // noise floor is fine enough to resolve it
                if tol * closed.norm() > 10.0 * numeric.error_estimate {
                    worst_rel = worst_rel.max(diff / closed.norm());
                }
            }
        }
        report.push(CaseResult {
            name: format!("{order:?} closed form vs oracle"),
            measured: worst_rel,
            bound: tol,
            pass: all_ok && worst_rel <= tol,
        });
    }
    // holomorphic residues are exact gamma-factorials
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    let r0 = mellin_kernel_residue(KernelOrder::Hol { k: 2 }, 0, 1)?;
    report.check_le(
        "hol residue k=2 ℓ=0 vs −4π²",
        (r0 - Complex64::new(-4.0 * pi2, 0.0)).norm() / (4.0 * pi2),
        1e-12,
    );
    let r1 = mellin_kernel_residue(KernelOrder::Hol { k: 2 }, 1, 1)?;
    report.check_le(
        "hol residue k=2 ℓ=1 vs 8π⁴",
        (r1 - Complex64::new(8.0 * pi2 * pi2, 0.0)).norm() / (8.0 * pi2 * pi2),
        1e-12,
    );
    // sign relation and large-r magnitude envelope for the paired residues
    let mut rel_worst = 0.0f64;
    for ell in [0u32, 1, 2, 3] {
        let rp = mellin_kernel_residue(KernelOrder::Plus { r: 3.0 }, ell, 1)?;
        let rm = mellin_kernel_residue(KernelOrder::Minus { r: 3.0 }, ell, 1)?;
        let want = if ell % 2 == 0 { rm } else { -rm };
        rel_worst = rel_worst.max((rp - want).norm() / rm.norm());
    }
    report.check_le("± residue sign relation", rel_worst, 1e-12);
    let big = mellin_kernel_residue(KernelOrder::Plus { r: 100.0 }, 0, 1)?.norm();
    report.check_le(
        "residue magnitude at r=100 vs C(1+r)^{-1/2}",
        big / (1.0f64 + 100.0).powf(-0.5),
        5.0,
    );
    Ok(report)
}

/// Geometric-profile reconstruction and the finite closed forms.
fn sears_titchmarsh(tol: f64) -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "sears-titchmarsh",
        0,
        json!({"tol": tol, "m": 8, "t": 50.0}),
    );
    let triple = make_triple(TripleKind::Triple2, 8, 50.0, None)?;
    // profile window where H⁺ ≥ 1e-6 of its peak
    let sh = (1.0f64 / 50.0).sinh();
    let x_peak = 8.0 / (4.0 * std::f64::consts::PI * sh);
    let peak = triple.h_plus_profile(x_peak);
    let mut x_lo = x_peak;
    while triple.h_plus_profile(x_lo) > 1e-6 * peak {
        x_lo *= 0.92;
    }
    let mut x_hi = x_peak;
    while triple.h_plus_profile(x_hi) > 1e-6 * peak {
        x_hi *= 1.06;
    }
    let n = 20;
    let mut worst = 0.0f64;
    for i in 0..=n {
        let x = x_lo * (x_hi / x_lo).powf(i as f64 / n as f64);
        let want = triple.h_plus_profile(x);
        if want < 1e-6 * peak {
            continue;
        }
        let rec = sears_titchmarsh_reconstruction(&triple, x, 1e-8)?;
        worst = worst.max((rec - want).abs() / want);
    }
    report.check_le("reconstruction of the profile (M=8, T=50)", worst, tol);

    // closed forms vs direct quadrature at the named ranges
    for m in [2u32, 4, 6] {
        for t in [20.0f64, 50.0] {
            let tr = make_triple(TripleKind::Triple2, m, t, None)?;
            let shm = (1.0 / t).sinh();
            let x_max = (m as f64 + 55.0) / (4.0 * std::f64::consts::PI * shm);
            // per-point budget: 1e-6 relative where the quadrature noise
            // floor (kernel evaluations near 1e-10, absolute 1e-8 overall)
            // permits the comparison, absolute agreement at the floor below
            let budget_of = |closed: f64, quad_err: f64| -> f64 {
                (1e-6 * closed.abs()).max(1e-8 + 10.0 * quad_err)
            };
            let mut worst_hol = 0.0f64;
            for k in [4u32, 10, 22, 40] {
                let quad = l_transform(
                    &|x| tr.h_plus_profile(x),
                    KernelOrder::Hol { k },
                    x_max,
                    1e-10,
                )?;
                let closed = tr.h_hol(k);
                let diff = (quad.value - closed).abs();
                worst_hol = worst_hol.max(diff / budget_of(closed, quad.error));
            }
            report.check_le(
                format!("hol transform closed form M={m} T={t} (excess over budget)"),
                worst_hol,
                1.0,
            );
            let mut worst_plus = 0.0f64;
            for r in [0.5f64, 2.0, 5.0, 10.0, 20.0] {
                let quad = l_transform(
                    &|x| tr.h_plus_profile(x),
                    KernelOrder::Plus { r },
                    x_max,
                    1e-10,
                )?;
                let closed = tr.h_plus(r);
                let diff = (quad.value - closed).abs();
                worst_plus = worst_plus.max(diff / budget_of(closed, quad.error));
            }
            report.check_le(
                format!("plus transform closed form M={m} T={t} (excess over budget)"),
                worst_plus,
                1.0,
            );
            // positivity of the normalised holomorphic transform on (M, 4T]
            let mut min_val = f64::INFINITY;
            let mut k = (m + 2) & !1;
            if k <= m {
                k += 2;
            }
            while k as f64 <= 4.0 * t {
                min_val = min_val.min(l_hol_closed(m, t, k));
                k += 2;
            }
            report.push(CaseResult::ge(
                format!("hol transform positivity M={m} T={t}"),
                min_val,
                0.0,
            ));
            // two-sided comparability on [T, 2T]
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            let mut k = ((t as u32) + 1) & !1;
            while (k as f64) <= 2.0 * t {
                let v = l_hol_closed(m, t, k);
                lo = lo.min(v);
                hi = hi.max(v);
                k += 2;
            }
            report.check_le(
                format!("hol transform ratio spread on [T,2T] M={m} T={t}"),
                hi / lo,
                20.0,
            );
        }
    }
    Ok(report)
}

/// First-moment transform envelope stability and collapse. Stability runs at
/// the desk default M = 8; the 10³-collapse sub-check runs at M = 10 (the
/// two-branch envelope itself caps the collapse at 4^{−M/2}/2, which only
/// clears 10³ from M = 10 up) and skips the single grid corner where
/// T = t_g^θ ≤ M makes the triple inadmissible.
fn envelopes_first_moment() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "envelopes-5.2",
        0,
        json!({"t_g": [100.0, 200.0, 400.0], "theta": [0.5, 0.6, 0.7],
               "m_stability": 8, "m_suppression": 10}),
    );
    for theta in [0.5f64, 0.6, 0.7] {
        let mut consts = Vec::new();
        for t_g in [100.0f64, 200.0, 400.0] {
            let rep = hcal_envelope_report(t_g, theta, 8, GridQuality::Envelope)?;
            consts.push(rep.fitted_constant);
            report.fitted_constants.push(rep.fitted_constant);
            if t_g.powf(theta) > 10.5 {
                let sup = hcal_envelope_report(t_g, theta, 10, GridQuality::Envelope)?;
                let suppression = sup.peak / sup.suppressed_value.unwrap().max(1e-300);
                report.push(CaseResult::ge(
                    format!("suppression at 4·edge, t_g={t_g}, θ={theta}"),
                    suppression,
                    1e3,
                ));
            }
        }
        let hi = consts.iter().cloned().fold(f64::MIN, f64::max);
        let lo = consts.iter().cloned().fold(f64::MAX, f64::min);
        report.check_le(format!("fitted-constant drift, θ={theta}"), hi / lo, 3.0);
    }
    Ok(report)
}

/// Mixed-moment dyadic envelopes.
fn envelopes_dyadic() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "envelopes-5.4",
        0,
        json!({"t_g": [100.0, 200.0, 400.0], "theta": [0.5, 0.65], "m": 8}),
    );
    for theta in [0.5f64, 0.65] {
        let mut consts = Vec::new();
        for t_g in [100.0f64, 200.0, 400.0] {
            let rep = tilde_envelope_dyadic(t_g, theta, 8, GridQuality::Envelope)?;
            consts.push(rep.fitted_constant);
            report.fitted_constants.push(rep.fitted_constant);
            let suppression = rep.peak / rep.suppressed_value.unwrap().max(1e-300);
            report.push(CaseResult::ge(
                format!("plateau collapse at 4·t_g/T, t_g={t_g}, θ={theta}"),
                suppression,
                1e3,
            ));
        }
        let hi = consts.iter().cloned().fold(f64::MIN, f64::max);
        let lo = consts.iter().cloned().fold(f64::MAX, f64::min);
        report.check_le(format!("plateau constant drift, θ={theta}"), hi / lo, 3.0);
    }
    Ok(report)
}

/// Transition-regime localisation.
fn envelopes_transition() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "envelopes-7.3",
        0,
        json!({"t_g": [100.0, 200.0], "delta_exp": 0.6, "m": 8}),
    );
    let mut consts = Vec::new();
    for t_g in [100.0f64, 200.0] {
        let rep = tilde_envelope_transition(t_g, 0.6, 8, GridQuality::Envelope)?;
        consts.push(rep.fitted_constant);
        report.fitted_constants.push(rep.fitted_constant);
        let suppression = rep.peak / rep.suppressed_value.unwrap().max(1e-300);
        report.push(CaseResult::ge(
            format!("collapse beyond (T/U)^(1/2), t_g={t_g}"),
            suppression,
            1e3,
        ));
        // the minus companion plateaus at U^{1+ε} for |t| ≤ T^ε
        let t_param = 2.0 * t_g - t_g.powf(0.6);
        let u = t_g - t_param / 2.0 + 1.0;
        let triple = crate::transforms::make_triple(
            crate::transforms::TripleKind::Triple4,
            8,
            t_param,
            Some(u),
        )?;
        let params = crate::reciprocity::ReciprocityParams {
            t_g,
            triple,
            contour: crate::reciprocity::ContourSpec::line(0.5),
        };
        let eval =
            crate::reciprocity::DualMomentEvaluator::new(&params, 0.0, GridQuality::Envelope)?;
        let mut plateau: f64 = 0.0;
        let t_eps = t_param.powf(0.05);
        for i in 0..=4 {
            let t = t_eps * i as f64 / 4.0;
            plateau = plateau.max(eval.tilde_pm(Sign::Minus, t)?.norm());
        }
        report.check_le(
            format!("minus plateau over U^(1+eps), t_g={t_g}"),
            plateau / u.powf(1.05),
            100.0,
        );
    }
    let hi = consts.iter().cloned().fold(f64::MIN, f64::max);
    let lo = consts.iter().cloned().fold(f64::MAX, f64::min);
    report.check_le("plateau constant drift", hi / lo, 3.0);
    Ok(report)
}

/// Weight asymptotics for the fourth-moment expansion.
fn h_asymptotic() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "h-asymptotic",
        0,
        json!({"t_g": [100.0, 200.0, 400.0], "grid": 50}),
    );
    for t_g in [100.0f64, 200.0, 400.0] {
        let mut worst = 0.0f64;
        for i in 0..50 {
            let t = 3.0 * t_g * i as f64 / 49.0;
            let rel = (big_h(t, t_g) / big_h_main(t, t_g) - 1.0).abs();
            worst = worst.max(rel / (5.0 * big_h_error_scale(t, t_g)));
        }
        report.check_le(format!("asymptotic ratio budget, t_g={t_g}"), worst, 1.0);
        // exponential suppression beyond the range edge
        let mut pref_lo = f64::INFINITY;
        let mut pref_hi = 0.0f64;
        for dt in [5.0f64, 10.0, 15.0] {
            let t = 2.0 * t_g + dt;
            let poly = std::f64::consts::PI.powi(3)
                / 3.0
                / ((1.0 + t) * (1.0 + 2.0 * t_g + t).sqrt() * (1.0 + (2.0 * t_g - t).abs()).sqrt());
            let pref = big_h(t, t_g) / poly / (-std::f64::consts::PI * omega(t, t_g)).exp();
            pref_lo = pref_lo.min(pref);
            pref_hi = pref_hi.max(pref);
        }
        report.push(CaseResult::within(
            format!("suppression prefactor window, t_g={t_g}"),
            pref_hi.max(1.0 / pref_lo),
            0.0,
            3.0,
        ));
    }
    // the expansion diagnostic for the dual-parameter transform
    let s = Complex64::new(0.5, 0.0);
    let a = stirling_expansion_check(s, 1e3)?;
    report.check_le("expansion deviation vs |s|³/t_g² at t_g=1e3", a.ratio, 10.0);
    let b = stirling_expansion_check(s, 2e3)?;
    report.push(CaseResult::within(
        "deviation shrink under t_g doubling",
        a.deviation / b.deviation,
        2.0,
        8.0,
    ));
    Ok(report)
}

/// Stationary-phase double integral bounds and scaling.
fn stat_phase() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "stat-phase",
        0,
        json!({"t_g": [1e3, 1e4], "u_exp": [0.25, 0.3], "c": 10}),
    );
    let c = 10u32;
    for t_g in [1e3f64, 1e4] {
        for u_exp in [0.25f64, 0.3] {
            let u = t_g.powf(u_exp);
            let t = 2.0 * t_g + u;
            let v = stat_integral(t, t_g, u, c, (t_g.powf(-0.05), t_g.powf(0.05)))?;
            let bound = 10.0 * t_g.powf(-0.5) * u.powf(-0.5) * t_g.powf(0.05);
            report.check_le(
                format!("double integral vs bound, t_g={t_g:.0}, U=t_g^{u_exp}"),
                v,
                bound,
            );
        }
    }
    // quadrupling t_g halves the value within 30%
    let u_exp = 0.25;
    let (tg1, tg2) = (1e3f64, 4e3f64);
    let v1 = stat_integral(
        2.0 * tg1 + tg1.powf(u_exp),
        tg1,
        tg1.powf(u_exp),
        c,
        (tg1.powf(-0.05), tg1.powf(0.05)),
    )?;
    let v2 = stat_integral(
        2.0 * tg2 + tg2.powf(u_exp),
        tg2,
        tg2.powf(u_exp),
        c,
        (tg2.powf(-0.05), tg2.powf(0.05)),
    )?;
    report.push(CaseResult::within(
        "value ratio under t_g quadrupling",
        v2 / v1,
        0.35,
        0.65,
    ));
    // no-stationary-point branch collapses
    let t_g = 1e3f64;
    let u = t_g.powf(0.25);
    let t = 2.0 * t_g + u;
    let x_star = t * 10.0 / (2.0 * std::f64::consts::PI.powi(2) * t_g);
    let peak = stat_integral_inner(t, t_g, u, 10, x_star);
    let far = stat_integral_inner(t, t_g, u, 1, 1.0);
    report.check_le("no-stationary-point branch vs peak", far / peak, 1e-6);
    Ok(report)
}

/// Smoothed functional-equation weights: decay, plateau, contour shifts.
fn afe_weights() -> Result<VerifyReport> {
    let mut report = VerifyReport::new(
        "afe-weights",
        0,
        json!({"t_g": 1000.0, "u_exp": 0.25, "sigma": [1.0, 3.0]}),
    );
    let t_g = 1000.0f64;
    let u = t_g.powf(0.25);
    let t = 2.0 * t_g + u;
    let big_x = u.powf(0.95);
    let cond = big_x * u * t_g * t_g;
    for sigma in [1.0f64, 3.0] {
        let mut worst = 0.0f64;
        for mult in [20.0f64, 100.0, 400.0] {
            let x = mult * cond;
            let v = afe_weight(x, t, 1, t_g, big_x, Sign::Plus, sigma)?.norm();
            let env = (cond / x).powf(sigma);
            worst = worst.max(v / env);
        }
        report.check_le(format!("decay envelope ratio at σ={sigma}"), worst, 10.0);
    }
    let v = afe_weight(1e-3 * cond, t, 1, t_g, big_x, Sign::Plus, 1.0)?;
    report.check_le("plateau |V−1| below conductor scale", (v - 1.0).norm(), 0.2);
    let a = afe_weight(12.0, t, 1, t_g, big_x, Sign::Plus, 0.5)?;
    let b = afe_weight(12.0, t, 1, t_g, big_x, Sign::Plus, 1.1)?;
    report.check_le("σ-shift invariance", (a - b).norm(), 1e-8);
    let am = afe_weight(12.0, t, -1, t_g, big_x, Sign::Minus, 0.5)?;
    let bm = afe_weight(12.0, t, -1, t_g, big_x, Sign::Minus, 1.1)?;
    report.check_le("σ-shift invariance (minus/odd)", (am - bm).norm(), 1e-8);
    Ok(report)
}

/// One-line-per-criterion pretty printer used by the acceptance runner.
pub fn print_summary(report: &VerifyReport) {
    for case in &report.cases {
        println!(
            "  [{}] {}: measured {:.6e} vs bound {:.6e}",
            if case.pass { "PASS" } else { "FAIL" },
            case.name,
            case.measured,
            case.bound
        );
    }
}
