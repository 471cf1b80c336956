//! Mellin transforms of the Bessel kernels: gamma-product closed forms, their
//! residues, and a generic numeric Mellin transform that serves as the
//! independent oracle for all of them.

use crate::besselkern::KernelOrder;
use crate::complexfn::{log_gamma_unchecked, log_sum_exp, POLE_GUARD};
use crate::error::{Error, Result};
use crate::quad::{gk15_c, tanh_sinh, KahanSum, KahanSumC};
use num_complex::Complex64;

/// A transform value with an attached error estimate.
#[derive(Debug, Clone, Copy)]
pub struct MellinValue {
    pub value: Complex64,
    pub error_estimate: f64,
}

fn ln_2pi() -> f64 {
    (2.0 * std::f64::consts::PI).ln()
}

/// log cos(πs/2), assembled from exponentials so large |Im s| never overflows.
fn log_cos_half_pi_s(s: Complex64) -> Complex64 {
    let z = Complex64::new(0.0, 1.0) * s * std::f64::consts::FRAC_PI_2;
    log_sum_exp(z, -z) - std::f64::consts::LN_2
}

/// log cosh(x) for real x.
fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (0.5 * (1.0 + (-2.0 * a).exp())).ln()
}

/// Distance from s to the pole set of the given kernel transform.
pub fn mellin_kernel_pole_distance(order: KernelOrder, s: Complex64) -> f64 {
    let nearest_lattice = |w: Complex64| -> f64 {
        // distance to nonpositive integers
        let ell = (-w.re).round().max(0.0);
        let mut best = f64::INFINITY;
        for e in [ell - 1.0, ell, ell + 1.0] {
            if e >= 0.0 {
                best = best.min((w + e).norm());
            }
        }
        best
    };
    match order {
        KernelOrder::Plus { r } | KernelOrder::Minus { r } => {
            // poles at s = 2(±ir − ℓ) ⇔ s/2 ∓ ir at a nonpositive integer
            let a = nearest_lattice(s / 2.0 - Complex64::new(0.0, r));
            let b = nearest_lattice(s / 2.0 + Complex64::new(0.0, r));
            2.0 * a.min(b)
        }
        KernelOrder::Hol { k } => {
            // poles at s = 1 − k − 2ℓ
            2.0 * nearest_lattice((s + (k as f64 - 1.0)) / 2.0)
        }
    }
}

/// log of the kernel Mellin transform.
///
/// ```text
/// plus:  (2π)^{−s} Γ(s/2+ir) Γ(s/2−ir) cos(πs/2)
/// minus: (2π)^{−s} Γ(s/2+ir) Γ(s/2−ir) cosh(πr)
/// hol:   π i^{−k} (2π)^{−s} Γ((s+k−1)/2) / Γ((1−s+k)/2)
/// ```
pub fn log_mellin_kernel(order: KernelOrder, s: Complex64) -> Result<Complex64> {
    order.validate()?;
    let d = mellin_kernel_pole_distance(order, s);
    if d < POLE_GUARD {
        return Err(Error::pole("kernel Mellin pole lattice", d));
    }
    Ok(match order {
        KernelOrder::Plus { r } => {
            let ir = Complex64::new(0.0, r);
            -s * ln_2pi()
                + log_gamma_unchecked(s / 2.0 + ir)
                + log_gamma_unchecked(s / 2.0 - ir)
                + log_cos_half_pi_s(s)
        }
        KernelOrder::Minus { r } => {
            let ir = Complex64::new(0.0, r);
            -s * ln_2pi()
                + log_gamma_unchecked(s / 2.0 + ir)
                + log_gamma_unchecked(s / 2.0 - ir)
                + log_cosh(std::f64::consts::PI * r)
        }
        KernelOrder::Hol { k } => {
            let kf = k as f64;
            let sign = if (k / 2) % 2 == 0 {
                0.0
            } else {
                std::f64::consts::PI
            };
            std::f64::consts::PI.ln() - s * ln_2pi() + log_gamma_unchecked((s + kf - 1.0) / 2.0)
                - log_gamma_unchecked((1.0 - s + kf) / 2.0)
                + Complex64::new(0.0, sign)
        }
    })
}

/// Kernel Mellin closed form.
pub fn mellin_kernel(order: KernelOrder, s: Complex64) -> Result<MellinValue> {
    let lg = log_mellin_kernel(order, s)?;
    let value = lg.exp();
    Ok(MellinValue {
        value,
        error_estimate: 1e-13 * value.norm(),
    })
}

/// Residue of the kernel Mellin transform.
///
/// For `hol`, at s = 1 − k − 2ℓ: (2πi)^{k+2ℓ}/(Γ(k+ℓ)Γ(ℓ+1)).
/// For `plus`/`minus`, at s = 2(branch·ir − ℓ) with `branch = ±1`:
/// minus: 2(−1)^ℓ/ℓ! · (2π)^{2ℓ−2·branch·ir} Γ(2·branch·ir − ℓ) cosh(πr),
/// plus: the same without the (−1)^ℓ, so Res⁺ = (−1)^ℓ Res⁻.
pub fn mellin_kernel_residue(order: KernelOrder, ell: u32, branch: i32) -> Result<Complex64> {
    order.validate()?;
    match order {
        KernelOrder::Hol { k } => {
            let m = k + 2 * ell;
            // (2πi)^m magnitude (2π)^m, phase i^m
            let mut lg = m as f64 * ln_2pi();
            lg -= log_gamma_unchecked(Complex64::new((k + ell) as f64, 0.0)).re;
            lg -= log_gamma_unchecked(Complex64::new(ell as f64 + 1.0, 0.0)).re;
            let phase = match m % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
            Ok(phase * lg.exp())
        }
        KernelOrder::Plus { r } | KernelOrder::Minus { r } => {
            if branch != 1 && branch != -1 {
                return Err(Error::invalid("branch must select ±ir, i.e. be ±1"));
            }
            if r.abs() < 1e-6 {
                return Err(Error::invalid(
                    "residue formula needs r bounded away from 0 (poles merge at r = 0)",
                ));
            }
            let ir = Complex64::new(0.0, branch as f64 * r);
            let lf = log_gamma_unchecked(Complex64::new(ell as f64 + 1.0, 0.0)).re;
            let log_total = std::f64::consts::LN_2 - lf
                + (Complex64::new(2.0 * ell as f64, 0.0) - 2.0 * ir) * ln_2pi()
                + log_gamma_unchecked(2.0 * ir - ell as f64)
                + log_cosh(std::f64::consts::PI * r);
            let base = log_total.exp();
            Ok(match order {
                KernelOrder::Minus { .. } => {
                    if ell.is_multiple_of(2) {
                        base
                    } else {
                        -base
                    }
                }
                _ => base,
            })
        }
    }
}

/// Support hints for the numeric Mellin transform.
pub struct MellinHints<'a> {
    /// tanh-sinh handles (0, cut]; adaptive panels handle [cut, x_max].
    pub cut: f64,
    pub x_max: f64,
    /// Accelerated oscillatory tail beyond x_max, described by the phase of
    /// the integrand's asymptotic oscillation.
    pub osc_tail: Option<OscTailHint<'a>>,
    /// Absolute noise level of single evaluations of `f`; folded into the
    /// error estimate with the measure of the integration range.
    pub f_noise: f64,
}

pub struct OscTailHint<'a> {
    pub phase: &'a dyn Fn(f64) -> f64,
    pub dphase: &'a dyn Fn(f64) -> f64,
}

impl Default for MellinHints<'_> {
    fn default() -> Self {
        MellinHints {
            cut: 1.0,
            x_max: 60.0,
            osc_tail: None,
            f_noise: 0.0,
        }
    }
}

/// Numeric Mellin transform ∫₀^∞ f(x) x^{s−1} dx of a real-valued f.
pub fn numeric_mellin(
    f: &dyn Fn(f64) -> f64,
    s: Complex64,
    hints: &MellinHints,
) -> Result<MellinValue> {
    let integrand = |x: f64| -> Complex64 {
        let fx = f(x);
        if fx == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        fx * ((s - 1.0) * x.ln()).exp()
    };
    let mut err = KahanSum::new();
    let mut total = KahanSumC::new();
    // endpoint layer
    {
        let mut fre = |x: f64| integrand(x).re;
        let re = tanh_sinh(&mut fre, 0.0, hints.cut, 1e-11);
        let mut fim = |x: f64| integrand(x).im;
        let im = tanh_sinh(&mut fim, 0.0, hints.cut, 1e-11);
        total.add(Complex64::new(re.value, im.value));
        err.add(re.error + im.error);
    }
    // body
    {
        let mut fc = integrand;
        let r = crate::quad::adaptive_c(&mut fc, hints.cut, hints.x_max, 1e-11, 1e-10, 20_000);
        total.add(r.value);
        err.add(r.error);
    }
    // tail
    match &hints.osc_tail {
        Some(tail) => {
            // march π-panels of the hinted phase, accelerating the partial sums
            let mut x0 = hints.x_max;
            let phi0 = (tail.phase)(x0);
            let mut partials: Vec<Complex64> = Vec::new();
            let mut acc = KahanSumC::new();
            for k in 1..=500usize {
                let target = phi0 + k as f64 * std::f64::consts::PI;
                let mut x1 = x0 + std::f64::consts::PI / (tail.dphase)(x0).max(1e-12);
                for _ in 0..60 {
                    let g = (tail.phase)(x1) - target;
                    let dp = (tail.dphase)(x1);
                    if dp <= 0.0 {
                        break;
                    }
                    let step = g / dp;
                    x1 -= step;
                    if x1 <= x0 {
                        x1 = 0.5 * (x0 + x1 + step);
                    }
                    if step.abs() < 1e-10 * x1 {
                        break;
                    }
                }
                if !(x1 > x0) {
                    break;
                }
                let mut fc = integrand;
                let (v, _) = gk15_c(&mut fc, x0, x1);
                acc.add(v);
                partials.push(acc.value());
                x0 = x1;
                if partials.len() >= 12 && partials.len().is_multiple_of(4) {
                    let (_, e) = crate::quad::aitken_limit_c(&partials);
                    if e < 1e-11 * total.value().norm().max(1e-8) {
                        break;
                    }
                }
            }
            let (v, e) = crate::quad::aitken_limit_c(&partials);
            total.add(v);
            err.add(e);
        }
        None => {
            // no tail hint: require that the integrand is actually negligible
            let edge = integrand(hints.x_max).norm();
            let scale = total.value().norm().max(1e-12);
            if edge * hints.x_max > 1e-6 * scale {
                return Err(Error::Nonconvergence {
                    what: "numeric_mellin tail".into(),
                    estimate: edge * hints.x_max,
                    tolerance: 1e-6 * scale,
                });
            }
            err.add(edge * hints.x_max);
        }
    }
    // propagate per-evaluation noise of f through the measure ∫ x^{σ−1} dx
    if hints.f_noise > 0.0 {
        let sigma = s.re.max(0.05);
        err.add(hints.f_noise * hints.x_max.powf(sigma) / sigma);
    }
    Ok(MellinValue {
        value: total.value(),
        error_estimate: err.value() + 1e-14 * total.value().norm(),
    })
}

/// Numeric Mellin of a kernel, with the tail hints derived from the kernel's
/// own asymptotics. This is the oracle route the closed forms are checked
/// against.
pub fn numeric_mellin_kernel(order: KernelOrder, s: Complex64) -> Result<MellinValue> {
    order.validate()?;
    let pi = std::f64::consts::PI;
    let f = move |x: f64| crate::besselkern::kernel(order, x).unwrap_or(f64::NAN);
    match order {
        KernelOrder::Minus { r } => {
            // exponential decay beyond the turning point y = 2r
            let x_max = (2.0 * r.abs() + 50.0) / (4.0 * pi);
            numeric_mellin(
                &f,
                s,
                &MellinHints {
                    cut: 0.5,
                    x_max,
                    osc_tail: None,
                    f_noise: 1e-10,
                },
            )
        }
        KernelOrder::Plus { r } => {
            // asymptotic phase √(y² + 4r²) − 2r·asinh(2r/y) with y = 4πx
            let r = r.abs();
            let phase = move |x: f64| {
                let y = 4.0 * pi * x;
                (y * y + 4.0 * r * r).sqrt() - 2.0 * r * (2.0 * r / y).asinh()
            };
            let dphase = move |x: f64| {
                let y = 4.0 * pi * x;
                4.0 * pi * y / (y * y + 4.0 * r * r).sqrt()
            };
            let x_max = (2.0 * r + 30.0) / (4.0 * pi);
            numeric_mellin(
                &f,
                s,
                &MellinHints {
                    cut: 0.5,
                    x_max,
                    osc_tail: Some(OscTailHint {
                        phase: &phase,
                        dphase: &dphase,
                    }),
                    f_noise: 1e-10,
                },
            )
        }
        KernelOrder::Hol { k } => {
            let phase = move |x: f64| 4.0 * pi * x;
            let dphase = move |_: f64| 4.0 * pi;
            let x_max = (k as f64 + 30.0) / (4.0 * pi);
            numeric_mellin(
                &f,
                s,
                &MellinHints {
                    cut: 0.5,
                    x_max,
                    osc_tail: Some(OscTailHint {
                        phase: &phase,
                        dphase: &dphase,
                    }),
                    f_noise: 1e-10,
                },
            )
        }
    }
}

/// Measured-vs-envelope report for the transform decay bounds.
pub fn mellin_kernel_envelope_ratio(order: KernelOrder, s: Complex64) -> Result<f64> {
    let v = mellin_kernel(order, s)?.value.norm();
    let sigma = s.re;
    let tau = s.im;
    let env = match order {
        KernelOrder::Plus { r } => {
            let base = ((1.0 + (tau + 2.0 * r).abs()) * (1.0 + (tau - 2.0 * r).abs()))
                .powf((sigma - 1.0) / 2.0);
            let exp_part = if tau.abs() <= 2.0 * r.abs() {
                (-std::f64::consts::FRAC_PI_2 * (2.0 * r.abs() - tau.abs())).exp()
            } else {
                1.0
            };
            base * exp_part
        }
        KernelOrder::Minus { r } => {
            let base = ((1.0 + (tau + 2.0 * r).abs()) * (1.0 + (tau - 2.0 * r).abs()))
                .powf((sigma - 1.0) / 2.0);
            let exp_part = if tau.abs() >= 2.0 * r.abs() {
                (-std::f64::consts::FRAC_PI_2 * (tau.abs() - 2.0 * r.abs())).exp()
            } else {
                1.0
            };
            base * exp_part
        }
        KernelOrder::Hol { k } => (k as f64 + tau.abs()).powf(sigma - 1.0),
    };
    Ok(v / env)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_recovered_from_exponential() {
        let f = |x: f64| (-x).exp();
        let v = numeric_mellin(&f, c(3.0, 0.0), &MellinHints::default()).unwrap();
        assert!((v.value - 2.0).norm() < 1e-10, "{}", v.value);
        assert!((v.value - 2.0).norm() <= 10.0 * v.error_estimate.max(1e-13));
    }

    #[test]
    fn gaussian_moment() {
        // ∫ x² e^{−x²} dx = Γ(3/2)/2 = √π/4
        let f = |x: f64| x * x * (-x * x).exp();
        let v = numeric_mellin(
            &f,
            c(1.0, 0.0),
            &MellinHints {
                cut: 1.0,
                x_max: 15.0,
                osc_tail: None,
                f_noise: 0.0,
            },
        )
        .unwrap();
        let expect = std::f64::consts::PI.sqrt() / 4.0;
        assert!((v.value.re - expect).abs() < 1e-11);
    }

    #[test]
    fn h_plus_mellin_closed_form() {
        // H⁺ with M = 4, T = 20 at s = 2: 4π(4π sinh(1/T))^{−3} Γ(6)
        let m = 4;
        let t = 20.0f64;
        let sh = (1.0 / t).sinh();
        let f = move |x: f64| {
            sh.powi(m - 1)
                * (4.0 * std::f64::consts::PI * x).powi(m)
                * (-4.0 * std::f64::consts::PI * x * sh).exp()
        };
        let x_max = 40.0 / (4.0 * std::f64::consts::PI * sh);
        let v = numeric_mellin(
            &f,
            c(2.0, 0.0),
            &MellinHints {
                cut: 1.0,
                x_max,
                osc_tail: None,
                f_noise: 0.0,
            },
        )
        .unwrap();
        let expect =
            4.0 * std::f64::consts::PI * (4.0 * std::f64::consts::PI * sh).powi(-3) * 120.0;
        assert!(
            (v.value.re - expect).abs() < 1e-9 * expect,
            "{} vs {expect}",
            v.value.re
        );
    }

    #[test]
    fn minus_kernel_closed_form_simple_value() {
        // r = 0, s = 1: (2π)^{−1} Γ(1/2)² = 1/2
        let v = mellin_kernel(KernelOrder::Minus { r: 0.0 }, c(1.0, 0.0)).unwrap();
        assert!((v.value - 0.5).norm() < 1e-13, "{}", v.value);
    }

    #[test]
    fn closed_forms_match_numeric_oracle_spotchecks() {
        for (order, s) in [
            (KernelOrder::Minus { r: 0.0 }, c(1.0, 0.0)),
            (KernelOrder::Minus { r: 1.0 }, c(0.5, 2.0)),
            (KernelOrder::Plus { r: 1.0 }, c(0.5, 0.0)),
            (KernelOrder::Plus { r: 5.0 }, c(1.2, 3.0)),
            (KernelOrder::Hol { k: 4 }, c(0.5, 1.0)),
        ] {
            let closed = mellin_kernel(order, s).unwrap().value;
            let numeric = numeric_mellin_kernel(order, s).unwrap();
            let tol = (1e-6 * closed.norm()).max(10.0 * numeric.error_estimate);
            assert!(
                (closed - numeric.value).norm() <= tol,
                "{order:?} s={s}: closed {closed} vs numeric {} (tol {tol:.3e})",
                numeric.value
            );
        }
    }

    #[test]
    fn hol_residues_exact() {
        // k = 2, ℓ = 0: (2πi)²/(Γ(2)Γ(1)) = −4π²
        let r0 = mellin_kernel_residue(KernelOrder::Hol { k: 2 }, 0, 1).unwrap();
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        assert!((r0 - c(-4.0 * pi2, 0.0)).norm() < 1e-10 * pi2);
        // k = 2, ℓ = 1: (2πi)⁴/(Γ(3)Γ(2)) = 8π⁴
        let r1 = mellin_kernel_residue(KernelOrder::Hol { k: 2 }, 1, 1).unwrap();
        assert!(
            (r1 - c(8.0 * pi2 * pi2, 0.0)).norm() < 1e-9 * pi2 * pi2,
            "{r1}"
        );
    }

    #[test]
    fn pm_residue_sign_relation_and_bound() {
        let r = 3.0;
        for ell in [0u32, 1, 2] {
            let rp = mellin_kernel_residue(KernelOrder::Plus { r }, ell, 1).unwrap();
            let rm = mellin_kernel_residue(KernelOrder::Minus { r }, ell, 1).unwrap();
            let want = if ell % 2 == 0 { rm } else { -rm };
            assert!((rp - want).norm() < 1e-12 * rm.norm(), "ell={ell}");
        }
        // magnitude envelope at large r: |Res| ≤ C (1+r)^{−1/2} at ℓ = 0
        let big = mellin_kernel_residue(KernelOrder::Plus { r: 100.0 }, 0, 1)
            .unwrap()
            .norm();
        assert!(big <= 5.0 * (1.0f64 + 100.0).powf(-0.5), "residue {big}");
    }

    #[test]
    fn pm_residue_matches_contour_integral() {
        // ∮ of the closed form around s = 2(ir − ℓ)
        let r = 2.0;
        for ell in [0u32, 1] {
            let center = c(-2.0 * ell as f64, 2.0 * r);
            let radius = 0.37;
            let n = 600;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let z = center + radius * c(th.cos(), th.sin());
                let dz = radius * c(-th.sin(), th.cos()) * (2.0 * std::f64::consts::PI / n as f64);
                acc += mellin_kernel(KernelOrder::Minus { r }, z).unwrap().value * dz;
            }
            let expect = Complex64::new(0.0, 2.0 * std::f64::consts::PI)
                * mellin_kernel_residue(KernelOrder::Minus { r }, ell, 1).unwrap();
            assert!(
                (acc - expect).norm() < 1e-8 * expect.norm(),
                "ell={ell}: {acc} vs {expect}"
            );
        }
    }

    #[test]
    fn pole_distance_and_errors() {
        let d = mellin_kernel_pole_distance(KernelOrder::Minus { r: 1.0 }, c(0.0, 2.0));
        assert!(d < 1e-12);
        assert!(mellin_kernel(KernelOrder::Minus { r: 1.0 }, c(0.0, 2.0)).is_err());
        assert!(mellin_kernel_residue(KernelOrder::Plus { r: 1.0 }, 0, 3).is_err());
    }

    #[test]
    fn transform_decay_envelopes_hold() {
        // measured |transform| divided by the stated envelope stays bounded
        // by a stable fitted constant over |τ| ≤ 4r + 50
        for order in [
            KernelOrder::Plus { r: 5.0 },
            KernelOrder::Minus { r: 5.0 },
            KernelOrder::Hol { k: 6 },
        ] {
            let mut cmax = 0.0f64;
            let mut tau = 0.0f64;
            while tau <= 70.0 {
                let s = c(0.5, tau);
                if mellin_kernel_pole_distance(order, s) > 0.3 {
                    cmax = cmax.max(mellin_kernel_envelope_ratio(order, s).unwrap());
                }
                tau += 0.73;
            }
            assert!(
                cmax.is_finite() && cmax < 20.0,
                "{order:?}: fitted C = {cmax}"
            );
        }
    }

    #[test]
    fn tail_error_reported_when_hint_missing() {
        // slowly decaying oscillatory integrand with no tail hint
        let f = |x: f64| (5.0 * x).cos() / (1.0 + x).sqrt();
        let r = numeric_mellin(
            &f,
            c(0.4, 0.0),
            &MellinHints {
                cut: 1.0,
                x_max: 30.0,
                osc_tail: None,
                f_noise: 0.0,
            },
        );
        assert!(matches!(r, Err(Error::Nonconvergence { .. })));
    }
}
