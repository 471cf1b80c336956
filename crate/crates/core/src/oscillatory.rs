//! Oscillation-aware quadrature: generic phase/amplitude integrals with
//! stationary-point handling, the smoothed functional-equation weights, and
//! the stationary-phase double integral of the short-interval analysis.

use crate::complexfn::log_afe_gamma;
use crate::error::{Error, Result};
use crate::mellin::MellinValue;
use crate::quad::{adaptive_c, KahanSum};
use num_complex::Complex64;

/// Phase/amplitude description of ∫ A(v) e(φ(v)) dv on a finite interval,
/// with e(x) = exp(2πi x). Derivative oracles up to order three feed the
/// panel sizing and the consistency validation.
pub struct PhaseSpec<'a> {
    pub phase: &'a dyn Fn(f64) -> f64,
    pub dphase: &'a dyn Fn(f64) -> f64,
    pub d2phase: &'a dyn Fn(f64) -> f64,
    pub d3phase: &'a dyn Fn(f64) -> f64,
    pub amplitude: &'a dyn Fn(f64) -> f64,
    pub damplitude: &'a dyn Fn(f64) -> f64,
    pub interval: (f64, f64),
}

impl PhaseSpec<'_> {
    /// Check the derivative oracles against central differences on a sample
    /// grid; the mismatch must stay below 1e-6 relative to the local scale.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.interval;
        if !(b > a) {
            return Err(Error::invalid("interval must be nonempty"));
        }
        let h = (b - a) * 1e-6;
        for i in 1..=7 {
            let v = a + (b - a) * i as f64 / 8.0;
            let fd_phase = ((self.phase)(v + h) - (self.phase)(v - h)) / (2.0 * h);
            let scale = fd_phase.abs().max(1.0);
            if ((self.dphase)(v) - fd_phase).abs() > 1e-6 * scale * 10.0 {
                return Err(Error::invalid(format!(
                    "dphase oracle inconsistent with finite differences at v = {v}"
                )));
            }
            let fd_d2 = ((self.dphase)(v + h) - (self.dphase)(v - h)) / (2.0 * h);
            if ((self.d2phase)(v) - fd_d2).abs() > 1e-5 * fd_d2.abs().max(1.0) * 10.0 {
                return Err(Error::invalid(format!(
                    "d2phase oracle inconsistent at v = {v}"
                )));
            }
            let fd_amp = ((self.amplitude)(v + h) - (self.amplitude)(v - h)) / (2.0 * h);
            if ((self.damplitude)(v) - fd_amp).abs() > 1e-6 * fd_amp.abs().max(1.0) * 10.0 {
                return Err(Error::invalid(format!(
                    "damplitude oracle inconsistent at v = {v}"
                )));
            }
        }
        Ok(())
    }

    fn integrand(&self, v: f64) -> Complex64 {
        let a = (self.amplitude)(v);
        if a == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        a * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (self.phase)(v))
    }

    /// Stationary points of the phase inside the interval, located by a scan
    /// of the derivative oracle plus bisection refinement.
    pub fn stationary_points(&self) -> Vec<f64> {
        let (a, b) = self.interval;
        let n = 512;
        let mut out = Vec::new();
        let mut prev_v = a;
        let mut prev_d = (self.dphase)(a);
        for i in 1..=n {
            let v = a + (b - a) * i as f64 / n as f64;
            let d = (self.dphase)(v);
            if prev_d == 0.0 {
                out.push(prev_v);
            } else if prev_d * d < 0.0 {
                let (mut lo, mut hi) = (prev_v, v);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if (self.dphase)(lo) * (self.dphase)(mid) <= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                out.push(0.5 * (lo + hi));
            }
            prev_v = v;
            prev_d = d;
        }
        out
    }
}

/// Adaptive integration of a `PhaseSpec`: the interval is split at the
/// stationary points of the phase and each monotone piece is integrated with
/// globally adaptive Gauss–Kronrod panels (the error estimates force the
/// panel density up to the local oscillation rate; stationary-point
/// neighbourhoods shrink like |φ''|^{−1/2} automatically).
pub fn oscillatory_quad(spec: &PhaseSpec, tol: f64) -> Result<MellinValue> {
    spec.validate()?;
    let (a, b) = spec.interval;
    let mut cuts = vec![a];
    for s in spec.stationary_points() {
        if s > a + 1e-14 && s < b - 1e-14 {
            cuts.push(s);
        }
    }
    cuts.push(b);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0f64;
    for w in cuts.windows(2) {
        let mut f = |v: f64| spec.integrand(v);
        let r = adaptive_c(&mut f, w[0], w[1], tol, 1e-11, 60_000);
        total += r.value;
        err += r.error;
    }
    if err > tol.max(1e-8 * total.norm()) * 50.0 {
        return Err(Error::Nonconvergence {
            what: "oscillatory_quad".into(),
            estimate: err,
            tolerance: tol,
        });
    }
    Ok(MellinValue {
        value: total,
        error_estimate: err,
    })
}

/// Smoothed functional-equation weight
/// V_±(x, t, ε) = (1/2πi) ∫ e^{s²} (X^{±1}/x)^s · G(½+s, t, ε)/G(½, t, ε) · ds/s
/// on the vertical line Re s = σ > 0; the e^{s²} factor certifies the
/// truncation.
pub fn afe_weight(
    x: f64,
    t: f64,
    eps: i32,
    t_g: f64,
    big_x: f64,
    pm: crate::complexfn::Sign,
    sigma: f64,
) -> Result<Complex64> {
    if !(x > 0.0) || big_x < 1.0 {
        return Err(Error::Domain("need x > 0 and X ≥ 1".into()));
    }
    if sigma <= 1e-6 {
        return Err(Error::pole("integrand pole at s = 0", sigma));
    }
    let log_g_half = log_afe_gamma(Complex64::new(0.5, 0.0), t, eps, t_g)?;
    let ratio_arg = big_x.powf(pm.as_f64()) / x;
    let lr = ratio_arg.ln();
    let tau_max = (sigma * sigma + 48.0).sqrt();
    let mut f = |tau: f64| -> Complex64 {
        let s = Complex64::new(sigma, tau);
        let lg = match log_afe_gamma(s + 0.5, t, eps, t_g) {
            Ok(v) => v,
            Err(_) => return Complex64::new(0.0, 0.0),
        };
        ((s * s) + s * lr + lg - log_g_half).exp() / s
    };
    let r = adaptive_c(&mut f, -tau_max, tau_max, 1e-12, 1e-10, 8_000);
    Ok(r.value / (2.0 * std::f64::consts::PI))
}

/// The standard smooth bump exp(1 − 1/(1 − v²)) on |v| < 1, zero outside.
pub fn bump(v: f64) -> f64 {
    if v.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - v * v)).exp()
    }
}

/// Stationary-phase double integral: the outer x-integral of the modulus of
///
/// ∫ e(v·(t/U − 2π²t_g x/(Uc)) − v³·π⁴ t_g x/(3U³c)) Ω(v) dv
///
/// with Ω the built-in bump. The stationary locus sits at
/// x ≈ t·c/(2π² t_g), so the modulus collapses once x moves past it.
pub fn stat_integral(t: f64, t_g: f64, u: f64, c: u32, x_range: (f64, f64)) -> Result<f64> {
    if !(t_g > 1.0) || !(u > 1.0) || c < 1 {
        return Err(Error::Domain("need t_g > 1, U > 1, c ≥ 1".into()));
    }
    if !(t > 0.0) || t < 1.5 * t_g || t > 2.5 * t_g {
        return Err(Error::Domain(format!(
            "t must sit in the transition window t ≍ 2t_g, got t = {t}, t_g = {t_g}"
        )));
    }
    let (x1, x2) = x_range;
    if !(x2 > x1 && x1 > 0.0) {
        return Err(Error::Domain("bad x range".into()));
    }
    let cc = c as f64;
    let inner_modulus = |x: f64| -> f64 {
        let lin = t / u - 2.0 * std::f64::consts::PI.powi(2) * t_g * x / (u * cc);
        let cub = std::f64::consts::PI.powi(4) * t_g * x / (3.0 * u.powi(3) * cc);
        let mut f = |v: f64| -> Complex64 {
            let om = bump(v);
            if om == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let phi = v * lin - v * v * v * cub;
            om * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phi)
        };
        adaptive_c(&mut f, -1.0, 1.0, 1e-12, 1e-9, 40_000)
            .value
            .norm()
    };
    // composite Simpson over the outer variable; |inner| is smooth except at
    // isolated zero crossings of the modulus
    let n = 480usize;
    let h = (x2 - x1) / n as f64;
    let mut acc = KahanSum::new();
    for i in 0..=n {
        let w = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc.add(w * inner_modulus(x1 + i as f64 * h));
    }
    Ok(acc.value() * h / 3.0)
}

/// Inner integral alone (diagnostic for the no-stationary-point branch).
pub fn stat_integral_inner(t: f64, t_g: f64, u: f64, c: u32, x: f64) -> f64 {
    let cc = c as f64;
    let lin = t / u - 2.0 * std::f64::consts::PI.powi(2) * t_g * x / (u * cc);
    let cub = std::f64::consts::PI.powi(4) * t_g * x / (3.0 * u.powi(3) * cc);
    let mut f = |v: f64| -> Complex64 {
        let om = bump(v);
        if om == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let phi = v * lin - v * v * v * cub;
        om * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phi)
    };
    adaptive_c(&mut f, -1.0, 1.0, 1e-12, 1e-9, 40_000)
        .value
        .norm()
}
