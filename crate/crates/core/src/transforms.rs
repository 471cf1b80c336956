//! Test-function triples, the geometric-side function attached to each, and
//! the transforms between the spectral and geometric sides: the spectral
//! measure integral, the kernel-weighted transforms in both directions, and
//! the finite closed forms for the dyadic triple built from the exponential
//! geometric-side profile.

use crate::besselkern::{bessel_j_array, kernel, KernelOrder};
use crate::complexfn::{log_gamma_unchecked, Sign};
use crate::error::{Error, Result};
use crate::mellin::{numeric_mellin, MellinHints, MellinValue};
use crate::quad::{adaptive, adaptive_c, tanh_sinh, KahanSum, QuadResult};
use num_complex::Complex64;

/// The three test-function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleKind {
    /// Dyadic minus-side bump: h⁻ only.
    Triple1,
    /// Plus/holomorphic pair reconstructed from an explicit geometric-side
    /// profile: h⁺ and hʰᵒˡ only.
    Triple2,
    /// Short-interval minus-side bump centred at ±T with width U.
    Triple4,
}

/// A test-function triple (h⁺, h⁻, hʰᵒˡ) with its parameters.
#[derive(Debug, Clone, Copy)]
pub struct TestFunctionTriple {
    pub kind: TripleKind,
    pub m: u32,
    pub t: f64,
    pub u: Option<f64>,
}

/// Polynomial factor ∏_{j=1}^{M} ((t² + (j−1/2)²)/T²)², shared by the two
/// minus-side bumps. Vanishes to high order at the half-integer spectral
/// points on the imaginary axis.
fn spectral_polynomial(m: u32, t_param: f64, t: f64) -> f64 {
    let mut p = 1.0f64;
    for j in 1..=m {
        let a = (t * t + (j as f64 - 0.5) * (j as f64 - 0.5)) / (t_param * t_param);
        p *= a * a;
    }
    p
}

pub fn make_triple(kind: TripleKind, m: u32, t: f64, u: Option<f64>) -> Result<TestFunctionTriple> {
    if m < 1 {
        return Err(Error::invalid("M must be ≥ 1"));
    }
    if !(t > m as f64) {
        return Err(Error::invalid(format!("need T > M, got T = {t}, M = {m}")));
    }
    match kind {
        TripleKind::Triple4 => {
            let u = u.ok_or_else(|| Error::invalid("triple4 needs the width parameter U"))?;
            if !(u > m as f64 && u < t) {
                return Err(Error::invalid(format!(
                    "triple4 needs M < U < T, got M = {m}, U = {u}, T = {t}"
                )));
            }
        }
        _ => {
            if u.is_some() {
                return Err(Error::invalid("U is only meaningful for triple4"));
            }
        }
    }
    Ok(TestFunctionTriple { kind, m, t, u })
}

impl TestFunctionTriple {
    /// h⁻(t): nonzero for the two minus-side bumps.
    pub fn h_minus(&self, t: f64) -> f64 {
        match self.kind {
            TripleKind::Triple1 => {
                (-t * t / (self.t * self.t)).exp() * spectral_polynomial(self.m, self.t, t)
            }
            TripleKind::Triple2 => 0.0,
            TripleKind::Triple4 => {
                let u = self.u.unwrap();
                let bump =
                    (-((t + self.t) / u).powi(2)).exp() + (-((t - self.t) / u).powi(2)).exp();
                bump * spectral_polynomial(self.m, self.t, t)
            }
        }
    }

    /// h⁺(r): nonzero only for triple2, where it is the closed-form plus
    /// transform of the geometric profile.
    pub fn h_plus(&self, r: f64) -> f64 {
        match self.kind {
            TripleKind::Triple2 => l_plus_closed(self.m, self.t, r),
            _ => 0.0,
        }
    }

    /// hʰᵒˡ(k) for even k ≥ 2: nonzero only for triple2.
    pub fn h_hol(&self, k: u32) -> f64 {
        match self.kind {
            TripleKind::Triple2 => {
                let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * l_hol_closed(self.m, self.t, k)
            }
            _ => 0.0,
        }
    }

    /// Geometric-side profile H⁺(x) (triple2 only):
    /// sinh^{M−1}(1/T) (4πx)^M e^{−4πx sinh(1/T)}.
    pub fn h_plus_profile(&self, x: f64) -> f64 {
        match self.kind {
            TripleKind::Triple2 => {
                let sh = (1.0 / self.t).sinh();
                // assembled in logs: the peak can be large for big M
                let lv = (self.m as f64 - 1.0) * sh.ln()
                    + self.m as f64 * (4.0 * std::f64::consts::PI * x).ln()
                    - 4.0 * std::f64::consts::PI * x * sh;
                lv.exp()
            }
            _ => 0.0,
        }
    }

    /// Exact Mellin transform of the geometric profile:
    /// Ĥ⁺(s) = 4π (4π sinh(1/T))^{−s−1} Γ(s + M), holomorphic for Re s > −M.
    pub fn h_plus_profile_mellin(&self, s: Complex64) -> Result<Complex64> {
        if self.kind != TripleKind::Triple2 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if s.re <= -(self.m as f64) {
            return Err(Error::Domain(format!(
                "profile Mellin holomorphic for Re s > −M = −{}, got {}",
                self.m, s.re
            )));
        }
        let b = 4.0 * std::f64::consts::PI * (1.0 / self.t).sinh();
        let lg = (4.0 * std::f64::consts::PI).ln() - (s + 1.0) * b.ln()
            + log_gamma_unchecked(s + self.m as f64);
        Ok(lg.exp())
    }

    /// Mellin transform of H⁻ = 𝒦⁻h⁻ via the kernel's closed-form transform:
    /// Ĥ⁻(s) = ∫ h⁻(r) Ĵᵣ⁻(s) d_spec r, valid for 0 < Re s < M/2.
    pub fn h_minus_mellin(&self, s: Complex64) -> Result<MellinValue> {
        if self.kind == TripleKind::Triple2 {
            return Ok(MellinValue {
                value: Complex64::new(0.0, 0.0),
                error_estimate: 0.0,
            });
        }
        let m_half = self.m as f64 / 2.0;
        if !(s.re > 0.0 && s.re < m_half) {
            return Err(Error::Domain(format!(
                "supported strip is 0 < Re s < M/2 = {m_half}, got {}",
                s.re
            )));
        }
        let r_max = self.minus_support();
        let mut f = |r: f64| -> Complex64 {
            let h = self.h_minus(r);
            if h == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            let j = crate::mellin::log_mellin_kernel(KernelOrder::Minus { r }, s)
                .map(|lg| lg.exp())
                .unwrap_or(Complex64::new(0.0, 0.0));
            j * h * r * (std::f64::consts::PI * r).tanh() / (std::f64::consts::PI.powi(2))
        };
        let res = adaptive_c(&mut f, 0.0, r_max, 1e-12, 1e-10, 30_000);
        Ok(MellinValue {
            value: res.value,
            error_estimate: res.error,
        })
    }

    /// Transform of the minus-side geometric profile together with its ratio
    /// against the U·T^σ·min(1, (|τ|U/T)^{−M/2}) envelope (U is read as T for
    /// the dyadic bump).
    pub fn h_minus_mellin_envelope(&self, s: Complex64) -> Result<(MellinValue, f64)> {
        let v = self.h_minus_mellin(s)?;
        let u = self.u.unwrap_or(self.t);
        let tau = s.im.abs();
        let envelope =
            u * self.t.powf(s.re) * (tau * u / self.t).powf(-(self.m as f64) / 2.0).min(1.0);
        Ok((v, v.value.norm() / envelope))
    }

    /// Direct numeric Mellin of H⁻ in x-space (expensive oracle route): the
    /// geometric side is evaluated by quadrature at every abscissa.
    pub fn h_minus_mellin_direct(&self, s: Complex64, tol: f64) -> Result<MellinValue> {
        let r_max = self.minus_support();
        let f = move |x: f64| {
            k_transform(&|r| self.h_minus(r), Sign::Minus, x, r_max, tol)
                .map(|q| q.value)
                .unwrap_or(f64::NAN)
        };
        let x_max = (2.0 * r_max + 60.0) / (4.0 * std::f64::consts::PI);
        numeric_mellin(
            &f,
            s,
            &MellinHints {
                cut: 0.5,
                x_max,
                osc_tail: None,
                f_noise: tol,
            },
        )
    }

    /// Spectral-parameter truncation radius beyond which h⁻ (resp. h⁺) is
    /// below 1e-16 of its peak scale.
    pub fn minus_support(&self) -> f64 {
        match self.kind {
            TripleKind::Triple1 => {
                // e^{−u²} u^{4M} at u = t/T dies once u² − 4M ln u > 45
                let m = self.m as f64;
                let mut u = (2.0 * m).sqrt().max(2.0);
                while u * u - 4.0 * m * u.ln() < 45.0 {
                    u += 0.25;
                }
                u * self.t
            }
            TripleKind::Triple2 => 0.0,
            TripleKind::Triple4 => {
                let u = self.u.unwrap();
                // Gaussian width u around ±T, polynomial grows like (t/T)^{4M}
                self.t + u * (45.0 + 4.0 * self.m as f64 * 2.0f64.ln()).sqrt()
            }
        }
    }

    /// Window outside which the minus-side bump is numerically zero.
    pub fn minus_bump_range(&self) -> (f64, f64) {
        match self.kind {
            TripleKind::Triple1 => (0.0, self.minus_support()),
            TripleKind::Triple2 => (0.0, 0.0),
            TripleKind::Triple4 => {
                let u = self.u.unwrap();
                let w = u * (45.0 + 4.0 * self.m as f64 * 2.0f64.ln()).sqrt();
                ((self.t - w).max(0.0), self.t + w)
            }
        }
    }

    pub fn plus_support(&self) -> f64 {
        match self.kind {
            TripleKind::Triple2 => {
                let mut r = 5.0f64;
                let peak = self.h_plus(0.5).abs().max(1e-300);
                while self.h_plus(r).abs() > 1e-16 * peak && r < 2_000.0 {
                    r += 2.0;
                }
                r
            }
            _ => 0.0,
        }
    }

    /// Weight cutoff for the holomorphic sums.
    pub fn hol_support(&self) -> u32 {
        match self.kind {
            TripleKind::Triple2 => {
                let mut k = (4.0 * self.t) as u32;
                let peak = l_hol_closed(self.m, self.t, (self.t as u32).max(4) & !1).abs();
                while k < 400_000 {
                    if ((k as f64 - 1.0) * l_hol_closed(self.m, self.t, k).abs()) < 1e-16 * peak {
                        break;
                    }
                    k += ((self.t / 4.0) as u32).max(2) & !1;
                }
                k + 2
            }
            _ => 0,
        }
    }
}

// ---------------------------------------------------------------------------
// closed forms for the triple2 transforms
// ---------------------------------------------------------------------------

/// i^k · (holomorphic transform of the geometric profile)(k): the finite sum
/// from the terminating hypergeometric reduction of the Legendre function,
///
/// 2π tanh^{M−1}(1/T) sech(1/T) e^{−(k−1)/T} Σ_{j<M} (−1)^j C(M−1,j)
///     ((M−1+j)!/(M−1)!) ((k−2+M)!/(k−1+j)!) 2^{−j} e^{−j/T} sech^j(1/T).
///
/// Positive for all even k > M; cross-validated against direct quadrature of
/// the defining integral.
pub fn l_hol_closed(m: u32, t_param: f64, k: u32) -> f64 {
    let mm = m as i64;
    let kk = k as i64;
    let th = (1.0 / t_param).tanh();
    let sech = 1.0 / (1.0 / t_param).cosh();
    let mut binom = 1.0f64; // C(M-1, j)
    let mut rising = 1.0f64; // (M-1+j)!/(M-1)!
    let mut sum = KahanSum::new();
    for j in 0..mm {
        // (k−2+M)!/(k−1+j)! = ∏_{i=k+j}^{k+M−2} i
        let mut fall = 1.0f64;
        let mut i = kk + j;
        while i <= kk + mm - 2 {
            fall *= i as f64;
            i += 1;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign
            * binom
            * rising
            * fall
            * 0.5f64.powi(j as i32)
            * (-(j as f64) / t_param).exp()
            * sech.powi(j as i32);
        sum.add(term);
        // update running coefficients for j+1
        binom *= (mm - 1 - j) as f64 / (j + 1) as f64;
        rising *= (mm + j) as f64;
    }
    2.0 * std::f64::consts::PI
        * th.powi((mm - 1) as i32)
        * sech
        * (-(k as f64 - 1.0) / t_param).exp()
        * sum.value()
}

/// (plus transform of the geometric profile)(r): the finite sum
///
/// −(2π/sinh πr) tanh^{M−1}(1/T) sech(1/T) Σ_{j<M} (−1)^j C(M−1,j)
///     ((M−1+j)!/(M−1)!) 2^{−j} e^{−j/T} sech^j(1/T) · Im[e^{−2ir/T} P_j(2ir)]
///
/// with P_j(ρ) = ∏_{i=j+1}^{M−1} (i + ρ).
pub fn l_plus_closed(m: u32, t_param: f64, r: f64) -> f64 {
    let mm = m as i64;
    let th = (1.0 / t_param).tanh();
    let sech = 1.0 / (1.0 / t_param).cosh();
    let pref = th.powi((mm - 1) as i32) * sech;
    let mut binom = 1.0f64;
    let mut rising = 1.0f64;
    let use_limit = r.abs() < 1e-5;
    let mut sum = KahanSum::new();
    for j in 0..mm {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let coef = sign
            * binom
            * rising
            * 0.5f64.powi(j as i32)
            * (-(j as f64) / t_param).exp()
            * sech.powi(j as i32);
        let contrib = if use_limit {
            // lim_{r→0} Im[e^{−2ir/T} P_j(2ir)] / sinh(πr) = (2P_j'(0) − 2P_j(0)/T)/π
            let mut p0 = 1.0f64;
            let mut dlog = 0.0f64;
            for i in (j + 1)..mm {
                p0 *= i as f64;
                dlog += 1.0 / i as f64;
            }
            (2.0 * p0 * dlog - 2.0 * p0 / t_param) / std::f64::consts::PI
        } else {
            let rho = Complex64::new(0.0, 2.0 * r);
            let mut p = Complex64::new(1.0, 0.0);
            for i in (j + 1)..mm {
                p *= rho + i as f64;
            }
            (Complex64::from_polar(1.0, -2.0 * r / t_param) * p).im
                / (std::f64::consts::PI * r).sinh()
        };
        sum.add(coef * contrib);
        binom *= (mm - 1 - j) as f64 / (j + 1) as f64;
        rising *= (mm + j) as f64;
    }
    -2.0 * std::f64::consts::PI * pref * sum.value()
}

// ---------------------------------------------------------------------------
// spectral-side and geometric-side transforms
// ---------------------------------------------------------------------------

/// ∫ h(r) d_spec r with d_spec r = (2π²)^{−1} r tanh(πr) dr over ℝ (h even).
pub fn spectral_measure_integral(h: &dyn Fn(f64) -> f64, r_max: f64) -> QuadResult {
    let mut f =
        |r: f64| h(r) * r * (std::f64::consts::PI * r).tanh() / std::f64::consts::PI.powi(2);
    adaptive(&mut f, 0.0, r_max, 1e-13, 1e-11, 20_000)
}

/// Σ_{k even ≥ 2} (k−1)/(2π²) · hʰᵒˡ(k).
pub fn n_hol(h_hol: &dyn Fn(u32) -> f64, k_max: u32) -> f64 {
    let mut s = KahanSum::new();
    let mut k = 2;
    while k <= k_max {
        s.add((k as f64 - 1.0) / (2.0 * std::f64::consts::PI.powi(2)) * h_hol(k));
        k += 2;
    }
    s.value()
}

/// Geometric-side transform of a continuous weight:
/// (𝒦^± h)(x) = ∫ 𝒥ᵣ^±(x) h(r) d_spec r.
pub fn k_transform(
    h: &dyn Fn(f64) -> f64,
    sign: Sign,
    x: f64,
    r_max: f64,
    tol: f64,
) -> Result<QuadResult> {
    if !(x > 0.0) {
        return Err(Error::Domain("k_transform needs x > 0".into()));
    }
    let mut f = |r: f64| {
        let hv = h(r);
        if hv == 0.0 {
            return 0.0;
        }
        let order = match sign {
            Sign::Plus => KernelOrder::Plus { r },
            Sign::Minus => KernelOrder::Minus { r },
        };
        let kv = kernel(order, x).unwrap_or(0.0);
        kv * hv * r * (std::f64::consts::PI * r).tanh() / std::f64::consts::PI.powi(2)
    };
    Ok(adaptive(&mut f, 0.0, r_max, tol, 1e-9, 8_000))
}

/// Holomorphic geometric-side transform:
/// (𝒦ʰᵒˡ hʰᵒˡ)(x) = Σ_{k even} (k−1)/(2π²) 𝒥ₖʰᵒˡ(x) hʰᵒˡ(k), evaluated with a
/// single Bessel array per abscissa.
pub fn k_transform_hol(h_hol: &dyn Fn(u32) -> f64, x: f64, k_max: u32) -> f64 {
    let y = 4.0 * std::f64::consts::PI * x;
    let js = bessel_j_array(y, k_max as usize);
    let mut s = KahanSum::new();
    let mut k = 2u32;
    while k <= k_max {
        let hv = h_hol(k);
        if hv != 0.0 {
            let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
            let jker = 2.0 * std::f64::consts::PI * sign * js[(k - 1) as usize];
            s.add((k as f64 - 1.0) / (2.0 * std::f64::consts::PI.powi(2)) * jker * hv);
        }
        k += 2;
    }
    s.value()
}

/// Spectral-side transform of a geometric-side weight:
/// (ℒ^± H)(t) = ∫₀^∞ 𝒥ₜ^±(x) H(x) dx/x by direct quadrature.
pub fn l_transform(
    big_h: &dyn Fn(f64) -> f64,
    order: KernelOrder,
    x_max: f64,
    tol: f64,
) -> Result<QuadResult> {
    order.validate()?;
    let mut f = |x: f64| {
        let hv = big_h(x);
        if hv == 0.0 || x == 0.0 {
            return 0.0;
        }
        kernel(order, x).map(|k| k * hv / x).unwrap_or(0.0)
    };
    let head = tanh_sinh(&mut f, 0.0, 1.0, tol);
    let body = adaptive(&mut f, 1.0, x_max, tol, 1e-9, 20_000);
    Ok(QuadResult {
        value: head.value + body.value,
        error: head.error + body.error,
    })
}

/// Reconstruction of the geometric profile from the triple2 spectral pair:
/// (𝒦⁺h⁺)(x) + (𝒦ʰᵒˡhʰᵒˡ)(x), which must reproduce H⁺(x).
pub fn sears_titchmarsh_reconstruction(
    triple: &TestFunctionTriple,
    x: f64,
    tol: f64,
) -> Result<f64> {
    if triple.kind != TripleKind::Triple2 {
        return Err(Error::invalid("reconstruction applies to triple2"));
    }
    let plus = k_transform(
        &|r| triple.h_plus(r),
        Sign::Plus,
        x,
        triple.plus_support(),
        tol,
    )?;
    let hol = k_transform_hol(&|k| triple.h_hol(k), x, triple.hol_support());
    Ok(plus.value + hol)
}
