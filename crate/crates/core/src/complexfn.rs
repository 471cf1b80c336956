//! Complex special functions: principal-branch log-gamma, completed gamma
//! factors, the paired gamma products used by the summation-formula kernels,
//! Riemann/Hurwitz zeta by Euler–Maclaurin, and the six-factor gamma quotient
//! of the approximate functional equation.
//!
//! Everything that can overflow for large spectral parameters has a log-space
//! variant; products of gamma factors are assembled as sums of logs and
//! exponentiated once.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub const POLE_GUARD: f64 = 1e-8;

/// Sign label for the paired kernels and gamma factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign product: `Plus` acts as +1.
    pub fn compose(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    // valid for Re(z) >= 0.5
    let zm1 = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    let half_log_two_pi = 0.918_938_533_204_672_7;
    (zm1 + 0.5) * t.ln() - t + half_log_two_pi + a.ln()
}

/// log of sin(πz), stable for large |Im z|; branch consistent with the
/// factored exponential form (exp of the result is always exactly sin(πz)).
fn log_sin_pi(z: Complex64) -> Complex64 {
    let y = z.im;
    if y.abs() < 20.0 {
        let n = (z.re / 2.0).round();
        let zr = z - 2.0 * n;
        let s = (std::f64::consts::PI * zr).sin();
        return s.ln();
    }
    let i = Complex64::I;
    let pi = std::f64::consts::PI;
    if y > 0.0 {
        // sin(πz) = (i/2) e^{-iπz} (1 - e^{2iπz})
        let w = (2.0 * i * pi * z).exp();
        Complex64::new(-std::f64::consts::LN_2, pi / 2.0) - i * pi * z + (1.0 - w).ln()
    } else {
        let w = (-2.0 * i * pi * z).exp();
        Complex64::new(-std::f64::consts::LN_2, -pi / 2.0) + i * pi * z + (1.0 - w).ln()
    }
}

fn near_nonpositive_integer(z: Complex64) -> Option<(i64, f64)> {
    if z.re > 0.5 {
        return None;
    }
    let n = z.re.round();
    if n > 0.0 {
        return None;
    }
    let d = (z - n).norm();
    if d < POLE_GUARD {
        Some((n as i64, d))
    } else {
        None
    }
}

/// Principal-branch log Γ(z).
///
/// Lanczos for Re(z) ≥ 1/2, reflection otherwise. In the reflected half-plane
/// the imaginary part is exact modulo 2π.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if let Some((n, d)) = near_nonpositive_integer(z) {
        return Err(Error::pole(format!("gamma pole at z = {n}"), d));
    }
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        lanczos_log_gamma(z)
    } else {
        // Γ(z) Γ(1−z) = π / sin(πz)
        std::f64::consts::PI.ln() - log_sin_pi(z) - lanczos_log_gamma(1.0 - z)
    }
}

/// Γ(z) via `log_gamma`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// log Γ_ℝ(s) = −(s/2)·log π + log Γ(s/2).
pub fn log_gamma_r(s: Complex64) -> Result<Complex64> {
    let half = s / 2.0;
    if let Some((n, d)) = near_nonpositive_integer(half) {
        return Err(Error::pole(format!("gamma_R pole at s = {}", 2 * n), d));
    }
    Ok(-half * std::f64::consts::PI.ln() + log_gamma_unchecked(half))
}

/// Γ_ℝ(s) = π^{−s/2} Γ(s/2).
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    Ok(log_gamma_r(s)?.exp())
}

/// log G^±(s) where G^±(s) = (2π)^{−s} Γ(s) exp(±iπs/2).
pub fn log_g_pm(s: Complex64, sign: Sign) -> Result<Complex64> {
    if let Some((n, d)) = near_nonpositive_integer(s) {
        return Err(Error::pole(format!("G± pole at s = {n}"), d));
    }
    let two_pi_ln = (2.0 * std::f64::consts::PI).ln();
    let rot = Complex64::new(0.0, sign.as_f64() * std::f64::consts::FRAC_PI_2);
    Ok(-s * two_pi_ln + log_gamma_unchecked(s) + rot * s)
}

pub fn g_pm(s: Complex64, sign: Sign) -> Result<Complex64> {
    Ok(log_g_pm(s, sign)?.exp())
}

/// Residue of G^± at s = −ℓ: (±i)^ℓ (2π)^ℓ / ℓ!.
///
/// Equal to Res_{s=−ℓ}Γ(s)·(2π)^ℓ e^{∓iπℓ/2}; validated against a contour
/// integral of `g_pm` in the tests.
pub fn g_pm_residue(ell: u32, sign: Sign) -> Complex64 {
    let i_pow = match (sign, ell % 4) {
        (_, 0) => Complex64::new(1.0, 0.0),
        (Sign::Plus, 1) => Complex64::new(0.0, 1.0),
        (Sign::Minus, 1) => Complex64::new(0.0, -1.0),
        (_, 2) => Complex64::new(-1.0, 0.0),
        (Sign::Plus, 3) => Complex64::new(0.0, -1.0),
        (Sign::Minus, 3) => Complex64::new(0.0, 1.0),
        _ => unreachable!(),
    };
    let mut mag = 1.0f64;
    for j in 1..=ell {
        mag *= 2.0 * std::f64::consts::PI / j as f64;
    }
    i_pow * mag
}

/// log(e^a + e^b) for complex a, b, protecting against overflow.
pub fn log_sum_exp(a: Complex64, b: Complex64) -> Complex64 {
    if !a.re.is_finite() {
        return b;
    }
    if !b.re.is_finite() {
        return a;
    }
    if a.re >= b.re {
        a + (1.0 + (b - a).exp()).ln()
    } else {
        b + (1.0 + (a - b).exp()).ln()
    }
}

/// log G₀(s) with G₀(s) = 2(2π)^{−s}Γ(s)cos(πs/2) = G⁺(s) + G⁻(s).
pub fn log_g0(s: Complex64) -> Result<Complex64> {
    Ok(log_sum_exp(
        log_g_pm(s, Sign::Plus)?,
        log_g_pm(s, Sign::Minus)?,
    ))
}

/// log G₁(s) with G₁(s) = 2(2π)^{−s}Γ(s)sin(πs/2) = −i(G⁺(s) − G⁻(s)).
pub fn log_g1(s: Complex64) -> Result<Complex64> {
    let a = log_g_pm(s, Sign::Plus)?;
    let b = log_g_pm(s, Sign::Minus)? + Complex64::new(0.0, std::f64::consts::PI);
    Ok(Complex64::new(0.0, -std::f64::consts::FRAC_PI_2) + log_sum_exp(a, b))
}

fn check_mu(mu: &[Complex64; 3]) -> Result<()> {
    let sum = mu[0] + mu[1] + mu[2];
    if sum.norm() > 1e-10 {
        return Err(Error::invalid(format!(
            "spectral parameters must sum to zero, got {sum}"
        )));
    }
    for m in mu {
        if m.re <= -0.5 || m.re >= 0.5 {
            return Err(Error::invalid(format!(
                "spectral parameter real part {} outside (-1/2, 1/2)",
                m.re
            )));
        }
    }
    Ok(())
}

/// Distance from `s` to the pole lattice `{ -μ_j - ℓ : ℓ ≥ 0 }`.
pub fn script_g_pole_distance(s: Complex64, mu: &[Complex64; 3]) -> f64 {
    let mut best = f64::INFINITY;
    for m in mu {
        let w = s + m;
        // nearest nonpositive-integer lattice point to -w along the reals
        let ell = (-w.re).round().max(0.0);
        for e in [ell - 1.0, ell, ell + 1.0] {
            if e >= 0.0 {
                let d = (w + e).norm();
                if d < best {
                    best = d;
                }
            }
        }
    }
    best
}

/// log of 𝒢_μ^±(s) = ½∏G₀(s+μ_j) ± (1/2i)∏G₁(s+μ_j).
pub fn log_script_g(s: Complex64, mu: &[Complex64; 3], sign: Sign) -> Result<Complex64> {
    check_mu(mu)?;
    let d = script_g_pole_distance(s, mu);
    if d < POLE_GUARD {
        return Err(Error::pole("script-G pole lattice s = -mu_j - l", d));
    }
    let mut p0 = Complex64::new(0.0, 0.0);
    let mut p1 = Complex64::new(0.0, 0.0);
    for m in mu {
        p0 += log_g0(s + m)?;
        p1 += log_g1(s + m)?;
    }
    let ln_half = -std::f64::consts::LN_2;
    // ±1/(2i) = ∓i/2
    let c1 = match sign {
        Sign::Plus => Complex64::new(ln_half, -std::f64::consts::FRAC_PI_2),
        Sign::Minus => Complex64::new(ln_half, std::f64::consts::FRAC_PI_2),
    };
    Ok(log_sum_exp(ln_half + p0, c1 + p1))
}

pub fn script_g(s: Complex64, mu: &[Complex64; 3], sign: Sign) -> Result<Complex64> {
    Ok(log_script_g(s, mu, sign)?.exp())
}

// Bernoulli numbers B_{2k}, k = 1..12.
const BERNOULLI_2K: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Hurwitz zeta ζ(s, a) = Σ_{n≥0} (n+a)^{−s} by Euler–Maclaurin.
///
/// Shift N = max(15, |Im s|), 12 Bernoulli correction terms; reliable for
/// Re(s) ≥ −5 and |Im s| ≤ a few thousand at relative 1e-10.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!(
            "hurwitz_zeta needs a in (0,1], got {a}"
        )));
    }
    let d = (s - 1.0).norm();
    if d < POLE_GUARD {
        return Err(Error::pole("zeta pole at s = 1", d));
    }
    let n_shift = 15.max(s.im.abs().ceil() as usize);
    let mut head = crate::quad::KahanSumC::new();
    for n in 0..n_shift {
        head.add((-s * (n as f64 + a).ln()).exp());
    }
    let q = n_shift as f64 + a;
    let lq = q.ln();
    // tail integral + midpoint correction
    let mut value = head.value();
    value += ((1.0 - s) * lq).exp() / (s - 1.0);
    value += 0.5 * (-s * lq).exp();
    // Euler–Maclaurin corrections
    let mut rising = s; // (s)_{2k-1} built incrementally
    let mut fact = 2.0f64; // (2k)!
    let mut qpow = (-(s + 1.0) * lq).exp(); // q^{-s-2k+1} at k=1
    for (k, &b2k) in BERNOULLI_2K.iter().enumerate() {
        let term = rising * (b2k / fact) * qpow;
        value += term;
        if term.norm() < 1e-18 * value.norm().max(1e-300) {
            break;
        }
        let kk = k as f64 + 1.0;
        rising *= (s + (2.0 * kk - 1.0)) * (s + 2.0 * kk);
        fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
        qpow /= q * q;
    }
    Ok(value)
}

/// Riemann ζ(s).
pub fn zeta(s: Complex64) -> Result<Complex64> {
    hurwitz_zeta(s, 1.0)
}

/// log of the approximate-functional-equation gamma factor
/// G(s, t, ε) = ∏_± Γ_ℝ(s + ½ − ε/2 ± it + 2it_g) Γ_ℝ(s + ½ − ε/2 ± it) Γ_ℝ(s + ½ − ε/2 ± it − 2it_g).
pub fn log_afe_gamma(s: Complex64, t: f64, eps: i32, t_g: f64) -> Result<Complex64> {
    if eps != 1 && eps != -1 {
        return Err(Error::invalid(format!("eps must be ±1, got {eps}")));
    }
    let base = s + 0.5 - 0.5 * eps as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for pm in [1.0, -1.0] {
        let core = base + Complex64::new(0.0, pm * t);
        for shift in [2.0 * t_g, 0.0, -2.0 * t_g] {
            acc += log_gamma_r(core + Complex64::new(0.0, shift))?;
        }
    }
    Ok(acc)
}

pub fn afe_gamma(s: Complex64, t: f64, eps: i32, t_g: f64) -> Result<Complex64> {
    Ok(log_afe_gamma(s, t, eps, t_g)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_at_one_and_half() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-14);
        let lg_half = log_gamma(c(0.5, 0.0)).unwrap();
        let expect = std::f64::consts::PI.sqrt().ln();
        assert!((lg_half.re - expect).abs() < 1e-14);
        assert!(lg_half.im.abs() < 1e-14);
    }

    #[test]
    fn gamma_recurrence_random_grid() {
        // Γ(z+1) = z Γ(z)
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let z = c(100.0 * (next() - 0.5), 100.0 * (next() - 0.5));
            if near_nonpositive_integer(z).is_some() || near_nonpositive_integer(z + 1.0).is_some()
            {
                continue;
            }
            let lhs = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
            assert!(
                (lhs - z).norm() <= 1e-11 * z.norm().max(1.0),
                "recurrence failed at {z}: {lhs}"
            );
        }
    }

    #[test]
    fn reflection_identity_grid() {
        // Γ(z)Γ(1−z) = π / sin(πz), checked on |z| ≤ 50 via logs + exp
        let mut seed = 0x2545f4914f6cdd1du64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let z = c(100.0 * (next() - 0.5) / 2.0, 100.0 * (next() - 0.5) / 2.0);
            if z.im.abs() < 1e-3 || near_nonpositive_integer(z).is_some() {
                continue;
            }
            let lhs = (log_gamma(z).unwrap() + log_gamma(1.0 - z).unwrap()).exp();
            let rhs = std::f64::consts::PI / (std::f64::consts::PI * z).sin();
            // compare in relative terms; both can be astronomically small
            if rhs.norm() > 1e-280 && rhs.norm() < 1e280 {
                assert!(
                    (lhs - rhs).norm() <= 1e-12 * rhs.norm(),
                    "reflection failed at {z}: {} vs {}",
                    lhs,
                    rhs
                );
            }
        }
    }

    #[test]
    fn duplication_identity_grid() {
        // Γ(z)Γ(z+1/2) = 2^{1−2z} √π Γ(2z)
        let mut seed = 0xda3e39cb94b95bdbu64;
        let mut next = || {
            seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (seed >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let z = c(50.0 * (next() - 0.5), 50.0 * (next() - 0.5));
            if near_nonpositive_integer(z).is_some()
                || near_nonpositive_integer(z + 0.5).is_some()
                || near_nonpositive_integer(2.0 * z).is_some()
            {
                continue;
            }
            let lhs = log_gamma(z).unwrap() + log_gamma(z + 0.5).unwrap();
            let rhs = (1.0 - 2.0 * z) * std::f64::consts::LN_2
                + 0.5 * std::f64::consts::PI.ln()
                + log_gamma(2.0 * z).unwrap();
            let diff = (lhs - rhs).exp();
            assert!(
                (diff - 1.0).norm() < 1e-11,
                "duplication failed at {z}: ratio {diff}"
            );
        }
    }

    #[test]
    fn gamma_r_values() {
        // Γ_ℝ(1) = 1, Γ_ℝ(2) = 1/π, Γ_ℝ(4) = 1/π²
        let pi = std::f64::consts::PI;
        assert!((gamma_r(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma_r(c(2.0, 0.0)).unwrap() - 1.0 / pi).norm() < 1e-15);
        assert!((gamma_r(c(4.0, 0.0)).unwrap() - 1.0 / (pi * pi)).norm() < 1e-15);
    }

    #[test]
    fn g_pm_value_and_residues() {
        // G^+(1) = (2π)^{-1} Γ(1) e^{iπ/2} = i/(2π)
        let v = g_pm(c(1.0, 0.0), Sign::Plus).unwrap();
        let expect = Complex64::new(0.0, 1.0 / (2.0 * std::f64::consts::PI));
        assert!((v - expect).norm() < 1e-14);
        // residue at ℓ = 0 is 1 for both signs
        assert!((g_pm_residue(0, Sign::Plus) - 1.0).norm() < 1e-15);
        assert!((g_pm_residue(0, Sign::Minus) - 1.0).norm() < 1e-15);
        // ℓ = 1: (±i)(2π)
        let r1p = g_pm_residue(1, Sign::Plus);
        assert!((r1p - c(0.0, 2.0 * std::f64::consts::PI)).norm() < 1e-12);
        let r1m = g_pm_residue(1, Sign::Minus);
        assert!((r1m - c(0.0, -2.0 * std::f64::consts::PI)).norm() < 1e-12);
    }

    #[test]
    fn g_pm_sum_is_g0() {
        // G⁺ + G⁻ = 2(2π)^{−s}Γ(s)cos(πs/2) pointwise
        for &(sr, si) in &[(0.7, 3.0), (1.3, -11.0), (0.25, 40.0)] {
            let s = c(sr, si);
            let sum = g_pm(s, Sign::Plus).unwrap() + g_pm(s, Sign::Minus).unwrap();
            let g0 = log_g0(s).unwrap().exp();
            assert!((sum - g0).norm() <= 1e-12 * g0.norm().max(1e-300));
        }
    }

    #[test]
    fn g_pm_contour_integral_matches_residue() {
        // ∮ G^+ around s = −ℓ on a small circle = 2πi · residue
        for ell in [0u32, 1, 2] {
            let center = c(-(ell as f64), 0.0);
            let radius = 0.3;
            let n = 512;
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..n {
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let z = center + radius * c(th.cos(), th.sin());
                let dz = radius * c(-th.sin(), th.cos()) * (2.0 * std::f64::consts::PI / n as f64);
                acc += g_pm(z, Sign::Plus).unwrap() * dz;
            }
            let expect =
                Complex64::new(0.0, 2.0 * std::f64::consts::PI) * g_pm_residue(ell, Sign::Plus);
            assert!(
                (acc - expect).norm() < 1e-8 * expect.norm().max(1.0),
                "ell = {ell}: {acc} vs {expect}"
            );
        }
    }

    #[test]
    fn g_pm_polynomial_envelope() {
        // |G^±(σ+iτ)| ≤ C_σ (1+|τ|)^{σ−1/2} on σ ∈ {0.25, 0.75}
        for &sigma in &[0.25, 0.75] {
            let mut cmax = 0.0f64;
            let mut tau = -200.0f64;
            while tau <= 200.0 {
                if tau.abs() > 0.3 {
                    let s = c(sigma, tau);
                    for sign in [Sign::Plus, Sign::Minus] {
                        let v = g_pm(s, sign).unwrap().norm();
                        let env = (1.0 + tau.abs()).powf(sigma - 0.5);
                        cmax = cmax.max(v / env);
                    }
                }
                tau += 0.7;
            }
            assert!(cmax.is_finite() && cmax < 10.0, "sigma {sigma}: C = {cmax}");
        }
    }

    #[test]
    fn script_g_composition_at_origin_mu() {
        // μ = 0, s = 1/2: ½G₀(½)³ ± (1/2i)G₁(½)³ with the explicit cos/sin forms
        let mu = [c(0.0, 0.0); 3];
        let s = c(0.5, 0.0);
        let pref = 2.0 * (2.0 * std::f64::consts::PI).powf(-0.5) * gamma(c(0.25, 0.0)).unwrap().re
            / 2.0f64.sqrt();
        // G₀(1/2) = 2(2π)^{−1/2}Γ(1/2)cos(π/4), G₁ with sin(π/4): equal here
        let g0 = 2.0
            * (2.0 * std::f64::consts::PI).powf(-0.5)
            * std::f64::consts::PI.sqrt()
            * (std::f64::consts::FRAC_PI_4).cos();
        let _ = pref;
        let g1 = g0; // cos(π/4) = sin(π/4)
        for sign in [Sign::Plus, Sign::Minus] {
            let expect = 0.5 * g0.powi(3)
                + sign.as_f64() * g1.powi(3) * -0.5 * 0.0
                + match sign {
                    // ±(1/2i)x = ∓(i/2)x, real x ⇒ imaginary contribution
                    Sign::Plus => Complex64::new(0.0, -0.5 * g1.powi(3)),
                    Sign::Minus => Complex64::new(0.0, 0.5 * g1.powi(3)),
                };
            let got = script_g(s, &mu, sign).unwrap();
            assert!(
                (got - expect).norm() < 1e-12 * expect.norm(),
                "{sign:?}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn script_g_polynomial_envelope() {
        let mu = [c(0.0, 20.0), c(0.0, 0.0), c(0.0, -20.0)];
        let sigma = 0.5;
        let mut cmax = 0.0f64;
        let mut tau = 1.0;
        while tau <= 100.0 {
            let s = c(sigma, tau);
            let v = script_g(s, &mu, Sign::Plus).unwrap().norm();
            let env = (1.0 + tau.abs()).powf(3.0 * sigma - 1.5);
            cmax = cmax.max(v / env);
            tau += 0.5;
        }
        assert!(cmax.is_finite() && cmax < 50.0, "C = {cmax}");
    }

    #[test]
    fn script_g_reports_poles() {
        let mu = [c(0.0, 20.0), c(0.0, 0.0), c(0.0, -20.0)];
        // s = -mu_1 = -20i is on the pole lattice (ℓ = 0)
        let err = script_g(c(0.0, -20.0), &mu, Sign::Plus);
        assert!(matches!(err, Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn zeta_basic_values() {
        let pi = std::f64::consts::PI;
        let z2 = zeta(c(2.0, 0.0)).unwrap();
        assert!((z2.re - pi * pi / 6.0).abs() < 1e-13);
        // ζ(1/2) against an independent alternating-series oracle:
        // ζ(s) = (1 − 2^{1−s})^{−1} Σ (−1)^{n−1} n^{−s} with the tail summed
        // through the binomial (Euler-transform) weights
        let zh = zeta(c(0.5, 0.0)).unwrap();
        let oracle = {
            // d_k = n Σ_{j≤k} (n+j−1)! 4^j / ((n−j)! (2j)!), then
            // η(s) ≈ −(1/d_n) Σ_{k<n} (−1)^k (d_k − d_n)/(k+1)^s
            let s = 0.5f64;
            let n = 30usize;
            let mut t = 1.0 / n as f64;
            let mut d = Vec::with_capacity(n + 1);
            let mut running = n as f64 * t;
            d.push(running);
            for j in 1..=n {
                t *= (n as f64 + j as f64 - 1.0) * 4.0 * (n as f64 - j as f64 + 1.0)
                    / ((2.0 * j as f64) * (2.0 * j as f64 - 1.0));
                running += n as f64 * t;
                d.push(running);
            }
            let dn = d[n];
            let mut eta = 0.0f64;
            for (k, dk) in d.iter().enumerate().take(n) {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                eta -= sign * (dk - dn) / (k as f64 + 1.0).powf(s) / dn;
            }
            eta / (1.0 - 2.0f64.powf(1.0 - s))
        };
        assert!(
            (zh.re - oracle).abs() < 1e-11,
            "{} vs oracle {oracle}",
            zh.re
        );
        assert!(
            (oracle + 1.460_354_508_809_586_8).abs() < 1e-12,
            "oracle {oracle}"
        );
        // ζ(0, 1/2) type check: ζ(2, 1/2) = π²/2
        let h = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        assert!((h.re - pi * pi / 2.0).abs() < 1e-12);
    }

    #[test]
    fn hurwitz_matches_direct_sum() {
        // Re s > 1: compare against brute-force summation
        let s = c(2.5, 3.0);
        let a = 0.375;
        let mut brute = Complex64::new(0.0, 0.0);
        for n in 0..400_000 {
            brute += (-s * (n as f64 + a).ln()).exp();
        }
        // tail estimate: ∫ (x+a)^{-s} from N
        let n = 400_000.0;
        brute += ((1.0 - s) * (n + a).ln()).exp() / (s - 1.0);
        let em = hurwitz_zeta(s, a).unwrap();
        assert!((em - brute).norm() < 1e-10 * em.norm(), "{em} vs {brute}");
    }

    #[test]
    fn zeta_functional_equation_grid() {
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let pi = std::f64::consts::PI;
        for &(sr, si) in &[
            (0.5, 14.13),
            (0.3, 25.0),
            (-1.5, 8.0),
            (2.2, -40.0),
            (0.5, 150.0),
        ] {
            let s = c(sr, si);
            let lhs = zeta(s).unwrap();
            let rhs = (s * std::f64::consts::LN_2).exp()
                * ((s - 1.0) * pi.ln()).exp()
                * (pi * s / 2.0).sin()
                * gamma(1.0 - s).unwrap()
                * zeta(1.0 - s).unwrap();
            assert!(
                (lhs - rhs).norm() <= 1e-9 * lhs.norm().max(1e-10),
                "fe failed at {s}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn zeta_pole_rejected() {
        assert!(matches!(
            zeta(c(1.0, 0.0)),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn afe_gamma_symmetry_and_ratio() {
        let t_g = 50.0;
        let t = 80.0;
        // G(s,t,ε) = G(s,−t,ε)
        let a = log_afe_gamma(c(0.7, 0.3), t, 1, t_g).unwrap();
        let b = log_afe_gamma(c(0.7, 0.3), -t, 1, t_g).unwrap();
        assert!((a - b).norm() < 1e-10);
        // trivial self-ratio
        let g = log_afe_gamma(c(0.5, 0.0), t, -1, t_g).unwrap();
        assert!(((g - g).exp() - 1.0).norm() < 1e-15);
    }
}
