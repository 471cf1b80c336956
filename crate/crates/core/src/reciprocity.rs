//! The two dual-moment transforms: the first-moment transform ℋ(t) built from
//! a test-function triple, and the mixed-moment transform family
//! (h̃⁺, h̃⁻, h̃ʰᵒˡ); together with the weight H(t) of the fourth-moment
//! spectral expansion, the main terms of both identities, and envelope
//! verification across parameter sweeps.
//!
//! Both transforms are vertical-line integrals of gamma-factor products. The
//! evaluators precompute everything t-independent (the transform of the
//! geometric-side profile and the paired gamma products at (1−s)/2) on a
//! shared panel grid, so sweeps over the dual spectral variable reuse the
//! expensive part.

use crate::besselkern::KernelOrder;
use crate::complexfn::{log_g_pm, log_gamma_unchecked, log_script_g, script_g_pole_distance, Sign};
use crate::error::{Error, Result};
use crate::mellin::log_mellin_kernel;
use crate::quad::KahanSumC;
use crate::transforms::{spectral_measure_integral, TestFunctionTriple, TripleKind};
use num_complex::Complex64;
use serde::Serialize;

/// Vertical-line contour description; the bent-contour fields are validated
/// for the detoured variant even though the evaluators here only use the
/// straight line.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ContourSpec {
    pub sigma: f64,
    pub height: f64,
    pub x0: f64,
    pub delta: f64,
    pub step: f64,
}

impl ContourSpec {
    pub fn line(sigma: f64) -> Self {
        ContourSpec {
            sigma,
            height: 1.0,
            x0: -1.0,
            delta: 0.25,
            step: 0.1,
        }
    }

    pub fn validate(&self, bent: bool) -> Result<()> {
        if !(self.height > 0.0) || !(self.step > 0.0) {
            return Err(Error::invalid("contour needs height > 0 and step > 0"));
        }
        if bent && !(self.x0 < -0.5 && self.delta > 0.0) {
            return Err(Error::invalid("bent contour needs x0 < -1/2 and delta > 0"));
        }
        Ok(())
    }
}

/// Parameters shared by the dual-moment transforms.
#[derive(Debug, Clone, Copy)]
pub struct ReciprocityParams {
    pub t_g: f64,
    pub triple: TestFunctionTriple,
    pub contour: ContourSpec,
}

impl ReciprocityParams {
    pub fn mu(&self) -> [Complex64; 3] {
        crate::arith::Gl3Coefficients::self_dual_mu(self.t_g)
    }
}

/// Grid quality for the contour evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridQuality {
    /// Fitted-constant and suppression sweeps.
    Envelope,
    /// Contour-independence and oracle comparisons.
    Identity,
}

impl GridQuality {
    fn panel_span(self) -> f64 {
        match self {
            GridQuality::Envelope => 2.4,
            GridQuality::Identity => 1.0,
        }
    }

    fn tail_target(self) -> f64 {
        match self {
            GridQuality::Envelope => 1e-6,
            GridQuality::Identity => 1e-9,
        }
    }

    fn hhat_tol(self) -> f64 {
        match self {
            GridQuality::Envelope => 1e-7,
            GridQuality::Identity => 1e-10,
        }
    }
}

// ---------------------------------------------------------------------------
// the spectral-expansion weight
// ---------------------------------------------------------------------------

/// Exponential range indicator: 0 inside |t| ≤ 2t_g, |t| − 2t_g beyond.
pub fn omega(t: f64, t_g: f64) -> f64 {
    (t.abs() - 2.0 * t_g).max(0.0)
}

/// The gamma-factor weight of the fourth-moment spectral expansion, evaluated
/// through real parts of log-gammas (finite for all real t).
pub fn big_h(t: f64, t_g: f64) -> f64 {
    let lg = |re: f64, im: f64| log_gamma_unchecked(Complex64::new(re, im)).re;
    let ln = (std::f64::consts::PI * std::f64::consts::PI / 24.0).ln()
        + 4.0 * lg(0.25, t / 2.0)
        + 2.0 * lg(0.25, t / 2.0 + t_g)
        + 2.0 * lg(0.25, t / 2.0 - t_g)
        - 2.0 * lg(0.5, t)
        - 4.0 * lg(0.5, t_g);
    ln.exp()
}

/// Main term of the Stirling asymptotic for `big_h`.
pub fn big_h_main(t: f64, t_g: f64) -> f64 {
    let ta = t.abs();
    std::f64::consts::PI.powi(3)
        / 3.0
        / ((1.0 + ta) * (1.0 + (2.0 * t_g + ta)).sqrt() * (1.0 + (2.0 * t_g - ta).abs()).sqrt())
        * (-std::f64::consts::PI * omega(t, t_g)).exp()
}

/// Error budget of the asymptotic: the sum of the three inverse distances.
pub fn big_h_error_scale(t: f64, t_g: f64) -> f64 {
    let ta = t.abs();
    1.0 / (1.0 + ta) + 1.0 / (1.0 + (2.0 * t_g + ta)) + 1.0 / (1.0 + (2.0 * t_g - ta).abs())
}

// ---------------------------------------------------------------------------
// contour grids
// ---------------------------------------------------------------------------

struct Node {
    s: Complex64,
    weight: f64,
    hhat: Complex64,
    /// log 𝒢^{+} and log 𝒢^{−} at (1−s)/2 (t-independent).
    lg_sg: [Complex64; 2],
    /// log G^{+} and log G^{−} at (1−s)/2 (used by the mixed-moment family).
    lg_g: [Complex64; 2],
}

fn sign_index(sign: Sign) -> usize {
    match sign {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

/// Shared evaluator for the dual-moment transforms over one triple, one
/// contour line, and one spectral parameter of the fixed form.
pub struct DualMomentEvaluator {
    pub sigma: f64,
    pub t_g: f64,
    /// Sign of the active geometric-side transform (minus for the bump
    /// triples, plus for the reconstructed pair).
    pub h_sign: Sign,
    nodes: Vec<Node>,
    pub tail_estimate: f64,
}

fn hhat_of_triple(triple: &TestFunctionTriple, s: Complex64, tol: f64) -> Result<Complex64> {
    match triple.kind {
        TripleKind::Triple2 => triple.h_plus_profile_mellin(s),
        _ => {
            let (r_lo, r_hi) = triple.minus_bump_range();
            let mut f = |r: f64| -> Complex64 {
                let h = triple.h_minus(r);
                if h == 0.0 {
                    return Complex64::new(0.0, 0.0);
                }
                let j = log_mellin_kernel(KernelOrder::Minus { r }, s)
                    .map(|lg| lg.exp())
                    .unwrap_or(Complex64::new(0.0, 0.0));
                j * h * r * (std::f64::consts::PI * r).tanh() / std::f64::consts::PI.powi(2)
            };
            let q = crate::quad::adaptive_c(&mut f, r_lo, r_hi, tol, 1e-8, 6_000);
            Ok(q.value)
        }
    }
}

impl DualMomentEvaluator {
    /// Build the grid. `tau_floor_hint` forces a minimum truncation height on
    /// top of the mass-exhaustion rule.
    pub fn new(
        params: &ReciprocityParams,
        tau_floor_hint: f64,
        quality: GridQuality,
    ) -> Result<Self> {
        params.contour.validate(false)?;
        let mut sigma = params.contour.sigma;
        if !(sigma > 1e-6 && sigma < 1.0 - 1e-6) {
            return Err(Error::pole(
                "contour line must stay inside 0 < sigma < 1",
                sigma.min(1.0 - sigma).abs(),
            ));
        }
        let t_g = params.t_g;
        let mu = params.mu();
        // nudge the line when it grazes a gamma-product pole
        for shift in [0.0, 0.05, -0.05] {
            let cand = sigma + shift;
            if cand > 1e-3
                && cand < 1.0 - 1e-3
                && script_g_pole_distance(Complex64::new((1.0 - cand) / 2.0, 0.0), &mu) >= 1e-6
            {
                sigma = cand;
                break;
            }
        }
        let d = script_g_pole_distance(Complex64::new((1.0 - sigma) / 2.0, 0.0), &mu);
        if d < 1e-6 {
            return Err(Error::pole("contour line grazes a gamma-product pole", d));
        }
        let h_sign = match params.triple.kind {
            TripleKind::Triple2 => Sign::Plus,
            _ => Sign::Minus,
        };
        let r_anchor = params
            .triple
            .minus_support()
            .max(params.triple.plus_support());
        let rate = |tau: f64| -> f64 {
            3.0 + 1.2 * (1.0 + tau.abs() / 2.0 + 2.0 * t_g).ln()
                + 0.5 * (1.0 + tau.abs() / 2.0 + r_anchor).ln()
                + 0.5 * (1.0 + tau.abs() / 2.0 + tau_floor_hint.abs()).ln()
        };
        let span = quality.panel_span();
        let hhat0 = hhat_of_triple(&params.triple, Complex64::new(sigma, 0.0), 1e-14)?;
        let hhat_tol = quality.hhat_tol() * hhat0.norm().max(1e-280);
        let gl_x = [
            -0.949_107_912_342_758_5,
            -0.741_531_185_599_394_4,
            -0.405_845_151_377_397_2,
            0.0,
            0.405_845_151_377_397_2,
            0.741_531_185_599_394_4,
            0.949_107_912_342_758_5,
        ];
        let gl_w = [
            0.129_484_966_168_869_7,
            0.279_705_391_489_276_7,
            0.381_830_050_505_118_9,
            0.417_959_183_673_469_4,
            0.381_830_050_505_118_9,
            0.279_705_391_489_276_7,
            0.129_484_966_168_869_7,
        ];
        let mut nodes: Vec<Node> = Vec::new();
        let mut mass = 0.0f64;
        let add_panel = |a: f64, b: f64, nodes: &mut Vec<Node>, mass: &mut f64| -> Result<f64> {
            let c = 0.5 * (a + b);
            let h = 0.5 * (b - a);
            let mut panel_mass = 0.0;
            for (x, w) in gl_x.iter().zip(gl_w.iter()) {
                let tau = c + h * x;
                let s = Complex64::new(sigma, tau);
                let hhat = hhat_of_triple(&params.triple, s, hhat_tol)?;
                let arg = (1.0 - s) / 2.0;
                let lg_sg = [
                    log_script_g(arg, &mu, Sign::Plus)?,
                    log_script_g(arg, &mu, Sign::Minus)?,
                ];
                let lg_g = [log_g_pm(arg, Sign::Plus)?, log_g_pm(arg, Sign::Minus)?];
                let weight = w * h;
                panel_mass += weight * hhat.norm();
                nodes.push(Node {
                    s,
                    weight,
                    hhat,
                    lg_sg,
                    lg_g,
                });
            }
            *mass += panel_mass;
            Ok(panel_mass)
        };
        // the t-dependent gamma factor is uniformly bounded on the line, so
        // the grid only needs to exhaust the profile-transform mass
        let tau_floor = tau_floor_hint.max(60.0);
        let mut tau = 0.0f64;
        let mut recent = f64::INFINITY;
        let mut tail_estimate = 0.0f64;
        while tau < 2.0e5 {
            let w = (span / rate(tau)).max(1e-3);
            let m1 = add_panel(tau, tau + w, &mut nodes, &mut mass)?;
            let m2 = add_panel(-tau - w, -tau, &mut nodes, &mut mass)?;
            recent = (m1 + m2) / mass.max(1e-300);
            tau += w;
            if tau >= tau_floor && recent < quality.tail_target() {
                tail_estimate = (m1 + m2) * 3.0;
                break;
            }
        }
        if recent >= quality.tail_target() {
            return Err(Error::Nonconvergence {
                what: "dual-moment contour truncation".into(),
                estimate: recent,
                tolerance: quality.tail_target(),
            });
        }
        Ok(DualMomentEvaluator {
            sigma,
            t_g,
            h_sign,
            nodes,
            tail_estimate,
        })
    }

    /// First-moment transform ℋ(t):
    /// (1/2π) ∫ Σ_{±₂} Ĥ^{±₁}(s) 𝒢^{±₂}((1−s)/2) G^{∓₁±₂}(s/2 + it) dτ.
    pub fn hcal(&self, t: f64) -> Result<Complex64> {
        let mut acc = KahanSumC::new();
        for node in &self.nodes {
            if node.hhat.norm() == 0.0 {
                continue;
            }
            let g_arg = node.s / 2.0 + Complex64::new(0.0, t);
            let mut term = Complex64::new(0.0, 0.0);
            for pm2 in [Sign::Plus, Sign::Minus] {
                let g_sign = self.h_sign.flip().compose(pm2);
                let lg = log_g_pm(g_arg, g_sign)?;
                term += (node.lg_sg[sign_index(pm2)] + lg).exp();
            }
            acc.add(node.hhat * term * node.weight);
        }
        Ok(acc.value() / (2.0 * std::f64::consts::PI))
    }

    /// Mixed-moment transform h̃^±(t):
    /// (1/2π) ∫ Σ_{±₂} Ĥ^{±₁}(s) Ĵ_t^±(s) G^{±₂}((1−s)/2) 𝒢^{±·±₁·±₂}((1−s)/2) dτ.
    pub fn tilde_pm(&self, kernel_sign: Sign, t: f64) -> Result<Complex64> {
        let mut acc = KahanSumC::new();
        for node in &self.nodes {
            if node.hhat.norm() == 0.0 {
                continue;
            }
            let order = match kernel_sign {
                Sign::Plus => KernelOrder::Plus { r: t },
                Sign::Minus => KernelOrder::Minus { r: t },
            };
            let jhat = log_mellin_kernel(order, node.s)?.exp();
            let mut term = Complex64::new(0.0, 0.0);
            for pm2 in [Sign::Plus, Sign::Minus] {
                let sg_sign = kernel_sign.compose(self.h_sign).compose(pm2);
                term += (node.lg_g[sign_index(pm2)] + node.lg_sg[sign_index(sg_sign)]).exp();
            }
            acc.add(node.hhat * jhat * term * node.weight);
        }
        Ok(acc.value() / (2.0 * std::f64::consts::PI))
    }

    /// Holomorphic companion h̃ʰᵒˡ(k).
    pub fn tilde_hol(&self, k: u32) -> Result<Complex64> {
        let mut acc = KahanSumC::new();
        for node in &self.nodes {
            if node.hhat.norm() == 0.0 {
                continue;
            }
            let jhat = log_mellin_kernel(KernelOrder::Hol { k }, node.s)?.exp();
            let mut term = Complex64::new(0.0, 0.0);
            for pm2 in [Sign::Plus, Sign::Minus] {
                let sg_sign = self.h_sign.compose(pm2);
                term += (node.lg_g[sign_index(pm2)] + node.lg_sg[sign_index(sg_sign)]).exp();
            }
            acc.add(node.hhat * jhat * term * node.weight);
        }
        Ok(acc.value() / (2.0 * std::f64::consts::PI))
    }

    /// Replace the geometric-profile transform values on the grid (used by
    /// the independent-discretisation oracle).
    pub fn override_hhat(&mut self, f: &dyn Fn(Complex64) -> Complex64) {
        for node in &mut self.nodes {
            node.hhat = f(node.s);
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

// ---------------------------------------------------------------------------
// main terms
// ---------------------------------------------------------------------------

/// Which identity's main term to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualMomentKind {
    /// First-moment identity: L(1,F)·(Σ_± 𝒩h^± + Σ_{k≡0(4)} (k−1)/π² hʰᵒˡ(k)).
    FirstMoment,
    /// Mixed-moment identity: the same bracket scaled by L(1,F)²/ζ(2).
    MixedMoment,
}

pub fn main_terms(
    kind: DualMomentKind,
    triple: &TestFunctionTriple,
    l1f: f64,
    zeta2: f64,
) -> Result<f64> {
    if !(l1f > 0.0) {
        return Err(Error::invalid("the residue value L(1,F) must be positive"));
    }
    let minus = spectral_measure_integral(&|r| triple.h_minus(r), triple.minus_support().max(8.0));
    let plus = spectral_measure_integral(&|r| triple.h_plus(r), triple.plus_support().max(8.0));
    let mut hol4 = crate::quad::KahanSum::new();
    let kmax = triple.hol_support();
    let mut k = 4u32;
    while k <= kmax.max(4) {
        hol4.add((k as f64 - 1.0) / std::f64::consts::PI.powi(2) * triple.h_hol(k));
        k += 4;
    }
    let bracket = minus.value + plus.value + hol4.value();
    Ok(match kind {
        DualMomentKind::FirstMoment => l1f * bracket,
        DualMomentKind::MixedMoment => l1f * l1f / zeta2 * bracket,
    })
}

// ---------------------------------------------------------------------------
// Stirling expansion diagnostic
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StirlingReport {
    pub deviation: f64,
    pub leading_scale: f64,
    pub ratio: f64,
}

/// Measures |Ĵ⁻_{2t_g}(s) · 2(π/t_g)^{s−1} − 1| against the size |s|³/t_g² of
/// the leading correction.
pub fn stirling_expansion_check(s: Complex64, t_g: f64) -> Result<StirlingReport> {
    let lhs = log_mellin_kernel(KernelOrder::Minus { r: 2.0 * t_g }, s)?
        + std::f64::consts::LN_2
        + (s - 1.0) * (std::f64::consts::PI / t_g).ln();
    let deviation = (lhs.exp() - 1.0).norm();
    let leading_scale = s.norm().powi(3) / (t_g * t_g);
    Ok(StirlingReport {
        deviation,
        leading_scale,
        ratio: deviation / leading_scale,
    })
}

// ---------------------------------------------------------------------------
// envelope sweeps
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct EnvelopeReport {
    pub grid: Vec<f64>,
    pub measured: Vec<f64>,
    pub envelope: Vec<f64>,
    pub fitted_constant: f64,
    pub max_ratio: f64,
    /// Peak of the measured values over the plateau grid.
    pub peak: f64,
    /// Measured value at the suppression abscissa, when the sweep has one.
    pub suppressed_value: Option<f64>,
    pub suppressed_abscissa: Option<f64>,
}

fn fit_report(
    grid: Vec<f64>,
    measured: Vec<f64>,
    envelope: Vec<f64>,
    suppressed: Option<(f64, f64)>,
) -> EnvelopeReport {
    let mut max_ratio: f64 = 0.0;
    let mut peak: f64 = 0.0;
    for (m, e) in measured.iter().zip(envelope.iter()) {
        max_ratio = max_ratio.max(m / e);
        peak = peak.max(*m);
    }
    EnvelopeReport {
        grid,
        measured,
        envelope,
        fitted_constant: max_ratio,
        max_ratio,
        peak,
        suppressed_value: suppressed.map(|x| x.1),
        suppressed_abscissa: suppressed.map(|x| x.0),
    }
}

/// First-moment envelope sweep: |ℋ(t)| against T²/t_g on |t| ≤ t_g²/T², plus
/// the suppressed value at 4·t_g²/T².
pub fn hcal_envelope_report(
    t_g: f64,
    theta: f64,
    m: u32,
    quality: GridQuality,
) -> Result<EnvelopeReport> {
    let t_param = t_g.powf(theta);
    let triple = crate::transforms::make_triple(TripleKind::Triple1, m, t_param, None)?;
    let t_edge = (t_g / t_param).powi(2);
    let params = ReciprocityParams {
        t_g,
        triple,
        contour: ContourSpec::line(0.5),
    };
    let eval = DualMomentEvaluator::new(&params, 0.0, quality)?;
    let env = t_param * t_param / t_g;
    let n = 9;
    let mut grid = Vec::new();
    let mut measured = Vec::new();
    let mut envelope = Vec::new();
    for i in 0..=n {
        let t = t_edge * i as f64 / n as f64;
        let v = eval.hcal(t)?.norm();
        grid.push(t);
        measured.push(v);
        envelope.push(env);
    }
    let t_sup = 4.0 * t_edge;
    let v_sup = eval.hcal(t_sup)?.norm();
    Ok(fit_report(grid, measured, envelope, Some((t_sup, v_sup))))
}

/// Mixed-moment dyadic sweep: |h̃⁻(t)| against T² log t_g / t_g on
/// |t| ≤ t_g/T, with the suppressed value at 4·t_g/T.
pub fn tilde_envelope_dyadic(
    t_g: f64,
    theta: f64,
    m: u32,
    quality: GridQuality,
) -> Result<EnvelopeReport> {
    let t_param = t_g.powf(theta);
    let triple = crate::transforms::make_triple(TripleKind::Triple1, m, t_param, None)?;
    let t_edge = t_g / t_param;
    let params = ReciprocityParams {
        t_g,
        triple,
        contour: ContourSpec::line(0.5),
    };
    let eval = DualMomentEvaluator::new(&params, 0.0, quality)?;
    let env = t_param * t_param * t_g.ln() / t_g;
    let n = 8;
    let mut grid = Vec::new();
    let mut measured = Vec::new();
    let mut envelope = Vec::new();
    for i in 0..=n {
        let t = t_edge * i as f64 / n as f64;
        let v = eval.tilde_pm(Sign::Minus, t)?.norm();
        grid.push(t);
        measured.push(v);
        envelope.push(env);
    }
    let t_sup = 4.0 * t_edge;
    let v_sup = eval.tilde_pm(Sign::Minus, t_sup)?.norm();
    Ok(fit_report(grid, measured, envelope, Some((t_sup, v_sup))))
}

/// Transition-regime sweep: |h̃⁺(t)| against U on |t| ≤ (T/U)^{1/2}, with the
/// collapse measured at 3·(T/U)^{1/2}.
pub fn tilde_envelope_transition(
    t_g: f64,
    delta_exp: f64,
    m: u32,
    quality: GridQuality,
) -> Result<EnvelopeReport> {
    let t_param = 2.0 * t_g - t_g.powf(delta_exp);
    let u = t_g - t_param / 2.0 + 1.0;
    let triple = crate::transforms::make_triple(TripleKind::Triple4, m, t_param, Some(u))?;
    let t_edge = (t_param / u).sqrt();
    let params = ReciprocityParams {
        t_g,
        triple,
        contour: ContourSpec::line(0.5),
    };
    let eval = DualMomentEvaluator::new(&params, 0.0, quality)?;
    let env = u;
    let n = 8;
    let mut grid = Vec::new();
    let mut measured = Vec::new();
    let mut envelope = Vec::new();
    for i in 0..=n {
        let t = t_edge * i as f64 / n as f64;
        let v = eval.tilde_pm(Sign::Plus, t)?.norm();
        grid.push(t);
        measured.push(v);
        envelope.push(env);
    }
    let t_sup = 3.0 * t_edge;
    let v_sup = eval.tilde_pm(Sign::Plus, t_sup)?.norm();
    Ok(fit_report(grid, measured, envelope, Some((t_sup, v_sup))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::make_triple;

    #[test]
    fn big_h_even_and_positive() {
        let t_g = 120.0;
        for &t in &[0.0, 3.7, 55.0, 2.0 * t_g - 1.0, 2.0 * t_g + 6.0] {
            let a = big_h(t, t_g);
            let b = big_h(-t, t_g);
            assert!(a > 0.0);
            assert!((a - b).abs() <= 1e-12 * a);
        }
    }

    #[test]
    fn big_h_asymptotic_inside_range() {
        let t_g = 200.0;
        for i in 0..50 {
            let t = 3.0 * t_g * i as f64 / 49.0;
            let h = big_h(t, t_g);
            let main = big_h_main(t, t_g);
            let rel = (h / main - 1.0).abs();
            let budget = 5.0 * big_h_error_scale(t, t_g);
            assert!(rel <= budget, "t = {t}: rel {rel} vs budget {budget}");
        }
    }

    #[test]
    fn big_h_exponential_suppression_beyond_range() {
        let t_g = 100.0;
        let t = 2.0 * t_g + 10.0;
        let h = big_h(t, t_g);
        let poly = std::f64::consts::PI.powi(3)
            / 3.0
            / ((1.0 + t) * (1.0 + 2.0 * t_g + t).sqrt() * (1.0 + (2.0 * t_g - t).abs()).sqrt());
        let measured_suppression = h / poly;
        let expected = (-std::f64::consts::PI * 10.0).exp();
        let ratio = measured_suppression / expected;
        assert!(
            (0.33..3.0).contains(&ratio),
            "suppression prefactor {ratio}"
        );
    }

    #[test]
    fn stirling_expansion_scaling() {
        let s = Complex64::new(0.5, 0.0);
        let a = stirling_expansion_check(s, 1_000.0).unwrap();
        assert!(a.ratio <= 10.0, "ratio {}", a.ratio);
        let b = stirling_expansion_check(s, 2_000.0).unwrap();
        let shrink = a.deviation / b.deviation;
        assert!(
            (2.0..8.0).contains(&shrink),
            "expected ≈4× shrink, got {shrink}"
        );
    }

    #[test]
    fn main_terms_structure() {
        let triple = make_triple(TripleKind::Triple1, 4, 30.0, None).unwrap();
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let a = main_terms(DualMomentKind::FirstMoment, &triple, 1.0, zeta2).unwrap();
        let b = main_terms(DualMomentKind::MixedMoment, &triple, 1.0, zeta2).unwrap();
        assert!((b - a / zeta2).abs() < 1e-12 * a.abs());
        // triple1 has no holomorphic part, so the bracket is the minus integral
        let minus = spectral_measure_integral(&|r| triple.h_minus(r), triple.minus_support());
        assert!((a - minus.value).abs() < 1e-9 * a.abs());
        // scale ≍ T² under doubling
        let c = a / (30.0 * 30.0);
        let triple2 = make_triple(TripleKind::Triple1, 4, 60.0, None).unwrap();
        let a2 = main_terms(DualMomentKind::FirstMoment, &triple2, 1.0, zeta2).unwrap();
        let c2 = a2 / (60.0 * 60.0);
        assert!(c2 / c < 3.0 && c / c2 < 3.0, "{c} vs {c2}");
        assert!(main_terms(DualMomentKind::FirstMoment, &triple, 0.0, zeta2).is_err());
    }

    #[test]
    fn contour_spec_validation() {
        assert!(ContourSpec::line(0.5).validate(false).is_ok());
        let bad = ContourSpec {
            sigma: 0.5,
            height: -1.0,
            x0: -1.0,
            delta: 0.1,
            step: 0.1,
        };
        assert!(bad.validate(false).is_err());
        let bent_bad = ContourSpec {
            sigma: 0.5,
            height: 1.0,
            x0: -0.3,
            delta: 0.1,
            step: 0.1,
        };
        assert!(bent_bad.validate(true).is_err());
    }

    #[test]
    fn hcal_sigma_shift_invariance() {
        let t_g = 30.0;
        let triple = make_triple(TripleKind::Triple1, 4, 8.0, None).unwrap();
        let mk = |sigma: f64| ReciprocityParams {
            t_g,
            triple,
            contour: ContourSpec::line(sigma),
        };
        let e1 = DualMomentEvaluator::new(&mk(0.42), 6.0, GridQuality::Identity).unwrap();
        let e2 = DualMomentEvaluator::new(&mk(0.62), 6.0, GridQuality::Identity).unwrap();
        for &t in &[0.0, 1.5, 5.0] {
            let a = e1.hcal(t).unwrap();
            let b = e2.hcal(t).unwrap();
            assert!(
                (a - b).norm() <= 1e-6 * a.norm().max(1e-12),
                "t = {t}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn hcal_conjugate_symmetry() {
        let t_g = 30.0;
        let triple = make_triple(TripleKind::Triple1, 4, 8.0, None).unwrap();
        let params = ReciprocityParams {
            t_g,
            triple,
            contour: ContourSpec::line(0.5),
        };
        let eval = DualMomentEvaluator::new(&params, 6.0, GridQuality::Identity).unwrap();
        for &t in &[0.7, 2.2] {
            let a = eval.hcal(t).unwrap();
            let b = eval.hcal(-t).unwrap();
            assert!(
                (a - b.conj()).norm() <= 1e-8 * a.norm(),
                "t = {t}: {a} vs conj {b}"
            );
        }
    }

    #[test]
    fn tilde_sigma_shift_invariance() {
        let t_g = 30.0;
        let triple = make_triple(TripleKind::Triple1, 4, 8.0, None).unwrap();
        let mk = |sigma: f64| ReciprocityParams {
            t_g,
            triple,
            contour: ContourSpec::line(sigma),
        };
        let e1 = DualMomentEvaluator::new(&mk(0.45), 5.0, GridQuality::Identity).unwrap();
        let e2 = DualMomentEvaluator::new(&mk(0.58), 5.0, GridQuality::Identity).unwrap();
        for &t in &[0.0, 2.0] {
            let a = e1.tilde_pm(Sign::Minus, t).unwrap();
            let b = e2.tilde_pm(Sign::Minus, t).unwrap();
            assert!(
                (a - b).norm() <= 1e-6 * a.norm().max(1e-12),
                "t = {t}: {a} vs {b}"
            );
        }
        let ah = e1.tilde_hol(4).unwrap();
        let bh = e2.tilde_hol(4).unwrap();
        assert!((ah - bh).norm() <= 1e-6 * ah.norm().max(1e-12));
    }

    #[test]
    fn evaluator_rejects_bad_contours() {
        let triple = make_triple(TripleKind::Triple1, 4, 8.0, None).unwrap();
        let params = ReciprocityParams {
            t_g: 30.0,
            triple,
            contour: ContourSpec::line(1.2),
        };
        assert!(DualMomentEvaluator::new(&params, 5.0, GridQuality::Identity).is_err());
    }
}
