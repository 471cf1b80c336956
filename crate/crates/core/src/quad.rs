//! Shared quadrature machinery: compensated summation, Gauss–Kronrod panels,
//! adaptive subdivision, tanh-sinh for endpoint singularities, and a
//! phase-marching scheme with series acceleration for conditionally convergent
//! oscillatory tails.

use num_complex::Complex64;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Complex compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSumC {
    re: KahanSum,
    im: KahanSum,
}

impl KahanSumC {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

const XGK15: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];

const WG7: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

/// 15-point Gauss–Kronrod rule on `[a, b]`. Returns `(integral, error_estimate)`.
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK15[7] * fc;
    let mut gauss = WG7[3] * fc;
    let mut resabs = WGK15[7] * fc.abs();
    let mut fv = [0.0f64; 15];
    fv[7] = fc;
    for j in 0..7 {
        let x = h * XGK15[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv[j] = f1;
        fv[14 - j] = f2;
        kronrod += WGK15[j] * (f1 + f2);
        resabs += WGK15[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG7[j / 2] * (f1 + f2);
        }
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK15[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK15[j] * ((fv[j] - mean).abs() + (fv[14 - j] - mean).abs());
    }
    resasc *= h.abs();
    resabs *= h.abs();
    let value = kronrod * h;
    let mut err = ((kronrod - gauss) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let round = 50.0 * f64::EPSILON * resabs;
    if err < round {
        err = round;
    }
    (value, err)
}

/// Complex-valued 15-point Gauss–Kronrod rule.
pub fn gk15_c<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK15[7];
    let mut gauss = fc * WG7[3];
    for j in 0..7 {
        let x = h * XGK15[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        kronrod += (f1 + f2) * WGK15[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG7[j / 2];
        }
    }
    ((kronrod * h), ((kronrod - gauss) * h).norm())
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResultC {
    pub value: Complex64,
    pub error: f64,
}

/// Globally adaptive Gauss–Kronrod integration on a finite interval.
pub fn adaptive<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol_abs: f64,
    tol_rel: f64,
    max_panels: usize,
) -> QuadResult {
    let (v, e) = gk15(f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut total_err: f64 = e;
    let mut total_val: f64 = v;
    while panels.len() < max_panels {
        let tol = tol_abs.max(tol_rel * total_val.abs());
        if total_err <= tol {
            break;
        }
        // split the worst panel
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (pa, pb, pv, pe) = panels.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            // interval exhausted at f64 resolution
            panels.push((pa, pb, pv, pe));
            break;
        }
        let (v1, e1) = gk15(f, pa, mid);
        let (v2, e2) = gk15(f, mid, pb);
        total_val += v1 + v2 - pv;
        total_err += e1 + e2 - pe;
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
    let mut sum = KahanSum::new();
    let mut err = KahanSum::new();
    for &(_, _, v, e) in &panels {
        sum.add(v);
        err.add(e);
    }
    QuadResult {
        value: sum.value(),
        error: err.value(),
    }
}

/// Complex adaptive Gauss–Kronrod.
pub fn adaptive_c<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol_abs: f64,
    tol_rel: f64,
    max_panels: usize,
) -> QuadResultC {
    let (v, e) = gk15_c(f, a, b);
    let mut panels = vec![(a, b, v, e)];
    let mut total_err: f64 = e;
    let mut total_val: Complex64 = v;
    while panels.len() < max_panels {
        let tol = tol_abs.max(tol_rel * total_val.norm());
        if total_err <= tol {
            break;
        }
        let (idx, _) = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (pa, pb, pv, pe) = panels.swap_remove(idx);
        let mid = 0.5 * (pa + pb);
        if mid <= pa || mid >= pb {
            panels.push((pa, pb, pv, pe));
            break;
        }
        let (v1, e1) = gk15_c(f, pa, mid);
        let (v2, e2) = gk15_c(f, mid, pb);
        total_val += v1 + v2 - pv;
        total_err += e1 + e2 - pe;
        panels.push((pa, mid, v1, e1));
        panels.push((mid, pb, v2, e2));
    }
    let mut sum = KahanSumC::new();
    let mut err = KahanSum::new();
    for &(_, _, v, e) in &panels {
        sum.add(v);
        err.add(e);
    }
    QuadResultC {
        value: sum.value(),
        error: err.value(),
    }
}

/// tanh-sinh (double-exponential) quadrature on `(a, b)`.
///
/// Tolerates integrable endpoint singularities; the integrand is never
/// evaluated at the endpoints themselves.
pub fn tanh_sinh<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, tol: f64) -> QuadResult {
    let c = 0.5 * (a + b);
    let h0 = 0.5 * (b - a);
    let half_pi = std::f64::consts::FRAC_PI_2;
    // abscissa x = tanh(u) and weight (π/2)cosh(t)·sech²(u), u = (π/2)sinh(t),
    // with the sech² factored through exponentials so deep nodes underflow to
    // zero instead of producing inf/inf
    // returns (1 - |x|, w): the distance of the abscissa to the endpoint is
    // computed through exponentials so nodes deep in the endpoint layers stay
    // accurate (1 - tanh u underflows badly in direct form)
    let node = |t: f64| -> (f64, f64) {
        let u = half_pi * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        let one_minus_x = 2.0 * e / (1.0 + e);
        let es = (-u.abs()).exp();
        let sech = 2.0 * es / (1.0 + es * es);
        let w = half_pi * t.cosh() * sech * sech;
        (one_minus_x, w)
    };
    let mut value;
    let mut prev;
    // level 0
    let mut h = 1.0;
    {
        let mut s = KahanSum::new();
        let mut k = 0;
        loop {
            let t = k as f64 * h;
            let (omx, w) = node(t);
            if k > 0 && (w < 1e-300 || omx <= 0.0) {
                break;
            }
            let term = if k == 0 {
                w * f(c)
            } else {
                w * (f(a + h0 * omx) + f(b - h0 * omx))
            };
            s.add(term);
            if k > 2 && term.abs() <= 1e-18 * s.value().abs().max(1e-300) {
                break;
            }
            if k as f64 * h > 6.5 {
                break;
            }
            k += 1;
        }
        value = s.value() * h * h0;
    }
    prev = value;
    // refine by halving h, adding midpoints
    for _level in 1..=10 {
        h *= 0.5;
        let mut s = KahanSum::new();
        let mut k = 1;
        loop {
            let t = k as f64 * h;
            let (omx, w) = node(t);
            if w < 1e-300 || omx <= 0.0 {
                break;
            }
            let term = w * (f(a + h0 * omx) + f(b - h0 * omx));
            s.add(term);
            if k > 4 && term.abs() <= 1e-18 * (s.value().abs() + value.abs()).max(1e-300) {
                break;
            }
            if k as f64 * h > 6.5 {
                break;
            }
            k += 2;
        }
        value = 0.5 * value + s.value() * h * h0;
        let err = (value - prev).abs();
        if err <= tol * value.abs().max(1.0e-300) || err <= tol {
            return QuadResult {
                value,
                error: err.max(f64::EPSILON * value.abs()),
            };
        }
        prev = value;
    }
    QuadResult {
        value,
        error: (value - prev).abs(),
    }
}

/// 7-point Gauss–Legendre on `[a, b]` (no error estimate).
pub fn gl7<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = WG7[3] * f(c);
    for j in 0..3 {
        let x = h * XGK15[2 * j + 1];
        s += WG7[j] * (f(c - x) + f(c + x));
    }
    s * h
}

/// Iterated Aitken Δ² extrapolation of a sequence of partial sums.
/// Returns `(limit, error_estimate)`.
pub fn aitken_limit(partials: &[f64]) -> (f64, f64) {
    if partials.is_empty() {
        return (0.0, 0.0);
    }
    if partials.len() < 3 {
        let last = *partials.last().unwrap();
        let err = if partials.len() == 2 {
            (partials[1] - partials[0]).abs()
        } else {
            last.abs()
        };
        return (last, err);
    }
    let mut cur = partials.to_vec();
    let mut best = *cur.last().unwrap();
    let mut best_err = f64::INFINITY;
    while cur.len() >= 3 {
        let mut next = Vec::with_capacity(cur.len() - 2);
        for i in 0..cur.len() - 2 {
            let d1 = cur[i + 1] - cur[i];
            let d2 = cur[i + 2] - cur[i + 1];
            let denom = d2 - d1;
            if denom.abs() < 1e-300 {
                next.push(cur[i + 2]);
            } else {
                next.push(cur[i + 2] - d2 * d2 / denom);
            }
        }
        let err = if next.len() >= 2 {
            (next[next.len() - 1] - next[next.len() - 2]).abs()
        } else {
            (next[0] - best).abs()
        };
        if err < best_err {
            best_err = err;
            best = *next.last().unwrap();
        }
        cur = next;
    }
    (best, best_err)
}

/// Complex iterated Aitken Δ²: unlike the componentwise version this handles
/// partial sums whose increments rotate in phase (complex geometric ratios).
pub fn aitken_limit_c(partials: &[Complex64]) -> (Complex64, f64) {
    if partials.is_empty() {
        return (Complex64::new(0.0, 0.0), 0.0);
    }
    if partials.len() < 3 {
        let last = *partials.last().unwrap();
        let err = if partials.len() == 2 {
            (partials[1] - partials[0]).norm()
        } else {
            last.norm()
        };
        return (last, err);
    }
    let mut cur = partials.to_vec();
    let mut best = *cur.last().unwrap();
    let mut best_err = f64::INFINITY;
    while cur.len() >= 3 {
        let mut next = Vec::with_capacity(cur.len() - 2);
        for i in 0..cur.len() - 2 {
            let d1 = cur[i + 1] - cur[i];
            let d2 = cur[i + 2] - cur[i + 1];
            let denom = d2 - d1;
            if denom.norm() < 1e-300 {
                next.push(cur[i + 2]);
            } else {
                next.push(cur[i + 2] - d2 * d2 / denom);
            }
        }
        let err = if next.len() >= 2 {
            (next[next.len() - 1] - next[next.len() - 2]).norm()
        } else {
            (next[0] - best).norm()
        };
        if err < best_err {
            best_err = err;
            best = *next.last().unwrap();
        }
        cur = next;
    }
    (best, best_err)
}

/// Integrate `f` over `[a, ∞)` where the integrand oscillates with monotone
/// phase `phase` (strictly increasing, `dphase > 0` beyond `a`).
///
/// Panels run between successive phase increments of π; the alternating panel
/// sums are extrapolated with iterated Aitken. `f` is the full integrand.
pub fn oscillatory_tail<F, P, D>(
    f: &mut F,
    phase: &P,
    dphase: &D,
    a: f64,
    tol: f64,
    max_panels: usize,
) -> QuadResult
where
    F: FnMut(f64) -> f64,
    P: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let phi0 = phase(a);
    let mut x0 = a;
    let mut partials = Vec::with_capacity(64);
    let mut sum = KahanSum::new();
    let mut k = 1usize;
    loop {
        // next boundary: phase = phi0 + k·π
        let target = phi0 + k as f64 * std::f64::consts::PI;
        let mut x1 = x0;
        // initial guess by local linearisation, then Newton
        let mut dp = dphase(x0).max(1e-12);
        x1 += (target - phase(x0)) / dp;
        if !x1.is_finite() || x1 <= x0 {
            x1 = x0 + 1.0 / dp;
        }
        for _ in 0..60 {
            let g = phase(x1) - target;
            if g.abs() < 1e-9 {
                break;
            }
            dp = dphase(x1);
            if dp <= 0.0 || !dp.is_finite() {
                break;
            }
            let step = g / dp;
            let capped = step.clamp(-(x1 - x0), 10.0 * (x1 - x0).max(1.0));
            x1 -= capped;
            if x1 <= x0 {
                x1 = 0.5 * (x0 + x1 + capped);
            }
        }
        if x1 <= x0 || !x1.is_finite() {
            break;
        }
        // resolve the panel: phase span is π, a single GK15 is plenty
        let (v, _) = gk15(f, x0, x1);
        sum.add(v);
        partials.push(sum.value());
        x0 = x1;
        k += 1;
        if partials.len() >= 8 && partials.len() % 4 == 0 {
            let (limit, err) = aitken_limit(&partials);
            if err <= tol {
                return QuadResult {
                    value: limit,
                    error: err,
                };
            }
        }
        if partials.len() >= max_panels {
            break;
        }
    }
    let (limit, err) = aitken_limit(&partials);
    QuadResult {
        value: limit,
        error: err,
    }
}
