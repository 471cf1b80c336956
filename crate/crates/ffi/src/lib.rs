// Comparisons are written in negated form where they must also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! C ABI over the spectral summation toolkit.
//!
//! Conventions: every function returns a [`SpecrecStatus`]; results come back
//! through out-pointers. Stateful objects (test-function triples and the
//! dual-moment evaluators) are opaque handles created by `*_new` and released
//! by `*_free`. All functions are safe to call from multiple threads as long
//! as each handle is used from one thread at a time.

use num_complex::Complex64;
use specrec_core::besselkern::KernelOrder;
use specrec_core::cli::spectral::{continuous_part, WeightSpec};
use specrec_core::complexfn::{self, Sign};
use specrec_core::error::Error;
use specrec_core::oscillatory;
use specrec_core::reciprocity::{
    self, ContourSpec, DualMomentEvaluator, GridQuality, ReciprocityParams,
};
use specrec_core::transforms::{self, TestFunctionTriple, TripleKind};
use std::os::raw::c_double;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecrecStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    PoleProximity = 4,
    Nonconvergence = 5,
    InternalPanic = 6,
}

/// Complex number with explicit parts.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SpecrecComplex {
    pub re: c_double,
    pub im: c_double,
}

impl From<Complex64> for SpecrecComplex {
    fn from(z: Complex64) -> Self {
        SpecrecComplex { re: z.re, im: z.im }
    }
}

impl From<SpecrecComplex> for Complex64 {
    fn from(z: SpecrecComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Kernel family selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecrecKernelKind {
    Plus = 0,
    Minus = 1,
    Hol = 2,
}

/// Test-function family selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecrecTripleKind {
    Dyadic = 0,
    Reconstructed = 1,
    ShortInterval = 2,
}

fn status_of(err: &Error) -> SpecrecStatus {
    match err {
        Error::PoleProximity { .. } => SpecrecStatus::PoleProximity,
        Error::InvalidArgument(_) | Error::Config(_) | Error::MissingField { .. } => {
            SpecrecStatus::InvalidArgument
        }
        Error::Domain(_) | Error::DivergentRegion(_) => SpecrecStatus::DomainError,
        Error::Nonconvergence { .. } => SpecrecStatus::Nonconvergence,
        Error::Io(_) | Error::Json(_) => SpecrecStatus::InvalidArgument,
    }
}

fn catch<F: FnOnce() -> SpecrecStatus + std::panic::UnwindSafe>(f: F) -> SpecrecStatus {
    match std::panic::catch_unwind(f) {
        Ok(s) => s,
        Err(_) => SpecrecStatus::InternalPanic,
    }
}

macro_rules! out_write {
    ($ptr:expr, $value:expr) => {{
        if $ptr.is_null() {
            return SpecrecStatus::NullPointer;
        }
        unsafe { *$ptr = $value };
    }};
}

fn kernel_order(kind: SpecrecKernelKind, order: f64) -> Result<KernelOrder, SpecrecStatus> {
    let o = match kind {
        SpecrecKernelKind::Plus => KernelOrder::Plus { r: order },
        SpecrecKernelKind::Minus => KernelOrder::Minus { r: order },
        SpecrecKernelKind::Hol => {
            if order < 2.0 || order.fract() != 0.0 {
                return Err(SpecrecStatus::InvalidArgument);
            }
            KernelOrder::Hol { k: order as u32 }
        }
    };
    Ok(o)
}

// ---------------------------------------------------------------------------
// scalar special functions
// ---------------------------------------------------------------------------

/// Principal-branch log Γ(z).
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_log_gamma(
    z: SpecrecComplex,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    catch(|| match complexfn::log_gamma(z.into()) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Completed gamma factor π^{−s/2} Γ(s/2).
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_gamma_r(
    s: SpecrecComplex,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    catch(|| match complexfn::gamma_r(s.into()) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Riemann zeta.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_zeta(
    s: SpecrecComplex,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    catch(|| match complexfn::zeta(s.into()) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Hurwitz zeta ζ(s, a) for 0 < a ≤ 1.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_hurwitz_zeta(
    s: SpecrecComplex,
    a: c_double,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    catch(|| match complexfn::hurwitz_zeta(s.into(), a) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Paired gamma factor G^±(s) = (2π)^{−s} Γ(s) e^{±iπs/2}; `plus_sign` ≠ 0
/// selects the plus branch.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_g_pm(
    s: SpecrecComplex,
    plus_sign: i32,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    let sign = if plus_sign != 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    catch(|| match complexfn::g_pm(s.into(), sign) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Triple gamma product built from spectral parameters (mu_re[i], mu_im[i]).
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_script_g(
    s: SpecrecComplex,
    mu: *const SpecrecComplex,
    plus_sign: i32,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    if mu.is_null() {
        return SpecrecStatus::NullPointer;
    }
    let mu_arr: [Complex64; 3] =
        unsafe { [(*mu).into(), (*mu.add(1)).into(), (*mu.add(2)).into()] };
    let sign = if plus_sign != 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    catch(move || match complexfn::script_g(s.into(), &mu_arr, sign) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

// ---------------------------------------------------------------------------
// arithmetic
// ---------------------------------------------------------------------------

/// Complete exponential sum over units mod c.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_kloosterman(
    m: i64,
    n: i64,
    c: u64,
    out: *mut c_double,
) -> SpecrecStatus {
    if c < 1 {
        return SpecrecStatus::InvalidArgument;
    }
    catch(|| {
        out_write!(out, specrec_core::arith::kloosterman(m, n, c));
        SpecrecStatus::Ok
    })
}

/// Σ_{d | (c,n)} d·μ(c/d).
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_ramanujan_sum(c: u64, n: i64, out: *mut i64) -> SpecrecStatus {
    if c < 1 {
        return SpecrecStatus::InvalidArgument;
    }
    catch(|| {
        out_write!(out, specrec_core::arith::ramanujan_sum(c, n));
        SpecrecStatus::Ok
    })
}

/// Eisenstein Hecke eigenvalue Σ_{ab=n} (a/b)^{it}.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_divisor_eigenvalue(
    n: u64,
    t: c_double,
    out: *mut c_double,
) -> SpecrecStatus {
    if n < 1 {
        return SpecrecStatus::InvalidArgument;
    }
    catch(|| {
        out_write!(out, specrec_core::arith::divisor_eigenvalue(n, t));
        SpecrecStatus::Ok
    })
}

// ---------------------------------------------------------------------------
// kernels and transforms
// ---------------------------------------------------------------------------

/// Bessel kernel of the summation formulas at x > 0. `order` is the spectral
/// parameter for plus/minus and the (even) weight for hol.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_kernel(
    kind: SpecrecKernelKind,
    order: c_double,
    x: c_double,
    out: *mut c_double,
) -> SpecrecStatus {
    catch(|| {
        let o = match kernel_order(kind, order) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match specrec_core::besselkern::kernel(o, x) {
            Ok(v) => {
                out_write!(out, v);
                SpecrecStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Closed-form Mellin transform of a kernel.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_mellin_kernel(
    kind: SpecrecKernelKind,
    order: c_double,
    s: SpecrecComplex,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    catch(|| {
        let o = match kernel_order(kind, order) {
            Ok(o) => o,
            Err(st) => return st,
        };
        match specrec_core::mellin::mellin_kernel(o, s.into()) {
            Ok(v) => {
                out_write!(out, v.value.into());
                SpecrecStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Spectral-expansion weight H(t) and its asymptotic main term.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_big_h(
    t: c_double,
    t_g: c_double,
    out_value: *mut c_double,
    out_main: *mut c_double,
) -> SpecrecStatus {
    catch(|| {
        out_write!(out_value, reciprocity::big_h(t, t_g));
        out_write!(out_main, reciprocity::big_h_main(t, t_g));
        SpecrecStatus::Ok
    })
}

/// Smoothed functional-equation weight V_±; `plus_sign` selects the branch.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn specrec_afe_weight(
    x: c_double,
    t: c_double,
    eps: i32,
    t_g: c_double,
    big_x: c_double,
    plus_sign: i32,
    sigma: c_double,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    let sign = if plus_sign != 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    catch(
        || match oscillatory::afe_weight(x, t, eps, t_g, big_x, sign, sigma) {
            Ok(v) => {
                out_write!(out, v.into());
                SpecrecStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Stationary-phase double integral over the given x-window.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_stat_integral(
    t: c_double,
    t_g: c_double,
    u: c_double,
    c: u32,
    x_lo: c_double,
    x_hi: c_double,
    out: *mut c_double,
) -> SpecrecStatus {
    catch(
        || match oscillatory::stat_integral(t, t_g, u, c, (x_lo, x_hi)) {
            Ok(v) => {
                out_write!(out, v);
                SpecrecStatus::Ok
            }
            Err(e) => status_of(&e),
        },
    )
}

/// Continuous-spectrum integral of the summation formula for an even
/// Gaussian-pair weight centred at ±center.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_continuous_part(
    m: u64,
    n: u64,
    center: c_double,
    width: c_double,
    out: *mut c_double,
) -> SpecrecStatus {
    if m < 1 || n < 1 || !(width > 0.0) {
        return SpecrecStatus::InvalidArgument;
    }
    catch(|| {
        let weight = WeightSpec::Gauss {
            sign: Sign::Minus,
            center,
            width,
        };
        let h = |t: f64| match &weight {
            WeightSpec::Gauss { center, width, .. } => {
                (-((t - center) / width).powi(2)).exp() + (-((t + center) / width).powi(2)).exp()
            }
            _ => 0.0,
        };
        out_write!(out, continuous_part(m, n, &h, center + 8.0 * width));
        SpecrecStatus::Ok
    })
}

// ---------------------------------------------------------------------------
// opaque handles: test-function triples
// ---------------------------------------------------------------------------

/// Opaque test-function triple.
pub struct SpecrecTriple {
    inner: TestFunctionTriple,
}

/// Create a triple; `u` is ignored unless the kind is the short-interval one.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_triple_new(
    kind: SpecrecTripleKind,
    m: u32,
    t: c_double,
    u: c_double,
    out: *mut *mut SpecrecTriple,
) -> SpecrecStatus {
    catch(|| {
        let (k, uu) = match kind {
            SpecrecTripleKind::Dyadic => (TripleKind::Triple1, None),
            SpecrecTripleKind::Reconstructed => (TripleKind::Triple2, None),
            SpecrecTripleKind::ShortInterval => (TripleKind::Triple4, Some(u)),
        };
        match transforms::make_triple(k, m, t, uu) {
            Ok(inner) => {
                let boxed = Box::new(SpecrecTriple { inner });
                out_write!(out, Box::into_raw(boxed));
                SpecrecStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release a triple handle. Null is a no-op.
///
/// # Safety
/// `handle` must be a pointer previously returned by `specrec_triple_new`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn specrec_triple_free(handle: *mut SpecrecTriple) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Evaluate h⁻(t), h⁺(t), or hʰᵒˡ(k) of the triple: `component` 0 = minus,
/// 1 = plus, 2 = hol (argument rounded to an even weight).
///
/// # Safety
/// `handle` must be a live pointer from `specrec_triple_new`.
#[no_mangle]
pub unsafe extern "C" fn specrec_triple_eval(
    handle: *const SpecrecTriple,
    component: i32,
    arg: c_double,
    out: *mut c_double,
) -> SpecrecStatus {
    if handle.is_null() {
        return SpecrecStatus::NullPointer;
    }
    let triple = unsafe { &(*handle).inner };
    catch(|| {
        let v = match component {
            0 => triple.h_minus(arg),
            1 => triple.h_plus(arg),
            2 => triple.h_hol(arg as u32),
            _ => return SpecrecStatus::InvalidArgument,
        };
        out_write!(out, v);
        SpecrecStatus::Ok
    })
}

/// Geometric-side profile H⁺(x) of the reconstructed triple (zero for the
/// bump triples).
///
/// # Safety
/// `handle` must be a live pointer from `specrec_triple_new`.
#[no_mangle]
pub unsafe extern "C" fn specrec_triple_profile(
    handle: *const SpecrecTriple,
    x: c_double,
    out: *mut c_double,
) -> SpecrecStatus {
    if handle.is_null() {
        return SpecrecStatus::NullPointer;
    }
    let triple = unsafe { &(*handle).inner };
    catch(|| {
        out_write!(out, triple.h_plus_profile(x));
        SpecrecStatus::Ok
    })
}

// ---------------------------------------------------------------------------
// opaque handles: dual-moment evaluators
// ---------------------------------------------------------------------------

/// Opaque dual-moment transform evaluator.
pub struct SpecrecDualMoment {
    inner: DualMomentEvaluator,
}

/// Build the evaluator for a triple at spectral parameter t_g on the vertical
/// line Re s = sigma; `identity_quality` ≠ 0 selects the tight grid.
///
/// # Safety
/// All pointer arguments must be valid for the duration of the call;
/// out-pointers must be writable. Null pointers are rejected with a
/// status code.
#[no_mangle]
pub unsafe extern "C" fn specrec_dual_moment_new(
    triple: *const SpecrecTriple,
    t_g: c_double,
    sigma: c_double,
    identity_quality: i32,
    out: *mut *mut SpecrecDualMoment,
) -> SpecrecStatus {
    if triple.is_null() {
        return SpecrecStatus::NullPointer;
    }
    let triple = unsafe { &(*triple).inner };
    catch(|| {
        let params = ReciprocityParams {
            t_g,
            triple: *triple,
            contour: ContourSpec::line(sigma),
        };
        let quality = if identity_quality != 0 {
            GridQuality::Identity
        } else {
            GridQuality::Envelope
        };
        match DualMomentEvaluator::new(&params, 0.0, quality) {
            Ok(inner) => {
                let boxed = Box::new(SpecrecDualMoment { inner });
                out_write!(out, Box::into_raw(boxed));
                SpecrecStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Release an evaluator handle. Null is a no-op.
///
/// # Safety
/// `handle` must be a pointer previously returned by
/// `specrec_dual_moment_new` that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn specrec_dual_moment_free(handle: *mut SpecrecDualMoment) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// First-moment transform ℋ(t).
///
/// # Safety
/// `handle` must be a live pointer from `specrec_dual_moment_new`.
#[no_mangle]
pub unsafe extern "C" fn specrec_dual_moment_hcal(
    handle: *const SpecrecDualMoment,
    t: c_double,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    if handle.is_null() {
        return SpecrecStatus::NullPointer;
    }
    let eval = unsafe { &(*handle).inner };
    catch(|| match eval.hcal(t) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Mixed-moment transform h̃^±(t); `plus_sign` selects the kernel family.
///
/// # Safety
/// `handle` must be a live pointer from `specrec_dual_moment_new`.
#[no_mangle]
pub unsafe extern "C" fn specrec_dual_moment_tilde(
    handle: *const SpecrecDualMoment,
    plus_sign: i32,
    t: c_double,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    if handle.is_null() {
        return SpecrecStatus::NullPointer;
    }
    let eval = unsafe { &(*handle).inner };
    let sign = if plus_sign != 0 {
        Sign::Plus
    } else {
        Sign::Minus
    };
    catch(|| match eval.tilde_pm(sign, t) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Holomorphic mixed-moment transform h̃ʰᵒˡ(k) for even k ≥ 2.
///
/// # Safety
/// `handle` must be a live pointer from `specrec_dual_moment_new`.
#[no_mangle]
pub unsafe extern "C" fn specrec_dual_moment_tilde_hol(
    handle: *const SpecrecDualMoment,
    k: u32,
    out: *mut SpecrecComplex,
) -> SpecrecStatus {
    if handle.is_null() {
        return SpecrecStatus::NullPointer;
    }
    let eval = unsafe { &(*handle).inner };
    catch(|| match eval.tilde_hol(k) {
        Ok(v) => {
            out_write!(out, v.into());
            SpecrecStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_calls_roundtrip() {
        let mut out = SpecrecComplex { re: 0.0, im: 0.0 };
        let st = unsafe { specrec_log_gamma(SpecrecComplex { re: 0.5, im: 0.0 }, &mut out) };
        assert_eq!(st, SpecrecStatus::Ok);
        assert!((out.re - std::f64::consts::PI.sqrt().ln()).abs() < 1e-14);
        // pole maps to the pole status
        let st = unsafe { specrec_log_gamma(SpecrecComplex { re: -2.0, im: 0.0 }, &mut out) };
        assert_eq!(st, SpecrecStatus::PoleProximity);
        // null out-pointer
        let st = unsafe { specrec_zeta(SpecrecComplex { re: 2.0, im: 0.0 }, std::ptr::null_mut()) };
        assert_eq!(st, SpecrecStatus::NullPointer);
    }

    #[test]
    fn arithmetic_calls() {
        let mut v = 0.0f64;
        assert_eq!(
            unsafe { specrec_kloosterman(1, 1, 6, &mut v) },
            SpecrecStatus::Ok
        );
        assert!((v + 1.0).abs() < 1e-12);
        let mut r = 0i64;
        assert_eq!(
            unsafe { specrec_ramanujan_sum(6, 4, &mut r) },
            SpecrecStatus::Ok
        );
        assert_eq!(r, -1);
        assert_eq!(
            unsafe { specrec_ramanujan_sum(0, 4, &mut r) },
            SpecrecStatus::InvalidArgument
        );
    }

    #[test]
    fn kernel_and_mellin_calls() {
        let mut v = 0.0f64;
        assert_eq!(
            unsafe { specrec_kernel(SpecrecKernelKind::Minus, 0.0, 1.0, &mut v) },
            SpecrecStatus::Ok
        );
        assert!((v - 4.884_821_977e-6).abs() < 1e-12);
        assert_eq!(
            unsafe { specrec_kernel(SpecrecKernelKind::Hol, 3.0, 1.0, &mut v) },
            SpecrecStatus::InvalidArgument
        );
        let mut z = SpecrecComplex { re: 0.0, im: 0.0 };
        assert_eq!(
            unsafe {
                specrec_mellin_kernel(
                    SpecrecKernelKind::Minus,
                    0.0,
                    SpecrecComplex { re: 1.0, im: 0.0 },
                    &mut z,
                )
            },
            SpecrecStatus::Ok
        );
        assert!((z.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn triple_handle_lifecycle() {
        let mut handle: *mut SpecrecTriple = std::ptr::null_mut();
        let st =
            unsafe { specrec_triple_new(SpecrecTripleKind::Dyadic, 4, 30.0, 0.0, &mut handle) };
        assert_eq!(st, SpecrecStatus::Ok);
        assert!(!handle.is_null());
        let mut v = 0.0f64;
        let st = unsafe { specrec_triple_eval(handle, 0, 30.0, &mut v) };
        assert_eq!(st, SpecrecStatus::Ok);
        assert!(v > 0.0);
        // plus component of the dyadic triple vanishes
        let st = unsafe { specrec_triple_eval(handle, 1, 3.0, &mut v) };
        assert_eq!(st, SpecrecStatus::Ok);
        assert_eq!(v, 0.0);
        unsafe { specrec_triple_free(handle) };
        // invalid construction surfaces as InvalidArgument
        let st =
            unsafe { specrec_triple_new(SpecrecTripleKind::Dyadic, 40, 30.0, 0.0, &mut handle) };
        assert_eq!(st, SpecrecStatus::InvalidArgument);
    }

    #[test]
    fn dual_moment_handle_lifecycle() {
        let mut triple: *mut SpecrecTriple = std::ptr::null_mut();
        assert_eq!(
            unsafe { specrec_triple_new(SpecrecTripleKind::Dyadic, 4, 8.0, 0.0, &mut triple) },
            SpecrecStatus::Ok
        );
        let mut eval: *mut SpecrecDualMoment = std::ptr::null_mut();
        let st = unsafe { specrec_dual_moment_new(triple, 30.0, 0.5, 1, &mut eval) };
        assert_eq!(st, SpecrecStatus::Ok);
        let mut z = SpecrecComplex { re: 0.0, im: 0.0 };
        assert_eq!(
            unsafe { specrec_dual_moment_hcal(eval, 0.0, &mut z) },
            SpecrecStatus::Ok
        );
        assert!(z.re.is_finite() && z.re != 0.0);
        assert_eq!(
            unsafe { specrec_dual_moment_tilde(eval, 0, 1.0, &mut z) },
            SpecrecStatus::Ok
        );
        assert!(z.re.is_finite());
        assert_eq!(
            unsafe { specrec_dual_moment_tilde_hol(eval, 4, &mut z) },
            SpecrecStatus::Ok
        );
        // bad contour line
        let mut bad: *mut SpecrecDualMoment = std::ptr::null_mut();
        assert_eq!(
            unsafe { specrec_dual_moment_new(triple, 30.0, 1.5, 1, &mut bad) },
            SpecrecStatus::PoleProximity
        );
        unsafe {
            specrec_dual_moment_free(eval);
            specrec_triple_free(triple);
        }
    }
}
