//! Property tests for the exact-arithmetic layer and the special-function
//! identities that hold on open parameter regions.

use num_complex::Complex64;
use proptest::prelude::*;
use specrec_core::arith::{
    divisor_count, divisor_eigenvalue, gcd, kloosterman, ramanujan_sum, ramanujan_sum_direct,
};
use specrec_core::complexfn::{hurwitz_zeta, log_gamma};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kloosterman_symmetric_and_weil_bounded(
        m in 1i64..40,
        n in 1i64..40,
        c in 1u64..120,
    ) {
        let a = kloosterman(m, n, c);
        let b = kloosterman(n, m, c);
        prop_assert!((a - b).abs() < 1e-9);
        let weil = divisor_count(c) as f64
            * (gcd(gcd(m as u64, n as u64), c) as f64).sqrt()
            * (c as f64).sqrt();
        prop_assert!(a.abs() <= weil + 1e-9);
    }

    #[test]
    fn ramanujan_closed_form_matches_sum(c in 1u64..150, n in -80i64..80) {
        let exact = ramanujan_sum(c, n) as f64;
        let direct = ramanujan_sum_direct(c, n);
        prop_assert!((exact - direct).abs() < 1e-9);
    }

    #[test]
    fn divisor_eigenvalue_real_multiplicative(p in 0usize..5, q in 0usize..4, t in -20.0f64..20.0) {
        // coprime multiplicativity λ(mn, t) = λ(m, t)λ(n, t)
        let primes = [2u64, 3, 5, 7, 11];
        let others = [13u64, 17, 19, 23];
        let m = primes[p];
        let n = others[q];
        let lhs = divisor_eigenvalue(m * n, t);
        let rhs = divisor_eigenvalue(m, t) * divisor_eigenvalue(n, t);
        prop_assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
    }

    #[test]
    fn gamma_recurrence_holds(re in -40.0f64..40.0, im in 0.05f64..40.0) {
        let z = Complex64::new(re, im);
        let lhs = (log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap()).exp();
        prop_assert!((lhs - z).norm() <= 1e-10 * z.norm().max(1.0));
    }

    #[test]
    fn hurwitz_zeta_multiplication_theorem(re in -2.0f64..4.0, im in -60.0f64..60.0, q in 2u32..7) {
        // Σ_{r=1..q} ζ(s, r/q) = q^s ζ(s)
        let s = Complex64::new(re, im);
        prop_assume!((s - 1.0).norm() > 0.05);
        let mut lhs = Complex64::new(0.0, 0.0);
        for r in 1..=q {
            lhs += hurwitz_zeta(s, r as f64 / q as f64).unwrap();
        }
        let rhs = (s * (q as f64).ln()).exp() * specrec_core::complexfn::zeta(s).unwrap();
        prop_assert!(
            (lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1e-8),
            "q={} s={}: {} vs {}", q, s, lhs, rhs
        );
    }
}
