//! Property tests for the sawtooth/series invariants and the quadrature
//! engine's contracts.

use num_complex::Complex64;
use proptest::prelude::*;

use hlzeta::franel::{rat, SymbolicConstant};
use hlzeta::hlseries::{eval_f, eval_power_series, PowerSeriesForm, TruncationPolicy};
use hlzeta::quad::{self, Integrand, QuadratureSpec};
use hlzeta::sawtooth::{kubert_check, sawtooth, SawtoothConvention};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sawtooth_ranges(x in -1e6f64..1e6) {
        let fr = sawtooth(x, SawtoothConvention::Fractional);
        prop_assert!((0.0..1.0).contains(&fr));
        let ce = sawtooth(x, SawtoothConvention::Centered);
        prop_assert!((-0.5..=0.5).contains(&ce));
    }

    #[test]
    fn sawtooth_periodicity(x in -1e9f64..1e9) {
        // x + 1 is exact well below 2^52
        let a = sawtooth(x, SawtoothConvention::Fractional);
        let b = sawtooth(x + 1.0, SawtoothConvention::Fractional);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kubert_identity_random(m in 1u64..=12, x in -50.0f64..50.0) {
        let rep = kubert_check(m, x).unwrap();
        prop_assert!(rep.pass, "m={} x={}: {:?}", m, x, rep);
    }

    #[test]
    fn eval_f_odd_bitwise(x in 1e-6f64..500.0) {
        let policy = TruncationPolicy::new(50_000_000, 1e-8);
        let plus = eval_f(x, &policy).unwrap().value;
        let minus = eval_f(-x, &policy).unwrap().value;
        prop_assert_eq!(plus, -minus);
    }

    #[test]
    fn eval_f_policies_within_bounds(x in 0.01f64..200.0) {
        let tight = eval_f(x, &TruncationPolicy::new(50_000_000, 1e-10)).unwrap();
        let loose = eval_f(x, &TruncationPolicy::new(50_000_000, 1e-6)).unwrap();
        prop_assert!(
            (tight.value - loose.value).abs() <= tight.error_bound + loose.error_bound
        );
    }

    #[test]
    fn power_series_within_joint_bounds(x in -0.95f64..0.95) {
        if x.abs() < 1e-3 { return Ok(()); }
        let policy = TruncationPolicy::new(50_000_000, 1e-11);
        let f = eval_f(x, &policy).unwrap();
        let ps = eval_power_series(PowerSeriesForm::SinForm, Complex64::new(x, 0.0)).unwrap();
        prop_assert!(
            (f.value - ps.value.re).abs() <= f.error_bound + ps.error_bound + 1e-13
        );
    }

    #[test]
    fn quad_linearity(alpha in -3.0f64..3.0, beta in -3.0f64..3.0, k in 1.0f64..6.0) {
        let spec = QuadratureSpec::with_tol(1e-12);
        let f = move |x: f64| (k * x).cos();
        let g = move |x: f64| x * x - 0.3 * x;
        let combined = quad::integrate_fn(move |x| alpha * f(x) + beta * g(x), 0.0, 2.0, &spec).unwrap();
        let rf = quad::integrate_fn(f, 0.0, 2.0, &spec).unwrap();
        let rg = quad::integrate_fn(g, 0.0, 2.0, &spec).unwrap();
        let budget = combined.error_bound
            + alpha.abs() * rf.error_bound
            + beta.abs() * rg.error_bound
            + 1e-13;
        prop_assert!(
            (combined.value - (alpha * rf.value + beta * rg.value)).abs() <= budget
        );
    }

    #[test]
    fn quad_breakpoint_insertion_stable(c in 0.1f64..0.9) {
        // inserting a breakpoint into a smooth integrand moves a converged
        // result by no more than the two bounds combined
        let spec_plain = QuadratureSpec::with_tol(1e-12);
        let spec_bp = QuadratureSpec::with_tol(1e-12).breakpoints(vec![c]);
        let f = |x: f64| (3.0 * x).sin() * (-x).exp();
        let a = quad::integrate_fn(f, 0.0, 1.0, &spec_plain).unwrap();
        let b = quad::integrate(&Integrand::smooth(f), 0.0, 1.0, &spec_bp).unwrap();
        prop_assert!((a.value - b.value).abs() <= a.error_bound + b.error_bound + 1e-15);
    }

    #[test]
    fn symbolic_log_homomorphism(a in 2u64..900, b in 2u64..900) {
        hlzeta::specfun::ensure_sieve(1_000_000).unwrap();
        // log(ab) assembled directly equals log a + log b, exactly
        let mut lhs = SymbolicConstant::zero();
        lhs.add_log_of_integer(a * b, &rat(1, 1)).unwrap();
        let mut rhs = SymbolicConstant::zero();
        rhs.add_log_of_integer(a, &rat(1, 1)).unwrap();
        rhs.add_log_of_integer(b, &rat(1, 1)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbolic_add_commutes(p in 1i64..500, q in 1i64..500) {
        let mut a = SymbolicConstant::from_rational(rat(p, q));
        a.add_zeta2(rat(-p, 2));
        a.add_log_of_integer(6, &rat(1, 3)).unwrap();
        let mut b = SymbolicConstant::from_rational(rat(q, p));
        b.add_log_of_integer(10, &rat(-2, 5)).unwrap();
        prop_assert_eq!(a.add(&b), b.add(&a));
    }
}
