//! The floor, fractional-part and centered sawtooth functions; the Kubert
//! distribution identity; the exact divisor-sum identity; the Mellin
//! integral of rho(theta/x); the decomposition formula; and the Fourier
//! coefficient a_n of the dilated fractional part, computed two ways.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::hlseries::{eval_sin2_sum, TruncationPolicy};
use crate::quad::{self, Integrand, QuadratureSpec};
use crate::report::IdentityReport;
use crate::specfun::{hurwitz_zeta, mobius_table, riemann_zeta, sigma1_table};

/// The two sawtooth readings used side by side throughout: the fractional
/// part x - floor(x), and the centered variant that vanishes at integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SawtoothConvention {
    Fractional,
    Centered,
}

/// Convention-conforming sawtooth; the centered variant returns exactly 0
/// at integer arguments.
pub fn sawtooth(x: f64, conv: SawtoothConvention) -> f64 {
    let fr = x - x.floor();
    match conv {
        SawtoothConvention::Fractional => fr,
        SawtoothConvention::Centered => {
            if fr == 0.0 {
                0.0
            } else {
                fr - 0.5
            }
        }
    }
}

/// The weighted sawtooth sum rho(x) = sum_{n<=x} (1/n)(x/n - floor(x/n) - 1/2),
/// written with the raw formula (value -1/(2n) at exact multiples).
pub fn rho_sum(x: f64) -> f64 {
    let n_max = x.floor() as u64;
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=n_max {
        let v = x / n as f64;
        let term = (v - v.floor() - 0.5) / n as f64;
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc
}

/// Kubert identity for the centered sawtooth:
/// sum_{l=0}^{m-1} {x + l/m} = {m x}.
pub fn kubert_check(m: u64, x: f64) -> Result<IdentityReport> {
    if m < 1 {
        return Err(Error::domain("kubert_check needs m >= 1"));
    }
    let mut lhs = 0.0f64;
    for l in 0..m {
        lhs += sawtooth(x + l as f64 / m as f64, SawtoothConvention::Centered);
    }
    let rhs = sawtooth(m as f64 * x, SawtoothConvention::Centered);
    Ok(IdentityReport::from_real_sides(
        format!("kubert.m{m}"),
        "distribution relation of the centered sawtooth",
        lhs,
        rhs,
        1e-13 * m as f64,
    ))
}

// ----------------------------------------------------- divisor-sum identity --

fn kahan_add(sum: &mut f64, comp: &mut f64, term: f64) {
    let y = term - *comp;
    let t = *sum + y;
    *comp = (t - *sum) - y;
    *sum = t;
}

/// Floating check of the exact finite identity
/// sum_{n<=x} (1/n) floor(x/n) + rho(x) + H_{floor(x)}/2 = x sum_{n<=x} 1/n^2,
/// with rho the raw-formula sawtooth sum. The note carries the scaled
/// second-moment remainder (S^1(x) - pi^2 x^2/12 + x rho(x))/x.
pub fn divisor_sum_identity(x: f64) -> Result<IdentityReport> {
    if !(1.0..=1e7).contains(&x) {
        return Err(Error::Capacity {
            requested: x.max(0.0) as u64,
            limit: 10_000_000,
        });
    }
    let n_max = x.floor() as usize;
    let (mut floor_sum, mut floor_c) = (0.0f64, 0.0f64);
    let (mut harmonic, mut harm_c) = (0.0f64, 0.0f64);
    let (mut zeta_part, mut zeta_c) = (0.0f64, 0.0f64);
    for n in 1..=n_max {
        let nf = n as f64;
        kahan_add(&mut floor_sum, &mut floor_c, (x / nf).floor() / nf);
        kahan_add(&mut harmonic, &mut harm_c, 1.0 / nf);
        kahan_add(&mut zeta_part, &mut zeta_c, 1.0 / (nf * nf));
    }
    let rho = rho_sum(x);
    let lhs = floor_sum + rho + 0.5 * harmonic;
    let rhs = x * zeta_part;
    let tol = 1e-9 * (1.0 + x / 1e4) + 32.0 * f64::EPSILON * rhs.abs();
    let s1: f64 = {
        let tab = sigma1_table(n_max)?;
        tab.iter().skip(1).sum::<u64>() as f64
    };
    let remainder = (s1 - std::f64::consts::PI.powi(2) * x * x / 12.0 + x * rho) / x;
    Ok(IdentityReport::from_real_sides(
        format!("divisor_sum.x{x}"),
        "finite divisor-sum identity tying floor sums to the sawtooth sum",
        lhs,
        rhs,
        tol,
    )
    .with_note(format!("s1_remainder_over_x={remainder:.6}")))
}

/// Exact rational verification of the divisor-sum identity for every integer
/// x <= up_to. All quantities are integers scaled by D = lcm(1..x)^2, each
/// accumulator driven by its own recurrence:
///   A_x = sum sigma(k)/k,   R_x = sum (x mod n)/n^2,   Z_x = sum 1/n^2,
/// and the identity reads A_x + R_x = x Z_x. Returns the first failing x,
/// or None when every x passes.
pub fn divisor_sum_identity_exact(up_to: u64) -> Result<Option<u64>> {
    if up_to > 100_000 {
        return Err(Error::Capacity {
            requested: up_to,
            limit: 100_000,
        });
    }
    let sigma = sigma1_table(up_to as usize)?;
    let mut d = BigInt::from(1u32); // lcm(1..x)^2
    let mut a = BigInt::from(0u32);
    let mut r = BigInt::from(0u32);
    let mut z = BigInt::from(0u32);
    for x in 1..=up_to {
        // the common denominator grows exactly at prime powers
        let f = crate::specfun::factorize(x)?;
        if f.len() == 1 && x > 1 {
            let p2 = BigInt::from(f[0].0) * BigInt::from(f[0].0);
            d *= &p2;
            a *= &p2;
            r *= &p2;
            z *= &p2;
        }
        let d_over_x = &d / BigInt::from(x);
        // R uses Z before x's own term joins it
        r += &z - BigInt::from(sigma[x as usize] - 1) * &d_over_x;
        z += &d_over_x / BigInt::from(x);
        a += BigInt::from(sigma[x as usize]) * &d_over_x;
        if &a + &r != BigInt::from(x) * &z {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Direct (no recurrences) rational evaluation for small integer x, used to
/// certify the recurrence-driven exact check above.
pub fn divisor_sum_identity_exact_direct(x: u64) -> bool {
    let big = |n: u64| BigInt::from(n);
    let mut lhs = BigRational::from_integer(big(0));
    let mut rhs = BigRational::from_integer(big(0));
    for n in 1..=x {
        // (1/n) floor(x/n) + (x mod n)/n^2; the -1/(2n) of rho cancels H/2
        lhs += BigRational::new(big(x / n), big(n));
        lhs += BigRational::new(big(x % n), big(n * n));
        rhs += BigRational::new(big(x), big(n * n));
    }
    lhs == rhs
}

// ------------------------------------------------------ Mellin of rho ------

/// int_0^1 rho(theta/x) x^{s-1} dx (fractional convention) against the
/// closed form -theta/(1-s) - theta^s zeta(s)/s, for s > 1.
pub fn beurling_mellin_check(theta: f64, s: f64) -> Result<IdentityReport> {
    if !(0.0 < theta && theta <= 1.0) {
        return Err(Error::domain("beurling_mellin_check needs theta in (0,1]"));
    }
    if s <= 1.0 {
        return Err(Error::domain("beurling_mellin_check stated for s > 1"));
    }
    let k_cut = 2000u64;
    let x_min = theta / k_cut as f64;
    let breakpoints: Vec<f64> = (1..=k_cut).rev().map(|k| theta / k as f64).collect();
    let integrand = Integrand::piecewise(move |x: f64| {
        let v = theta / x;
        (v - v.floor()) * x.powf(s - 1.0)
    });
    let spec = QuadratureSpec {
        abs_tol: 2e-10,
        rel_tol: 1e-13,
        max_subdivisions: 60_000,
        breakpoints,
    };
    let bulk = quad::integrate(&integrand, x_min, 1.0, &spec)?;
    // exact small-x tail: int_0^{theta/K} rho(theta/x) x^{s-1} dx
    //   = theta^s [ K^{1-s}/(s-1) - (K^{1-s} + zeta(s, K+1))/s ]
    let kf = k_cut as f64;
    let zeta_tail = hurwitz_zeta(s, kf + 1.0)?;
    let tail =
        theta.powf(s) * (kf.powf(1.0 - s) / (s - 1.0) - (kf.powf(1.0 - s) + zeta_tail.value) / s);
    let lhs = bulk.value + tail;
    let zeta_s = riemann_zeta(s)?;
    let rhs = -theta / (1.0 - s) - theta.powf(s) * zeta_s.value / s;
    Ok(IdentityReport::from_real_sides(
        format!("beurling_mellin.t{theta}.s{s}"),
        "Mellin integral of the dilated fractional part against its closed form",
        lhs,
        rhs,
        1e-8_f64.max(2.0 * (bulk.error_bound + zeta_tail.error_bound + zeta_s.error_bound)),
    ))
}

// ------------------------------------------------- decomposition formula ---

/// Built-in test integrands for the decomposition formula; each carries its
/// antiderivative (normalized F(0) = 0) and Taylor coefficients at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoTestFn {
    /// f(x) = x
    Linear,
    /// f = 0
    Zero,
    /// f(x) = sin(pi x)
    SinPi,
}

impl RhoTestFn {
    fn f(&self, x: f64) -> f64 {
        match self {
            RhoTestFn::Linear => x,
            RhoTestFn::Zero => 0.0,
            RhoTestFn::SinPi => (std::f64::consts::PI * x).sin(),
        }
    }

    fn antiderivative(&self, x: f64) -> f64 {
        match self {
            RhoTestFn::Linear => x * x / 2.0,
            RhoTestFn::Zero => 0.0,
            RhoTestFn::SinPi => (1.0 - (std::f64::consts::PI * x).cos()) / std::f64::consts::PI,
        }
    }

    fn over_t(&self, t: f64) -> f64 {
        match self {
            RhoTestFn::Linear => 1.0,
            RhoTestFn::Zero => 0.0,
            RhoTestFn::SinPi => {
                if t < 1e-8 {
                    std::f64::consts::PI * (1.0 - (std::f64::consts::PI * t).powi(2) / 6.0)
                } else {
                    (std::f64::consts::PI * t).sin() / t
                }
            }
        }
    }

    /// Taylor coefficients c_j with f(t) = sum c_j t^j (c_0 = 0 throughout).
    fn taylor(&self) -> Vec<f64> {
        match self {
            RhoTestFn::Linear => vec![0.0, 1.0],
            RhoTestFn::Zero => vec![0.0],
            RhoTestFn::SinPi => {
                let mut c = vec![0.0; 16];
                let mut pw = std::f64::consts::PI;
                let mut fact = 1.0;
                for j in (1..16).step_by(2) {
                    c[j] = if (j / 2) % 2 == 0 {
                        pw / fact
                    } else {
                        -pw / fact
                    };
                    pw *= std::f64::consts::PI * std::f64::consts::PI;
                    fact *= (j as f64 + 1.0) * (j as f64 + 2.0);
                }
                c
            }
        }
    }

    fn slope_bound(&self) -> f64 {
        match self {
            RhoTestFn::Linear => 1.0,
            RhoTestFn::Zero => 0.0,
            RhoTestFn::SinPi => std::f64::consts::PI,
        }
    }
}

/// Decomposition formula: int_0^1 rho(theta/x) f(x) dx
/// = theta int_0^1 f(t)/t dt - sum_n n (F(theta/n) - F(theta/(n+1))).
pub fn rho_decomposition_check(theta: f64, f: RhoTestFn) -> Result<IdentityReport> {
    if !(0.0 < theta && theta <= 1.0) {
        return Err(Error::domain(
            "rho_decomposition_check needs theta in (0,1]",
        ));
    }
    if f == RhoTestFn::Zero {
        return Ok(IdentityReport::from_real_sides(
            format!("rho_decomp.zero.t{theta}"),
            "decomposition formula, degenerate zero integrand",
            0.0,
            0.0,
            1e-15,
        ));
    }
    let k_cut = 4000u64;
    let x_min = theta / k_cut as f64;
    let head_bound = f.slope_bound() * x_min * x_min / 2.0;
    let breakpoints: Vec<f64> = (1..=k_cut).rev().map(|k| theta / k as f64).collect();
    let integrand = Integrand::piecewise(move |x: f64| {
        let v = theta / x;
        (v - v.floor()) * f.f(x)
    });
    let spec = QuadratureSpec {
        abs_tol: 1e-10,
        rel_tol: 1e-13,
        max_subdivisions: 60_000,
        breakpoints,
    };
    let lhs_q = quad::integrate(&integrand, x_min, 1.0, &spec)?;
    let lhs = lhs_q.value;

    let over_t = quad::integrate_fn(|t| f.over_t(t), 0.0, 1.0, &QuadratureSpec::with_tol(1e-11))?;
    let n_cut = 2000u64;
    let mut series = 0.0f64;
    for n in 1..=n_cut {
        series += n as f64
            * (f.antiderivative(theta / n as f64) - f.antiderivative(theta / (n as f64 + 1.0)));
    }
    // series tail from Abel summation:
    //   sum_{n>N} = (N+1) F(theta/(N+1)) + sum_j c_j theta^{j+1}/(j+1) zeta(j+1, N+2)
    let nf = n_cut as f64;
    let mut tail = (nf + 1.0) * f.antiderivative(theta / (nf + 1.0));
    for (j, &cj) in f.taylor().iter().enumerate().skip(1) {
        if cj != 0.0 {
            tail += cj * theta.powi(j as i32 + 1) / (j as f64 + 1.0)
                * hurwitz_zeta(j as f64 + 1.0, nf + 2.0)?.value;
        }
    }
    let rhs = theta * over_t.value - (series + tail);
    Ok(IdentityReport::from_real_sides(
        format!("rho_decomp.{f:?}.t{theta}"),
        "decomposition of the dilated fractional part against the antiderivative series",
        lhs,
        rhs,
        1e-7_f64.max(4.0 * (lhs_q.error_bound + over_t.error_bound + head_bound)),
    ))
}

// ----------------------------------------------------- Fourier coefficient --

/// a_n by the sine-integral/sin^2 route:
/// a_n = sqrt(2) [ theta int_0^1 sin(n pi t)/t dt - (2/(n pi)) S(n pi theta/2) ],
/// with S(u) = sum_k sin^2(u/k). The half-angle argument comes out of the
/// partial summation (cos v - 1 = -2 sin^2(v/2)); the direct quadrature
/// route certifies it.
pub fn fourier_coeff_an(theta: f64, n: u32) -> Result<EvalResult> {
    if !(0.0 < theta && theta <= 1.0) {
        return Err(Error::domain("fourier_coeff_an needs theta in (0,1]"));
    }
    if n < 1 || n > 200 {
        return Err(Error::domain(
            "fourier_coeff_an implemented for 1 <= n <= 200",
        ));
    }
    let npi = n as f64 * std::f64::consts::PI;
    let breakpoints: Vec<f64> = (1..n as u64).map(|k| k as f64 / n as f64).collect();
    let si_integrand = Integrand::oscillatory(
        move |t: f64| {
            if t < 1e-12 {
                npi
            } else {
                (npi * t).sin() / t
            }
        },
    );
    let spec = QuadratureSpec {
        abs_tol: 1e-11,
        rel_tol: 1e-13,
        max_subdivisions: 20_000,
        breakpoints,
    };
    let si = quad::integrate(&si_integrand, 0.0, 1.0, &spec)?;
    let policy = TruncationPolicy::new(50_000_000, 1e-10);
    let s = eval_sin2_sum(npi * theta / 2.0, &policy)?;
    let value = std::f64::consts::SQRT_2 * (theta * si.value - 2.0 / npi * s.value);
    let bound =
        std::f64::consts::SQRT_2 * (theta * si.error_bound + 2.0 / npi * s.error_bound) + 1e-13;
    Ok(EvalResult::new(value, bound))
}

/// a_n by direct quadrature: sqrt(2) int_0^1 {theta/x} sin(n pi x) dx with
/// breakpoints at theta/k and the small-x head expanded through Hurwitz
/// zeta values.
pub fn fourier_coeff_an_direct(theta: f64, n: u32) -> Result<EvalResult> {
    if !(0.0 < theta && theta <= 1.0) {
        return Err(Error::domain(
            "fourier_coeff_an_direct needs theta in (0,1]",
        ));
    }
    let npi = n as f64 * std::f64::consts::PI;
    let k_cut = ((4.0 * n as f64 * theta).ceil() as u64).max(64);
    let x_min = theta / k_cut as f64;
    let breakpoints: Vec<f64> = (1..=k_cut).rev().map(|k| theta / k as f64).collect();
    let integrand = Integrand::piecewise(move |x: f64| {
        let v = theta / x;
        (v - v.floor()) * (npi * x).sin()
    });
    let spec = QuadratureSpec {
        abs_tol: 1e-11,
        rel_tol: 1e-13,
        max_subdivisions: 40_000,
        breakpoints,
    };
    let bulk = quad::integrate(&integrand, x_min, 1.0, &spec)?;
    // head: int_0^{x_min} {theta/x} sin(n pi x) dx with the sine expanded;
    // each odd-power moment int_0^{theta/K} {theta/x} x^p dx has the closed
    // form theta^{p+1} [ K^{-p}/p - (K^{-p} + zeta(p+1, K+1))/(p+1) ].
    let kf = k_cut as f64;
    let mut head = 0.0f64;
    let mut pw = npi; // (n pi)^{2j+1} / (2j+1)!
    let mut j = 0u32;
    let head_err;
    loop {
        let p = (2 * j + 1) as f64;
        let moment = theta.powf(p + 1.0)
            * (kf.powf(-p) / p
                - (kf.powf(-p) + hurwitz_zeta(p + 1.0, kf + 1.0)?.value) / (p + 1.0));
        let term = pw * moment;
        head += if j % 2 == 0 { term } else { -term };
        let next = pw * npi * npi / ((2 * j + 2) as f64 * (2 * j + 3) as f64);
        let next_mag = next * theta.powf(p + 3.0) * kf.powf(-p - 2.0);
        if next_mag < 1e-17 || j > 40 {
            head_err = 2.0 * next_mag + 1e-16;
            break;
        }
        pw = next;
        j += 1;
    }
    let value = std::f64::consts::SQRT_2 * (bulk.value + head);
    Ok(EvalResult::new(
        value,
        std::f64::consts::SQRT_2 * (bulk.error_bound + head_err),
    ))
}

/// Two-path agreement report for a_n.
pub fn an_check(theta: f64, n: u32) -> Result<IdentityReport> {
    let a = fourier_coeff_an(theta, n)?;
    let b = fourier_coeff_an_direct(theta, n)?;
    Ok(IdentityReport::from_real_sides(
        format!("an.t{theta}.n{n}"),
        "Fourier coefficient of the dilated fractional part, two routes",
        a.value,
        b.value,
        1e-8_f64.max(2.0 * (a.error_bound + b.error_bound)),
    ))
}

// ------------------------------------------------------- pointwise scan ----

/// Partial sums of sum mu(n) [rho(theta/(n x)) - (1/n) rho(theta/x)]
/// (fractional rho) tabulated against the indicator target: -1 on (0, theta],
/// 0 beyond.
pub fn bod_pointwise_scan(theta: f64, x: f64, n_grid: &[u64]) -> Result<Vec<(u64, f64, f64)>> {
    if !(0.0 < theta && theta <= 1.0) || !(0.0 < x && x <= 1.0) {
        return Err(Error::domain("bod_pointwise_scan needs theta, x in (0,1]"));
    }
    let &n_max = n_grid
        .iter()
        .max()
        .ok_or_else(|| Error::domain("empty N grid"))?;
    let mu = mobius_table(n_max as usize)?;
    let target = if x <= theta { -1.0 } else { 0.0 };
    let rho_theta_x = sawtooth(theta / x, SawtoothConvention::Fractional);
    let mut sorted = n_grid.to_vec();
    sorted.sort_unstable();
    let mut acc = 0.0f64;
    let mut out = Vec::with_capacity(sorted.len());
    let mut n = 1u64;
    for &stop in &sorted {
        while n <= stop {
            if mu[n as usize] != 0 {
                acc += mu[n as usize] as f64
                    * (sawtooth(theta / (n as f64 * x), SawtoothConvention::Fractional)
                        - rho_theta_x / n as f64);
            }
            n += 1;
        }
        out.push((stop, acc, target));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sawtooth_conventions() {
        assert_eq!(sawtooth(2.75, SawtoothConvention::Fractional), 0.75);
        assert_eq!(sawtooth(3.0, SawtoothConvention::Centered), 0.0);
        assert_eq!(sawtooth(0.25, SawtoothConvention::Centered), -0.25);
        assert_eq!(sawtooth(-0.25, SawtoothConvention::Fractional), 0.75);
    }

    #[test]
    fn kubert_exact_cases() {
        // m=2, x=0.3: {0.3} + {0.8} = {0.6}: -0.2 + 0.3 = 0.1
        let r = kubert_check(2, 0.3).unwrap();
        assert!(r.pass && (r.lhs.re - 0.1).abs() < 1e-14);
        let r = kubert_check(1, 0.77).unwrap();
        assert!(r.pass);
        let r = kubert_check(3, 5.0).unwrap();
        assert!(r.pass && r.lhs.re.abs() < 1e-13);
    }

    #[test]
    fn kubert_random_grid() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for m in 1..=12u64 {
            for _ in 0..100 {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let x = (state >> 11) as f64 / (1u64 << 53) as f64 * 7.0 - 3.5;
                let r = kubert_check(m, x).unwrap();
                assert!(r.pass, "m={m} x={x}: {r:?}");
            }
        }
    }

    #[test]
    fn divisor_identity_small_and_float() {
        let r = divisor_sum_identity(1.0).unwrap();
        assert!(r.pass && (r.lhs.re - 1.0).abs() < 1e-14, "{r:?}");
        let r = divisor_sum_identity(2.0).unwrap();
        assert!(r.pass, "{r:?}");
        let r = divisor_sum_identity(1000.5).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn divisor_identity_exact_recurrences_match_direct() {
        assert_eq!(divisor_sum_identity_exact(300).unwrap(), None);
        for x in [1u64, 2, 3, 17, 60, 121, 128, 255] {
            assert!(divisor_sum_identity_exact_direct(x), "direct check at {x}");
        }
    }

    #[test]
    fn beurling_mellin_reference_point() {
        // theta = 1, s = 2: both sides equal 1 - zeta(2)/2
        let r = beurling_mellin_check(1.0, 2.0).unwrap();
        let want = 1.0 - crate::specfun::zeta2() / 2.0;
        assert!(r.pass, "{r:?}");
        assert!((r.rhs.re - want).abs() < 1e-14);
        assert!((r.lhs.re - want).abs() < 1e-8, "lhs {}", r.lhs.re);
    }

    #[test]
    fn beurling_mellin_grid() {
        for &theta in &[0.25, 0.5, 1.0] {
            for &s in &[1.5, 2.0, 3.0] {
                let r = beurling_mellin_check(theta, s).unwrap();
                assert!(r.pass && r.abs_diff <= 1e-8, "theta={theta} s={s}: {r:?}");
            }
        }
    }

    #[test]
    fn zeta_sawtooth_integral_representation() {
        // zeta(s) = s/(s-1) - s int_0^inf (u - floor(u))/(u+1)^{s+1} du;
        // truncate at K and correct the tail by its mean-value estimate
        for &s in &[2.0f64, 3.0] {
            let k_end = 400.0f64;
            let spec = QuadratureSpec {
                abs_tol: 1e-11,
                rel_tol: 1e-12,
                max_subdivisions: 80_000,
                breakpoints: (1..400).map(|j| j as f64).collect(),
            };
            let integral = quad::integrate(
                &Integrand::piecewise(move |u: f64| (u - u.floor()) / (u + 1.0).powf(s + 1.0)),
                0.0,
                k_end,
                &spec,
            )
            .unwrap();
            let tail_mean = 0.5 / s * (k_end + 1.0).powf(-s);
            let rhs = s / (s - 1.0) - s * (integral.value + tail_mean);
            let lhs = riemann_zeta(s).unwrap().value;
            assert!((lhs - rhs).abs() < 1e-6, "s={s}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn rho_decomposition_cases() {
        let r = rho_decomposition_check(1.0, RhoTestFn::Linear).unwrap();
        assert!(r.pass, "{r:?}");
        let r = rho_decomposition_check(1.0, RhoTestFn::Zero).unwrap();
        assert!(r.pass && r.lhs.re == 0.0);
        let r = rho_decomposition_check(0.5, RhoTestFn::SinPi).unwrap();
        assert!(r.pass && r.abs_diff <= 1e-7, "{r:?}");
    }

    #[test]
    fn an_two_paths_agree() {
        for &(theta, n) in &[(0.5, 1u32), (1.0, 2), (0.3, 7), (0.9, 20)] {
            let r = an_check(theta, n).unwrap();
            assert!(r.pass && r.abs_diff <= 1e-8, "theta={theta} n={n}: {r:?}");
        }
    }

    #[test]
    fn an_decays_with_n() {
        // Riemann-Lebesgue trend: the coefficient envelope shrinks
        let theta = 0.5;
        let early: f64 = (1..=5u32)
            .map(|n| fourier_coeff_an(theta, n).unwrap().value.abs())
            .fold(0.0, f64::max);
        let late: f64 = (150..=160u32)
            .map(|n| fourier_coeff_an(theta, n).unwrap().value.abs())
            .fold(0.0, f64::max);
        assert!(late < early, "early {early} late {late}");
    }

    #[test]
    fn bod_scan_endpoints() {
        // x = theta: target -1 (right-closed indicator)
        let rows = bod_pointwise_scan(0.5, 0.5, &[10, 100, 1000, 10_000]).unwrap();
        assert_eq!(rows.last().unwrap().2, -1.0);
        let first_gap = (rows[0].1 - rows[0].2).abs();
        let last_gap = (rows.last().unwrap().1 - rows.last().unwrap().2).abs();
        assert!(last_gap < first_gap.max(0.5), "{rows:?}");
        let rows = bod_pointwise_scan(0.5, 0.9, &[10_000]).unwrap();
        assert_eq!(rows[0].2, 0.0);
    }

    #[test]
    fn bod_hand_case_small_n() {
        // theta = 1, x = 1: terms rho(1/n) - (1/n) rho(1); rho(1) = 0
        let rows = bod_pointwise_scan(1.0, 1.0, &[3]).unwrap();
        let by_hand = 1.0 * (0.0 - 0.0) + (-1.0) * (0.5 - 0.0) + (-1.0) * (1.0 / 3.0 - 0.0);
        assert!((rows[0].1 - by_hand).abs() < 1e-14, "{rows:?} vs {by_hand}");
    }
}
