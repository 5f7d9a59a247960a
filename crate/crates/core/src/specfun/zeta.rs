use crate::error::{Error, Result};
use crate::eval::EvalResult;
use crate::specfun::bernoulli::BERNOULLI;

/// Which zeta-type function [`zeta_family`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaKind {
    Riemann,
    Eta,
    Hurwitz,
}

const EM_ORDER: usize = 5; // Bernoulli corrections through B_10

/// Hurwitz zeta(s, x) for real s in (-2, 1) u (1, inf) and x > 0, by
/// Euler-Maclaurin with order-10 correction. The bound is the first
/// omitted correction term, valid for real s.
pub fn hurwitz_zeta(s: f64, x: f64) -> Result<EvalResult> {
    if x <= 0.0 {
        return Err(Error::domain(format!("hurwitz zeta needs x > 0, got {x}")));
    }
    if s == 1.0 {
        return Err(Error::pole("zeta(s, x) at s = 1"));
    }
    if s <= -2.0 {
        return Err(Error::domain(format!(
            "Euler-Maclaurin continuation implemented for s > -2, got {s}"
        )));
    }
    // Push the expansion point far enough out that corrections decay fast.
    let target = 16.0 + 0.6 * s.abs();
    let n = if x >= target {
        0
    } else {
        (target - x).ceil() as usize
    };
    let mut head = 0.0f64;
    let mut head_abs = 0.0f64;
    for k in 0..n {
        let t = (x + k as f64).powf(-s);
        head += t;
        head_abs += t.abs();
    }
    let y = x + n as f64;
    let mut acc = head + y.powf(1.0 - s) / (s - 1.0) + 0.5 * y.powf(-s);
    // rising factors s (s+1) ... ; term_j uses 2j-1 of them times y^{-s-2j+1}
    let mut rising = s;
    let mut ypow = y.powf(-s - 1.0);
    let y2 = y * y;
    let mut last_term = 0.0f64;
    for j in 1..=EM_ORDER {
        let (bn, bd) = BERNOULLI[2 * j];
        let fact: f64 = (1..=2 * j).map(|i| i as f64).product();
        let term = (bn as f64 / bd as f64) / fact * rising * ypow;
        acc += term;
        last_term = term;
        // extend rising product by two factors and ypow by y^-2
        rising *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        ypow /= y2;
    }
    // First omitted term bounds the remainder for real s > -(2J+1).
    let (bn, bd) = BERNOULLI[2 * EM_ORDER + 2];
    let fact: f64 = (1..=(2 * EM_ORDER + 2)).map(|i| i as f64).product();
    let remainder = ((bn as f64 / bd as f64) / fact * rising * ypow).abs();
    let rounding = (head_abs + acc.abs() + 1.0) * 4.0 * f64::EPSILON * (n as f64 + 8.0).sqrt();
    let _ = last_term;
    Ok(EvalResult::new(acc, remainder + rounding))
}

/// Riemann zeta for real s (continuation valid down to s > -2, pole at 1).
pub fn riemann_zeta(s: f64) -> Result<EvalResult> {
    hurwitz_zeta(s, 1.0)
}

/// Dirichlet eta(s) = (1 - 2^{1-s}) zeta(s) = sum (-1)^{n-1} n^{-s}, s > 0.
pub fn eta(s: f64) -> Result<EvalResult> {
    if s <= 0.0 {
        return Err(Error::domain(format!("eta implemented for s > 0, got {s}")));
    }
    if s == 1.0 {
        return Ok(EvalResult::new(std::f64::consts::LN_2, 2.0 * f64::EPSILON));
    }
    let z = riemann_zeta(s)?;
    let factor = 1.0 - f64::powf(2.0, 1.0 - s);
    let value = factor * z.value;
    Ok(EvalResult::new(
        value,
        factor.abs() * z.error_bound + 4.0 * f64::EPSILON * value.abs(),
    ))
}

/// Dispatcher matching the workbench's zeta surface: riemann and hurwitz
/// reject s = 1 as a pole, eta needs s > 0, hurwitz needs x > 0.
pub fn zeta_family(kind: ZetaKind, s: f64, x: Option<f64>) -> Result<EvalResult> {
    match kind {
        ZetaKind::Riemann => riemann_zeta(s),
        ZetaKind::Eta => eta(s),
        ZetaKind::Hurwitz => {
            let x = x.ok_or_else(|| Error::domain("hurwitz zeta needs the x argument"))?;
            hurwitz_zeta(s, x)
        }
    }
}

/// zeta(2) = pi^2/6.
pub fn zeta2() -> f64 {
    std::f64::consts::PI * std::f64::consts::PI / 6.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_two_is_pi2_over_6() {
        let z = riemann_zeta(2.0).unwrap();
        assert!((z.value - zeta2()).abs() < 1e-13);
        assert!((z.value - zeta2()).abs() <= z.error_bound + 1e-13);
    }

    #[test]
    fn eta_one_is_ln2() {
        assert!((eta(1.0).unwrap().value - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_at_one_matches_riemann() {
        let a = hurwitz_zeta(2.0, 1.0).unwrap().value;
        assert!((a - zeta2()).abs() < 1e-13);
    }

    #[test]
    fn zeta_half_reference() {
        // zeta(1/2) = -1.4603545088095868...
        let z = riemann_zeta(0.5).unwrap();
        assert!((z.value + 1.4603545088095868).abs() < 1e-12, "{}", z.value);
    }

    #[test]
    fn zeta_negative_reference() {
        // zeta(-1/2) = -0.2078862249773545...
        let z = riemann_zeta(-0.5).unwrap();
        assert!((z.value + 0.2078862249773545).abs() < 1e-12);
        // zeta(-1) = -1/12 via continuation
        let z = riemann_zeta(-1.0).unwrap();
        assert!((z.value + 1.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn functional_equation_in_continuation_region() {
        // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), tying the
        // Euler-Maclaurin continuation to the gamma routine
        for &s in &[-0.5f64, -1.5, 0.5] {
            let lhs = riemann_zeta(s).unwrap().value;
            let gamma = crate::specfun::gamma_real(1.0 - s).unwrap().value;
            let rhs = f64::powf(2.0, s)
                * std::f64::consts::PI.powf(s - 1.0)
                * (std::f64::consts::PI * s / 2.0).sin()
                * gamma
                * riemann_zeta(1.0 - s).unwrap().value;
            assert!(
                (lhs - rhs).abs() < 1e-12 * (1.0 + lhs.abs()),
                "s={s}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn hurwitz_brute_force_cross_check() {
        // s > 1 so the defining series converges: compare against a long sum.
        for &(s, x) in &[(1.5, 0.3), (2.0, 0.7), (3.0, 1.9)] {
            let mut brute = 0.0;
            for k in 0..4_000_000u64 {
                brute += (x + k as f64).powf(-s);
            }
            // integral tail of the brute-force sum
            let y = x + 4_000_000.0;
            brute += y.powf(1.0 - s) / (s - 1.0);
            let z = hurwitz_zeta(s, x).unwrap();
            assert!(
                (z.value - brute).abs() < 1e-7,
                "s={s} x={x}: {} vs {brute}",
                z.value
            );
        }
    }

    #[test]
    fn poles_and_domains() {
        assert!(matches!(riemann_zeta(1.0), Err(Error::Pole { .. })));
        assert!(matches!(hurwitz_zeta(2.0, -1.0), Err(Error::Domain { .. })));
        assert!(matches!(eta(-0.5), Err(Error::Domain { .. })));
        assert!(matches!(riemann_zeta(-2.5), Err(Error::Domain { .. })));
    }

    #[test]
    fn large_s_for_tail_corrections() {
        // zeta(40, 65) ~ 65^-40/ (..) tiny but finite; just needs to not blow up
        let z = hurwitz_zeta(40.0, 65.0).unwrap();
        assert!(z.value > 0.0 && z.value < 1e-70);
    }
}
