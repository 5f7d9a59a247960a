use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Bernoulli numbers B_0..B_30 as (numerator, denominator), standard
/// convention (B_1 = -1/2). Everything above index 30 is out of scope.
pub const BERNOULLI: [(i64, i64); 31] = [
    (1, 1),
    (-1, 2),
    (1, 6),
    (0, 1),
    (-1, 30),
    (0, 1),
    (1, 42),
    (0, 1),
    (-1, 30),
    (0, 1),
    (5, 66),
    (0, 1),
    (-691, 2730),
    (0, 1),
    (7, 6),
    (0, 1),
    (-3617, 510),
    (0, 1),
    (43867, 798),
    (0, 1),
    (-174611, 330),
    (0, 1),
    (854513, 138),
    (0, 1),
    (-236364091, 2730),
    (0, 1),
    (8553103, 6),
    (0, 1),
    (-23749461029, 870),
    (0, 1),
    (8615841276005, 14322),
];

pub const MAX_BERNOULLI_DEGREE: u32 = 30;

/// B_r as f64.
pub fn bernoulli_number(r: u32) -> Result<f64> {
    if r > MAX_BERNOULLI_DEGREE {
        return Err(Error::domain(format!(
            "Bernoulli index {r} exceeds supported maximum {MAX_BERNOULLI_DEGREE}"
        )));
    }
    let (n, d) = BERNOULLI[r as usize];
    Ok(n as f64 / d as f64)
}

fn binomial_i128(n: u32, k: u32) -> i128 {
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// Bernoulli polynomial B_r(x), standard convention
/// (t e^{xt}/(e^t - 1) = sum B_r(x) t^r / r!), exact coefficients.
pub fn bernoulli_poly(r: u32, x: f64) -> Result<f64> {
    if r > MAX_BERNOULLI_DEGREE {
        return Err(Error::domain(format!(
            "Bernoulli degree {r} exceeds supported maximum {MAX_BERNOULLI_DEGREE}"
        )));
    }
    // B_r(x) = sum_k C(r,k) B_k x^{r-k}
    let mut acc = 0.0;
    for k in 0..=r {
        let (bn, bd) = BERNOULLI[k as usize];
        if bn == 0 {
            continue;
        }
        let coeff = binomial_i128(r, k) as f64 * bn as f64 / bd as f64;
        acc += coeff * x.powi((r - k) as i32);
    }
    Ok(acc)
}

/// Exact rational evaluation of B_r(x), used by the Kubert distribution tests.
pub fn bernoulli_poly_rational(r: u32, x: &BigRational) -> Result<BigRational> {
    if r > MAX_BERNOULLI_DEGREE {
        return Err(Error::domain(format!(
            "Bernoulli degree {r} exceeds supported maximum {MAX_BERNOULLI_DEGREE}"
        )));
    }
    let mut acc = BigRational::from_integer(BigInt::from(0));
    let mut xpow = BigRational::from_integer(BigInt::from(1));
    // Horner from the constant term upward: accumulate C(r,k) B_k x^{r-k}
    // by walking k downward so xpow tracks x^{r-k}.
    for k in (0..=r).rev() {
        let (bn, bd) = BERNOULLI[k as usize];
        if bn != 0 {
            let coeff = BigRational::new(
                BigInt::from(binomial_i128(r, k)) * BigInt::from(bn),
                BigInt::from(bd),
            );
            acc += coeff * &xpow;
        }
        xpow *= x;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn b1_is_x_minus_half() {
        assert_eq!(bernoulli_poly(1, 0.25).unwrap(), -0.25);
        assert_eq!(bernoulli_poly(1, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn b2_at_zero_is_one_sixth() {
        // 2! B_2(x) = x^2 - x + 1/6 in the generating-function normalization
        // without factorials; standard B_2(0) = 1/6 directly.
        let v = bernoulli_poly(2, 0.0).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-16);
        let r = bernoulli_poly_rational(2, &rat(0, 1)).unwrap();
        assert_eq!(r, rat(1, 6));
    }

    #[test]
    fn degree_31_rejected() {
        assert!(bernoulli_poly(31, 0.0).is_err());
    }

    #[test]
    fn rational_matches_float() {
        for r in 0..=8u32 {
            for num in [-3i64, 1, 2, 5] {
                let x = rat(num, 7);
                let exact = bernoulli_poly_rational(r, &x).unwrap();
                let approx = bernoulli_poly(r, num as f64 / 7.0).unwrap();
                let exact_f = exact.numer().to_string().parse::<f64>().unwrap()
                    / exact.denom().to_string().parse::<f64>().unwrap();
                assert!(
                    (exact_f - approx).abs() <= 1e-12 * (1.0 + exact_f.abs()),
                    "r={r} x={num}/7: {exact_f} vs {approx}"
                );
            }
        }
    }
}
