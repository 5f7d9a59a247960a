use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact value in the rational span of {1, log p (p prime), zeta(2)}.
/// Logarithms of composite integers are decomposed into prime logs at
/// construction, so equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicConstant {
    pub rational: BigRational,
    /// prime -> coefficient, no zero entries
    pub log_coeffs: BTreeMap<u64, BigRational>,
    pub zeta2_coeff: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl SymbolicConstant {
    pub fn zero() -> Self {
        SymbolicConstant {
            rational: BigRational::zero(),
            log_coeffs: BTreeMap::new(),
            zeta2_coeff: BigRational::zero(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        SymbolicConstant {
            rational: r,
            ..Self::zero()
        }
    }

    /// Add coeff * log(k) for a positive integer k, decomposed into primes.
    pub fn add_log_of_integer(&mut self, k: u64, coeff: &BigRational) -> Result<()> {
        if k == 0 {
            return Err(Error::domain("log of zero"));
        }
        if k == 1 || coeff.is_zero() {
            return Ok(());
        }
        for (p, e) in crate::specfun::factorize(k)? {
            let add = coeff * BigRational::from_integer(BigInt::from(e));
            let slot = self.log_coeffs.entry(p).or_insert_with(BigRational::zero);
            *slot += add;
        }
        self.canonicalize();
        Ok(())
    }

    pub fn add_zeta2(&mut self, coeff: BigRational) {
        self.zeta2_coeff += coeff;
    }

    pub fn add_rational(&mut self, r: BigRational) {
        self.rational += r;
    }

    fn canonicalize(&mut self) {
        self.log_coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, other: &SymbolicConstant) -> SymbolicConstant {
        let mut out = self.clone();
        out.rational += &other.rational;
        out.zeta2_coeff += &other.zeta2_coeff;
        for (p, c) in &other.log_coeffs {
            let slot = out.log_coeffs.entry(*p).or_insert_with(BigRational::zero);
            *slot += c;
        }
        out.canonicalize();
        out
    }

    pub fn scale(&self, factor: &BigRational) -> SymbolicConstant {
        let mut out = SymbolicConstant {
            rational: &self.rational * factor,
            log_coeffs: self
                .log_coeffs
                .iter()
                .map(|(p, c)| (*p, c * factor))
                .collect(),
            zeta2_coeff: &self.zeta2_coeff * factor,
        };
        out.canonicalize();
        out
    }

    /// Floating value with a rounding-level error estimate.
    pub fn to_f64(&self) -> (f64, f64) {
        let mut acc = rational_to_f64(&self.rational);
        let mut mag = acc.abs();
        for (p, c) in &self.log_coeffs {
            let term = rational_to_f64(c) * (*p as f64).ln();
            acc += term;
            mag += term.abs();
        }
        let z2 = rational_to_f64(&self.zeta2_coeff) * crate::specfun::zeta2();
        acc += z2;
        mag += z2.abs();
        (acc, 8.0 * f64::EPSILON * (1.0 + mag))
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom() == &BigInt::from(1) {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for SymbolicConstant {
    /// Renders like "5/2 - log(2) - zeta2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut push = |f: &mut fmt::Formatter<'_>,
                        coeff: &BigRational,
                        symbol: Option<String>|
         -> fmt::Result {
            if coeff.is_zero() {
                return Ok(());
            }
            let neg = coeff.is_negative();
            let abs = coeff.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match symbol {
                None => write!(f, "{}", fmt_coeff(&abs))?,
                Some(sym) => {
                    if abs == BigRational::from_integer(BigInt::from(1)) {
                        write!(f, "{sym}")?;
                    } else {
                        write!(f, "{}*{sym}", fmt_coeff(&abs))?;
                    }
                }
            }
            Ok(())
        };
        push(f, &self.rational, None)?;
        let logs = self.log_coeffs.clone();
        for (p, c) in &logs {
            push(f, c, Some(format!("log({p})")))?;
        }
        push(f, &self.zeta2_coeff.clone(), Some("zeta2".to_string()))?;
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_decomposition_is_canonical() {
        // log(12) = 2 log(2) + log(3), and log(4) + log(3) agrees exactly
        let mut a = SymbolicConstant::zero();
        a.add_log_of_integer(12, &rat(1, 1)).unwrap();
        let mut b = SymbolicConstant::zero();
        b.add_log_of_integer(4, &rat(1, 1)).unwrap();
        b.add_log_of_integer(3, &rat(1, 1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.log_coeffs[&2], rat(2, 1));
        assert_eq!(a.log_coeffs[&3], rat(1, 1));
    }

    #[test]
    fn display_matches_expected_form() {
        let mut c = SymbolicConstant::from_rational(rat(5, 2));
        c.add_log_of_integer(2, &rat(-1, 1)).unwrap();
        c.add_zeta2(rat(-1, 1));
        assert_eq!(c.to_string(), "5/2 - log(2) - zeta2");
        let mut c = SymbolicConstant::from_rational(rat(25, 6));
        c.add_log_of_integer(2, &rat(1, 1)).unwrap();
        c.add_log_of_integer(3, &rat(-2, 1)).unwrap();
        c.add_zeta2(rat(-3, 2));
        assert_eq!(c.to_string(), "25/6 + log(2) - 2*log(3) - 3/2*zeta2");
    }

    #[test]
    fn numeric_value_round_trip() {
        let mut c = SymbolicConstant::from_rational(rat(5, 2));
        c.add_log_of_integer(2, &rat(-1, 1)).unwrap();
        c.add_zeta2(rat(-1, 1));
        let (v, e) = c.to_f64();
        let want = 2.5 - std::f64::consts::LN_2 - crate::specfun::zeta2();
        assert!((v - want).abs() <= e + 1e-15);
        assert!((v - 0.1619187).abs() < 1e-7);
    }
}
