//! Minimal double-double arithmetic (~31 significant digits).
//!
//! Used where a straight f64 series would lose accuracy to cancellation:
//! Bessel power series in the mid-range, and the log/gamma prefactors of
//! Y0 and K0. Only the handful of operations those paths need is provided.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

pub const DD_GAMMA: Dd = Dd {
    hi: 0.5772156649015329,
    lo: -4.942915152430645e-18,
};
pub const DD_PI: Dd = Dd {
    hi: 3.141592653589793,
    lo: 1.2246467991473532e-16,
};
pub const DD_TWO_PI: Dd = Dd {
    hi: 6.283185307179586,
    lo: 2.4492935982947064e-16,
};
pub const DD_PI_OVER_4: Dd = Dd {
    hi: 0.7853981633974483,
    lo: 3.061616997868383e-17,
};
pub const DD_THREE_PI_OVER_4: Dd = Dd {
    hi: 2.356194490192345,
    lo: 9.184850993605148e-17,
};
pub const DD_LN2: Dd = Dd {
    hi: 0.6931471805599453,
    lo: 2.3190468138462996e-17,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> f64 {
        (self.hi + self.lo).abs()
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, b: Dd) -> Dd {
        let (s1, e1) = two_sum(self.hi, b.hi);
        let (s2, e2) = two_sum(self.lo, b.lo);
        let (s1, e1) = quick_two_sum(s1, e1 + s2);
        let (hi, lo) = quick_two_sum(s1, e1 + e2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, b: Dd) -> Dd {
        self.add(b.neg())
    }

    pub fn add_f64(self, b: f64) -> Dd {
        let (s1, e1) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s1, e1 + self.lo);
        Dd { hi, lo }
    }

    pub fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Dd { hi, lo }
    }

    pub fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self.sub(b.mul_f64(q1));
        let q2 = r.hi / b.hi;
        let r = r.sub(b.mul_f64(q2));
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    pub fn div_f64(self, b: f64) -> Dd {
        self.div(Dd::from_f64(b))
    }

    /// x * x for an exact f64 input; both products are exact.
    pub fn sqr_f64(x: f64) -> Dd {
        let (p, e) = two_prod(x, x);
        Dd { hi: p, lo: e }
    }

    /// exp(x) for |x| < 300, accurate to ~1e-31 relative.
    pub fn exp(self) -> Dd {
        let k = (self.to_f64() / DD_LN2.hi).round();
        let t = self.sub(DD_LN2.mul_f64(k));
        // Taylor on |t| <= ln2/2
        let mut sum = Dd::ONE;
        let mut term = Dd::ONE;
        let mut n = 1.0;
        loop {
            term = term.mul(t).div_f64(n);
            sum = sum.add(term);
            if term.abs() < 1e-35 * sum.abs().max(1.0) || n > 40.0 {
                break;
            }
            n += 1.0;
        }
        let scale = (k as i32).min(1000).max(-1000);
        let factor = f64::powi(2.0, scale);
        Dd {
            hi: sum.hi * factor,
            lo: sum.lo * factor,
        }
    }

    /// Natural log of a positive value, via one Newton step off the f64 log.
    pub fn ln(self) -> Dd {
        let x0 = self.hi.ln();
        let r = self.mul(Dd::from_f64(-x0).exp());
        // ln(self) = x0 + ln(r), r = 1 + d with |d| ~ 1e-16
        let d = r.sub(Dd::ONE);
        let corr = d.sub(d.mul(d).div_f64(2.0));
        Dd::from_f64(x0).add(corr)
    }
}

/// cos taken of a double-double phase: cos(hi) - lo*sin(hi).
#[inline]
pub fn cos_dd(phase: Dd) -> f64 {
    phase.hi.cos() - phase.lo * phase.hi.sin()
}

/// sin taken of a double-double phase.
#[inline]
pub fn sin_dd(phase: Dd) -> f64 {
    phase.hi.sin() + phase.lo * phase.hi.cos()
}
