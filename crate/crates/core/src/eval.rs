use num_complex::Complex64;

/// A real value paired with a certified absolute error bound.
///
/// Every numeric routine in the crate that truncates a series or an integral
/// returns one of these; `error_bound` is an upper bound produced by the
/// algorithm's own tail or remainder estimate, never a guess.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub error_bound: f64,
}

impl EvalResult {
    pub fn new(value: f64, error_bound: f64) -> Self {
        debug_assert!(error_bound >= 0.0);
        EvalResult { value, error_bound }
    }

    pub fn exact(value: f64) -> Self {
        EvalResult {
            value,
            error_bound: 0.0,
        }
    }
}

/// Complex counterpart of [`EvalResult`]; the bound is on `|computed - true|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CEvalResult {
    pub value: Complex64,
    pub error_bound: f64,
}

impl CEvalResult {
    pub fn new(value: Complex64, error_bound: f64) -> Self {
        debug_assert!(error_bound >= 0.0);
        CEvalResult { value, error_bound }
    }

    pub fn re(&self) -> EvalResult {
        EvalResult {
            value: self.value.re,
            error_bound: self.error_bound,
        }
    }
}

impl From<EvalResult> for CEvalResult {
    fn from(r: EvalResult) -> Self {
        CEvalResult {
            value: Complex64::new(r.value, 0.0),
            error_bound: r.error_bound,
        }
    }
}
