use num_complex::Complex64;

/// Outcome of one verified identity: both sides, their distance, the
/// tolerance it was held to, and where the identity comes from.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub identity_id: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub paper_anchor: String,
    /// Free-form extra measurements (term counts, resolved variants, ...).
    pub notes: String,
}

impl IdentityReport {
    pub fn from_sides(
        id: impl Into<String>,
        anchor: impl Into<String>,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
    ) -> Self {
        let abs_diff = (lhs - rhs).norm();
        IdentityReport {
            identity_id: id.into(),
            lhs,
            rhs,
            abs_diff,
            tolerance,
            pass: abs_diff <= tolerance,
            paper_anchor: anchor.into(),
            notes: String::new(),
        }
    }

    pub fn from_real_sides(
        id: impl Into<String>,
        anchor: impl Into<String>,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    ) -> Self {
        Self::from_sides(
            id,
            anchor,
            Complex64::new(lhs, 0.0),
            Complex64::new(rhs, 0.0),
            tolerance,
        )
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes = note.into();
        self
    }

    /// 15 significant digits, scientific fallback; '.' decimal separator.
    pub fn fmt_float(x: f64) -> String {
        if x == 0.0 {
            return "0".to_string();
        }
        let a = x.abs();
        if (1e-4..1e15).contains(&a) {
            let digits = 14 - a.log10().floor() as i32;
            let s = format!("{:.*}", digits.clamp(0, 17) as usize, x);
            trim_zeros(&s)
        } else {
            format!("{x:.14e}")
        }
    }

    fn fmt_side(z: Complex64) -> String {
        if z.im == 0.0 {
            Self::fmt_float(z.re)
        } else if z.im >= 0.0 {
            format!("{}+{}i", Self::fmt_float(z.re), Self::fmt_float(z.im))
        } else {
            format!("{}-{}i", Self::fmt_float(z.re), Self::fmt_float(-z.im))
        }
    }

    pub fn csv_header() -> &'static str {
        "identity_id,lhs,rhs,abs_diff,tolerance,pass,paper_anchor"
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.identity_id,
            Self::fmt_side(self.lhs),
            Self::fmt_side(self.rhs),
            Self::fmt_float(self.abs_diff),
            Self::fmt_float(self.tolerance),
            self.pass,
            csv_quote(&self.paper_anchor),
        )
    }

    pub fn to_jsonl(&self) -> String {
        format!(
            "{{\"identity_id\":\"{}\",\"lhs\":{},\"rhs\":{},\"abs_diff\":{},\"tolerance\":{},\"pass\":{},\"paper_anchor\":\"{}\",\"notes\":\"{}\"}}",
            json_escape(&self.identity_id),
            json_complex(self.lhs),
            json_complex(self.rhs),
            json_num(self.abs_diff),
            json_num(self.tolerance),
            self.pass,
            json_escape(&self.paper_anchor),
            json_escape(&self.notes),
        )
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let t = s.trim_end_matches('0');
    t.trim_end_matches('.').to_string()
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn json_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.17e}")
    } else {
        "null".to_string()
    }
}

fn json_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        json_num(z.re)
    } else {
        format!("[{},{}]", json_num(z.re), json_num(z.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        let r = IdentityReport::from_real_sides("t", "a", 1.0, 1.0 + 1e-9, 1e-8);
        assert!(r.pass);
        let r = IdentityReport::from_real_sides("t", "a", 1.0, 1.0 + 1e-7, 1e-8);
        assert!(!r.pass);
    }

    #[test]
    fn csv_row_is_stable() {
        let r = IdentityReport::from_real_sides("k", "eq", 0.5, 0.5, 1e-13);
        assert_eq!(r.to_csv_row(), "k,0.5,0.5,0,1.00000000000000e-13,true,eq");
    }

    #[test]
    fn complex_sides_render() {
        let r = IdentityReport::from_sides(
            "c",
            "eq",
            Complex64::new(1.0, -2.0),
            Complex64::new(1.0, -2.0),
            1e-12,
        );
        assert!(r.to_csv_row().contains("1-2i"));
    }
}
