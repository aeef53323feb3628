//! Verification reports and JSON rendering of floating-point numbers.

use num_complex::Complex64;
use serde_json::{json, Number, Value};

/// A decimal with 17 significant digits; non-finite values become strings.
pub fn json_f64(x: f64) -> Value {
    if !x.is_finite() {
        return Value::String(x.to_string());
    }
    let text = format!("{x:.16e}");
    match text.parse::<Number>() {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(text),
    }
}

pub fn json_complex(z: Complex64) -> Value {
    json!({"re": json_f64(z.re), "im": json_f64(z.im)})
}

/// Two computed sides of a claimed identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Report {
    pub fn new(name: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        let abs_err = (lhs - rhs).norm();
        Report { name: name.into(), lhs, rhs, abs_err, tol, pass: abs_err < tol }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "lhs": json_complex(self.lhs),
            "rhs": json_complex(self.rhs),
            "abs_err": json_f64(self.abs_err),
            "tol": json_f64(self.tol),
            "pass": self.pass,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        let v = json_f64(std::f64::consts::PI);
        assert_eq!(v.to_string(), "3.1415926535897931e+0");
        assert_eq!(json_f64(f64::NAN), Value::String("NaN".into()));
    }

    #[test]
    fn report_pass_flag() {
        let r = Report::new("x", Complex64::new(1.0, 0.0), Complex64::new(1.0, 1e-12), 1e-10);
        assert!(r.pass);
        assert_eq!(r.to_json()["pass"], Value::Bool(true));
    }
}
