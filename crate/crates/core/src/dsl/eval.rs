use std::collections::HashMap;

use super::ast::{Expr, Func};
use super::ExprError;

/// Read-only constants visible to every expression.
pub const CONSTANTS: [(&str, f64); 2] = [("pi", std::f64::consts::PI), ("e", std::f64::consts::E)];

pub fn constant(name: &str) -> Option<f64> {
    CONSTANTS.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
}

/// Variable name → value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Binding {
    values: HashMap<String, f64>,
}

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: impl Into<String>, value: f64) -> &mut Self {
        self.values.insert(name.into(), value);
        self
    }

    pub fn with(mut self, name: impl Into<String>, value: f64) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        constant(name).or_else(|| self.values.get(name).copied())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }
}

impl<S: Into<String>> FromIterator<(S, f64)> for Binding {
    fn from_iter<I: IntoIterator<Item = (S, f64)>>(iter: I) -> Self {
        Binding {
            values: iter.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }
}

fn domain(msg: impl Into<String>) -> ExprError {
    ExprError::MathDomain(msg.into())
}

fn finite(x: f64, what: &str) -> Result<f64, ExprError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(domain(format!("{what} is not finite")))
    }
}

/// Evaluate in IEEE double precision.
///
/// Domain violations (log of a nonpositive number, sqrt of a negative one,
/// division by zero, overflow) are errors, never NaN or infinity.
pub fn eval(e: &Expr, b: &Binding) -> Result<f64, ExprError> {
    match e {
        Expr::Num(x) => Ok(*x),
        Expr::Var(name) => b
            .get(name)
            .ok_or_else(|| ExprError::UnboundVariable(name.clone())),
        Expr::Neg(a) => Ok(-eval(a, b)?),
        Expr::Add(l, r) => finite(eval(l, b)? + eval(r, b)?, "sum"),
        Expr::Sub(l, r) => finite(eval(l, b)? - eval(r, b)?, "difference"),
        Expr::Mul(l, r) => finite(eval(l, b)? * eval(r, b)?, "product"),
        Expr::Div(l, r) => {
            let num = eval(l, b)?;
            let den = eval(r, b)?;
            if den == 0.0 {
                return Err(domain(format!("division by zero in `{e}`")));
            }
            finite(num / den, "quotient")
        }
        Expr::Pow(a, n) => {
            let x = eval(a, b)?;
            if x == 0.0 && *n < 0 {
                return Err(domain(format!("zero raised to negative power in `{e}`")));
            }
            finite(x.powi(*n), "power")
        }
        Expr::Call(f, a) => {
            let x = eval(a, b)?;
            let y = match f {
                Func::Sin => x.sin(),
                Func::Cos => x.cos(),
                Func::Tan => {
                    if x.cos() == 0.0 {
                        return Err(domain("tan at a pole"));
                    }
                    x.tan()
                }
                Func::Exp => x.exp(),
                Func::Log => {
                    if x <= 0.0 {
                        return Err(domain(format!("log of nonpositive value {x}")));
                    }
                    x.ln()
                }
                Func::Sqrt => {
                    if x < 0.0 {
                        return Err(domain(format!("sqrt of negative value {x}")));
                    }
                    x.sqrt()
                }
                Func::Sinh => x.sinh(),
                Func::Cosh => x.cosh(),
                Func::Tanh => x.tanh(),
                Func::Abs => x.abs(),
            };
            finite(y, f.name())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;

    #[test]
    fn lapse_value() {
        let e = parse("-(1 - 2*M/r)").unwrap();
        let b = Binding::new().with("M", 1.0).with("r", 4.0);
        assert_eq!(eval(&e, &b).unwrap(), -0.5);
    }

    #[test]
    fn sine_squared_at_right_angle() {
        let e = parse("sin(theta)^2").unwrap();
        let b = Binding::new().with("theta", std::f64::consts::FRAC_PI_2);
        assert_eq!(eval(&e, &b).unwrap(), 1.0);
    }

    #[test]
    fn horizon_is_a_domain_error() {
        let e = parse("1/(1 - 2*M/r)").unwrap();
        let b = Binding::new().with("M", 1.0).with("r", 2.0);
        assert!(matches!(eval(&e, &b), Err(ExprError::MathDomain(_))));
    }

    #[test]
    fn domain_errors() {
        let b = Binding::new().with("x", -1.0);
        for src in ["log(x)", "sqrt(x)", "log(0)", "0^-1", "exp(1000)"] {
            let e = parse(src).unwrap();
            assert!(
                matches!(eval(&e, &b), Err(ExprError::MathDomain(_))),
                "{src}"
            );
        }
    }

    #[test]
    fn unbound_variable() {
        let e = parse("x + y").unwrap();
        let b = Binding::new().with("x", 1.0);
        assert_eq!(
            eval(&e, &b),
            Err(ExprError::UnboundVariable("y".to_string()))
        );
    }

    #[test]
    fn constants_cannot_be_shadowed() {
        let e = parse("2*pi + e").unwrap();
        let b = Binding::new().with("pi", 3.0);
        let want = 2.0 * std::f64::consts::PI + std::f64::consts::E;
        assert_eq!(eval(&e, &b).unwrap(), want);
    }
}
