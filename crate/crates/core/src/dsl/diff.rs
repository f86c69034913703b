//! Symbolic differentiation with a conservative simplifier.
//!
//! The simplifier only applies identity/annihilator rules and folds constant
//! subtrees. It knows no trigonometric identities, so two correct derivatives
//! may differ structurally; compare them numerically.

use super::ast::{Expr, Func};
use super::eval::{eval, Binding};

fn fold(e: Expr) -> Expr {
    // Only fold when the constant subtree evaluates cleanly.
    match eval(&e, &Binding::new()) {
        Ok(x) if e.free_vars().is_empty() => Expr::Num(x),
        _ => e,
    }
}

pub(crate) fn neg(a: Expr) -> Expr {
    match a {
        Expr::Num(x) => Expr::Num(-x),
        Expr::Neg(inner) => *inner,
        a => Expr::Neg(Box::new(a)),
    }
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, b) if b.is_zero() => a,
        (a, b) if a.is_zero() => b,
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x + y),
        (a, b) => Expr::Add(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, b) if b.is_zero() => a,
        (a, b) if a.is_zero() => neg(b),
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x - y),
        (a, b) => Expr::Sub(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, b) if a.is_zero() || b.is_zero() => Expr::Num(0.0),
        (a, b) if a.is_one() => b,
        (a, b) if b.is_one() => a,
        (Expr::Num(x), Expr::Num(y)) => Expr::Num(x * y),
        (a, b) => Expr::Mul(Box::new(a), Box::new(b)),
    }
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (a, b) if b.is_one() => a,
        (a, b) if a.is_zero() && !b.is_zero() => Expr::Num(0.0),
        (a, b) => fold(Expr::Div(Box::new(a), Box::new(b))),
    }
}

pub(crate) fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => Expr::Num(1.0),
        1 => a,
        _ => fold(Expr::Pow(Box::new(a), n)),
    }
}

pub(crate) fn call(f: Func, a: Expr) -> Expr {
    fold(Expr::Call(f, Box::new(a)))
}

/// Rebuild `e` bottom-up through the simplifying constructors.
pub fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) | Expr::Var(_) => e.clone(),
        Expr::Neg(a) => neg(simplify(a)),
        Expr::Add(a, b) => add(simplify(a), simplify(b)),
        Expr::Sub(a, b) => sub(simplify(a), simplify(b)),
        Expr::Mul(a, b) => mul(simplify(a), simplify(b)),
        Expr::Div(a, b) => div(simplify(a), simplify(b)),
        Expr::Pow(a, n) => pow(simplify(a), *n),
        Expr::Call(f, a) => call(*f, simplify(a)),
    }
}

/// Exact symbolic derivative `∂e/∂var`, lightly simplified.
pub fn differentiate(e: &Expr, var: &str) -> Expr {
    match e {
        Expr::Num(_) => Expr::Num(0.0),
        Expr::Var(v) => Expr::Num(if v == var { 1.0 } else { 0.0 }),
        Expr::Neg(a) => neg(differentiate(a, var)),
        Expr::Add(a, b) => add(differentiate(a, var), differentiate(b, var)),
        Expr::Sub(a, b) => sub(differentiate(a, var), differentiate(b, var)),
        Expr::Mul(a, b) => add(
            mul(differentiate(a, var), simplify(b)),
            mul(simplify(a), differentiate(b, var)),
        ),
        Expr::Div(a, b) => {
            let da = differentiate(a, var);
            let db = differentiate(b, var);
            if db.is_zero() {
                div(da, simplify(b))
            } else {
                div(
                    sub(mul(da, simplify(b)), mul(simplify(a), db)),
                    pow(simplify(b), 2),
                )
            }
        }
        Expr::Pow(a, n) => {
            if *n == 0 {
                return Expr::Num(0.0);
            }
            let da = differentiate(a, var);
            mul(mul(Expr::Num(*n as f64), pow(simplify(a), n - 1)), da)
        }
        Expr::Call(f, a) => {
            let da = differentiate(a, var);
            if da.is_zero() {
                return Expr::Num(0.0);
            }
            let u = simplify(a);
            let outer = match f {
                Func::Sin => call(Func::Cos, u),
                Func::Cos => neg(call(Func::Sin, u)),
                Func::Tan => div(Expr::Num(1.0), pow(call(Func::Cos, u), 2)),
                Func::Exp => call(Func::Exp, u),
                Func::Log => div(Expr::Num(1.0), u),
                Func::Sqrt => div(Expr::Num(1.0), mul(Expr::Num(2.0), call(Func::Sqrt, u))),
                Func::Sinh => call(Func::Cosh, u),
                Func::Cosh => call(Func::Sinh, u),
                Func::Tanh => sub(Expr::Num(1.0), pow(call(Func::Tanh, u), 2)),
                Func::Abs => div(u.clone(), call(Func::Abs, u)),
            };
            mul(outer, da)
        }
    }
}
