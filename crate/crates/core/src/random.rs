//! Seeded random instances for property tests and benchmarks.

use rand::Rng;

use crate::dsl::{Expr, Func};
use crate::form::{signature_relative, SymmetricForm4, Vec4};

/// Timelike samples must satisfy `g(v,v) < −TIMELIKE_MARGIN · ‖g‖∞ · ‖v‖²`.
pub const TIMELIKE_MARGIN: f64 = 1e-3;

fn random_matrix<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 4]; 4] {
    std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-1.0..1.0)))
}

/// Smallest accepted `|λ|min / |λ|max` of a generated form. Keeps the
/// timelike cone wide enough for [`timelike`] to terminate quickly.
pub const MIN_CONDITION: f64 = 1e-2;

/// `Pᵀ D P` with `D` of the requested sign pattern and `P = I + 0.5·noise`.
fn congruent_form<R: Rng + ?Sized>(rng: &mut R, signs: [f64; 4]) -> SymmetricForm4 {
    loop {
        let d = SymmetricForm4::diag(std::array::from_fn(|i| signs[i] * rng.gen_range(0.2..3.0)));
        let noise = random_matrix(rng);
        let p: [[f64; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 } + 0.5 * noise[i][j])
        });
        let f = d.congruent(&p);
        let expected = if signs[0] < 0.0 { 1 } else { 0 };
        let sig = signature_relative(&f, MIN_CONDITION);
        if sig.n_negative == expected && sig.n_zero == 0 {
            return f;
        }
    }
}

/// Random form of signature (1,0,3).
pub fn lorentzian<R: Rng + ?Sized>(rng: &mut R) -> SymmetricForm4 {
    congruent_form(rng, [-1.0, 1.0, 1.0, 1.0])
}

/// Random positive definite form.
pub fn riemannian<R: Rng + ?Sized>(rng: &mut R) -> SymmetricForm4 {
    congruent_form(rng, [1.0; 4])
}

/// Rejection-sample a timelike vector from the unit cube.
pub fn timelike<R: Rng + ?Sized>(rng: &mut R, g: &SymmetricForm4) -> Vec4 {
    let scale = g.max_abs();
    loop {
        let v = Vec4(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        if g.eval(&v, &v) < -TIMELIKE_MARGIN * scale * v.dot(&v) {
            return v;
        }
    }
}

/// Random invertible matrix `I + 0.5·noise`, with its determinant away from 0.
pub fn invertible<R: Rng + ?Sized>(rng: &mut R) -> [[f64; 4]; 4] {
    loop {
        let noise = random_matrix(rng);
        let p: [[f64; 4]; 4] = std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { 1.0 } else { 0.0 } + 0.5 * noise[i][j])
        });
        if crate::eigen::determinant(&p).abs() > 0.05 {
            return p;
        }
    }
}

/// Random expression over `vars` with at most `depth` levels of nesting.
///
/// Leaves are variables or short decimals in [0, 3]; exponents are in -3..=4.
pub fn expr<R: Rng + ?Sized>(rng: &mut R, vars: &[&str], depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.6) {
            Expr::var(vars[rng.gen_range(0..vars.len())])
        } else {
            Expr::num((rng.gen_range(0.0..3.0_f64) * 100.0).round() / 100.0)
        };
    }
    let sub = |rng: &mut R| Box::new(expr(rng, vars, depth - 1));
    match rng.gen_range(0..8) {
        0 => Expr::Neg(sub(rng)),
        1 => Expr::Add(sub(rng), sub(rng)),
        2 => Expr::Sub(sub(rng), sub(rng)),
        3 => Expr::Mul(sub(rng), sub(rng)),
        4 => Expr::Div(sub(rng), sub(rng)),
        5 => Expr::Pow(sub(rng), rng.gen_range(-3..=4)),
        _ => Expr::Call(Func::ALL[rng.gen_range(0..Func::ALL.len())], sub(rng)),
    }
}
