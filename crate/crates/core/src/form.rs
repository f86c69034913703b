//! Symmetric bilinear forms on a 4-dimensional tangent space.
//!
//! A [`SymmetricForm4`] holds either the Lorentzian metric `g_p` or an
//! auxiliary Riemannian metric `h_p` at a single point. The operations here
//! are the pointwise algebra everything else is built on: signature counting,
//! causal classification, and the `g`-orthogonal complement of a vector.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::Serialize;

use crate::eigen::{determinant, jacobi_eigen, SymmetricEigen};
use crate::error::{Error, Result};

/// Relative scale for the default classification tolerance.
pub const CLASSIFY_RTOL: f64 = 1e-9;

/// Relative determinant floor below which a form counts as degenerate.
pub const DEGENERATE_RTOL: f64 = 1e-12;

/// Coordinate components of a tangent vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Vec4(pub [f64; 4]);

impl Vec4 {
    pub const ZERO: Vec4 = Vec4([0.0; 4]);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Vec4([a, b, c, d])
    }

    /// Standard basis vector `e_i`.
    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        Vec4(v)
    }

    /// Euclidean dot product of coordinate components.
    pub fn dot(&self, other: &Vec4) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|x| x.is_finite())
    }

    /// Index of the largest-magnitude component (first one on ties).
    pub fn argmax_abs(&self) -> usize {
        let mut best = 0;
        for i in 1..4 {
            if self.0[i].abs() > self.0[best].abs() {
                best = i;
            }
        }
        best
    }

    /// Euclidean angle between the lines spanned by `self` and `other`.
    pub fn line_angle(&self, other: &Vec4) -> f64 {
        let a = *self * (1.0 / self.norm());
        let b = *other * (1.0 / other.norm());
        let cos = a.dot(&b);
        let rejection = (a - b * cos).norm();
        rejection.atan2(cos.abs())
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, s: f64) -> Vec4 {
        Vec4(self.0.map(|x| x * s))
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4(self.0.map(|x| -x))
    }
}

/// A symmetric 4×4 real matrix viewed as a bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SymmetricForm4 {
    entries: [[f64; 4]; 4],
}

impl SymmetricForm4 {
    /// Checked constructor: entries must be finite and exactly symmetric.
    pub fn new(entries: [[f64; 4]; 4]) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if !entries[i][j].is_finite() {
                    return Err(Error::NonFinite);
                }
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Asymmetric { i, j });
                }
            }
        }
        Ok(Self { entries })
    }

    /// Build from the upper triangle; the lower triangle is mirrored.
    pub fn from_upper(entries: [[f64; 4]; 4]) -> Result<Self> {
        let mut e = entries;
        for i in 0..4 {
            for j in 0..i {
                e[i][j] = e[j][i];
            }
        }
        Self::new(e)
    }

    pub fn diag(d: [f64; 4]) -> Self {
        let mut e = [[0.0; 4]; 4];
        for i in 0..4 {
            e[i][i] = d[i];
        }
        Self::new(e).expect("diagonal form with finite entries")
    }

    pub fn identity() -> Self {
        Self::diag([1.0; 4])
    }

    pub fn minkowski() -> Self {
        Self::diag([-1.0, 1.0, 1.0, 1.0])
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .flatten()
            .fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Matrix-vector product `f v`, i.e. the covector `f(v, ·)` in components.
    pub fn apply(&self, v: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|i| {
            (0..4).map(|j| self.entries[i][j] * v.0[j]).sum()
        }))
    }

    /// `uᵀ f v`.
    pub fn eval(&self, u: &Vec4, v: &Vec4) -> f64 {
        u.dot(&self.apply(v))
    }

    pub fn determinant(&self) -> f64 {
        determinant(&self.entries)
    }

    pub fn eigen(&self) -> Result<SymmetricEigen<4>> {
        jacobi_eigen(&self.entries)
    }

    /// `Pᵀ f P` for an arbitrary 4×4 matrix `P`.
    pub fn congruent(&self, p: &[[f64; 4]; 4]) -> Self {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                let mut s = 0.0;
                for a in 0..4 {
                    for b in 0..4 {
                        s += p[a][i] * self.entries[a][b] * p[b][j];
                    }
                }
                out[i][j] = s;
            }
        }
        Self::from_upper(out).expect("congruence of a finite form")
    }

    /// True when `|det|` falls below `DEGENERATE_RTOL · ‖f‖∞⁴`.
    pub fn is_degenerate(&self) -> bool {
        let scale = self.max_abs();
        self.determinant().abs() <= DEGENERATE_RTOL * scale.powi(4)
    }
}

/// `uᵀ f v`.
pub fn evaluate_form(f: &SymmetricForm4, u: &Vec4, v: &Vec4) -> f64 {
    f.eval(u, v)
}

/// Inertia counts of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub n_negative: usize,
    pub n_zero: usize,
    pub n_positive: usize,
}

impl Signature {
    pub const LORENTZIAN: Signature = Signature {
        n_negative: 1,
        n_zero: 0,
        n_positive: 3,
    };
    pub const RIEMANNIAN: Signature = Signature {
        n_negative: 0,
        n_zero: 0,
        n_positive: 4,
    };

    pub fn is_lorentzian(&self) -> bool {
        *self == Self::LORENTZIAN
    }

    pub fn is_riemannian(&self) -> bool {
        *self == Self::RIEMANNIAN
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{})",
            self.n_negative, self.n_zero, self.n_positive
        )
    }
}

/// Count eigenvalues below `-tol`, within `[-tol, tol]`, and above `tol`.
pub fn signature(f: &SymmetricForm4, tol: f64) -> Signature {
    let eig = f
        .eigen()
        .expect("Jacobi converges on a finite symmetric 4x4 form");
    let mut sig = Signature {
        n_negative: 0,
        n_zero: 0,
        n_positive: 0,
    };
    for &l in &eig.values {
        if l < -tol {
            sig.n_negative += 1;
        } else if l > tol {
            sig.n_positive += 1;
        } else {
            sig.n_zero += 1;
        }
    }
    sig
}

/// Signature with a tolerance relative to the form's largest entry.
pub fn signature_relative(f: &SymmetricForm4, rtol: f64) -> Signature {
    signature(f, rtol * f.max_abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CausalClass {
    Timelike,
    Null,
    Spacelike,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalClass::Timelike => "timelike",
            CausalClass::Null => "null",
            CausalClass::Spacelike => "spacelike",
        })
    }
}

/// `CLASSIFY_RTOL · ‖g‖∞ · ‖v‖²`.
pub fn default_classify_tol(g: &SymmetricForm4, v: &Vec4) -> f64 {
    CLASSIFY_RTOL * g.max_abs() * v.dot(v)
}

pub fn classify(g: &SymmetricForm4, v: &Vec4, tol: f64) -> Result<CausalClass> {
    if v.0.iter().all(|&x| x == 0.0) {
        return Err(Error::ZeroVector);
    }
    let q = g.eval(v, v);
    Ok(if q < -tol {
        CausalClass::Timelike
    } else if q > tol {
        CausalClass::Spacelike
    } else {
        CausalClass::Null
    })
}

/// [`classify`] with [`default_classify_tol`].
pub fn classify_default(g: &SymmetricForm4, v: &Vec4) -> Result<CausalClass> {
    classify(g, v, default_classify_tol(g, v))
}

/// Membership in `N_p = {v : g(v,v) = 0}` up to `tol`.
pub fn in_null_cone(g: &SymmetricForm4, v: &Vec4, tol: f64) -> bool {
    g.eval(v, v).abs() <= tol
}

/// Membership in `L_p = {v : g(v,v) ≥ 0}` up to `tol`, taken literally.
///
/// Under the (−,+,+,+) convention this set is the null cone together with
/// the spacelike vectors.
pub fn in_light_cone(g: &SymmetricForm4, v: &Vec4, tol: f64) -> bool {
    g.eval(v, v) >= -tol
}

/// Basis of `v^⊥ = {w : g(v,w) = 0}`.
///
/// Seeds are the standard basis vectors with the one most aligned with `v`
/// (largest `|v_i|`) dropped; each remaining seed is projected along `v`.
/// Dropping index `i` with `v_i ≠ 0` keeps the three projections independent.
pub fn orthogonal_complement(g: &SymmetricForm4, v: &Vec4) -> Result<[Vec4; 3]> {
    if g.is_degenerate() {
        return Err(Error::DegenerateForm {
            det: g.determinant(),
        });
    }
    if classify_default(g, v)? == CausalClass::Null {
        return Err(Error::NullVector);
    }
    let gv = g.apply(v);
    let gvv = gv.dot(v);
    let drop = v.argmax_abs();
    let mut out = [Vec4::ZERO; 3];
    for (slot, i) in (0..4).filter(|&i| i != drop).enumerate() {
        let seed = Vec4::basis(i);
        out[slot] = seed - *v * (gv[i] / gvv);
    }
    Ok(out)
}

/// Restriction of `g` to `v^⊥` in the basis from [`orthogonal_complement`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Restriction {
    pub basis: [Vec4; 3],
    pub gram: [[f64; 3]; 3],
    pub min_eigenvalue: f64,
    pub positive_definite: bool,
}

pub fn restrict_to_complement(g: &SymmetricForm4, v: &Vec4) -> Result<Restriction> {
    if classify_default(g, v)? != CausalClass::Timelike {
        return Err(Error::NotTimelike);
    }
    let basis = orthogonal_complement(g, v)?;
    let gram = std::array::from_fn(|i| std::array::from_fn(|j| g.eval(&basis[i], &basis[j])));
    let eig = jacobi_eigen(&gram)?;
    let min_eigenvalue = eig.values[0];
    Ok(Restriction {
        basis,
        gram,
        min_eigenvalue,
        positive_definite: min_eigenvalue > 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_block() -> SymmetricForm4 {
        SymmetricForm4::new([
            [0.0, -1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap()
    }

    #[test]
    fn evaluate_form_examples() {
        let g = SymmetricForm4::minkowski();
        let e0 = Vec4::basis(0);
        let e1 = Vec4::basis(1);
        assert_eq!(evaluate_form(&g, &e0, &e0), -1.0);
        assert_eq!(evaluate_form(&g, &e0, &e1), 0.0);
        let v = Vec4::new(2.0, 1.0, 0.0, 0.0);
        assert_eq!(evaluate_form(&g, &v, &v), -3.0);
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            signature(&SymmetricForm4::minkowski(), 1e-12),
            Signature::LORENTZIAN
        );
        assert_eq!(
            signature(&SymmetricForm4::identity(), 1e-12),
            Signature::RIEMANNIAN
        );
        assert_eq!(signature(&swap_block(), 1e-12), Signature::LORENTZIAN);
        let degenerate = SymmetricForm4::diag([-1.0, 0.0, 1.0, 1.0]);
        assert_eq!(
            signature(&degenerate, 1e-12),
            Signature {
                n_negative: 1,
                n_zero: 1,
                n_positive: 2
            }
        );
    }

    #[test]
    fn constructor_rejects_asymmetry_and_nan() {
        let mut e = [[0.0; 4]; 4];
        e[0][1] = 1.0;
        assert!(matches!(
            SymmetricForm4::new(e),
            Err(Error::Asymmetric { i: 0, j: 1 })
        ));
        e[1][0] = 1.0;
        e[2][2] = f64::INFINITY;
        assert!(matches!(SymmetricForm4::new(e), Err(Error::NonFinite)));
    }

    #[test]
    fn classify_examples() {
        let g = SymmetricForm4::minkowski();
        let c = |v: Vec4| classify_default(&g, &v).unwrap();
        assert_eq!(c(Vec4::new(1.0, 0.0, 0.0, 0.0)), CausalClass::Timelike);
        assert_eq!(c(Vec4::new(1.0, 1.0, 0.0, 0.0)), CausalClass::Null);
        assert_eq!(c(Vec4::new(0.0, 1.0, 0.0, 0.0)), CausalClass::Spacelike);
        assert!(matches!(
            classify_default(&g, &Vec4::ZERO),
            Err(Error::ZeroVector)
        ));
    }

    #[test]
    fn cone_predicates_as_written() {
        let g = SymmetricForm4::minkowski();
        let null = Vec4::new(1.0, 1.0, 0.0, 0.0);
        let time = Vec4::basis(0);
        let space = Vec4::basis(2);
        assert!(in_null_cone(&g, &null, 0.0));
        assert!(in_light_cone(&g, &null, 0.0));
        assert!(in_light_cone(&g, &space, 0.0));
        assert!(!in_light_cone(&g, &time, 0.0));
    }

    #[test]
    fn complement_of_time_axis() {
        let g = SymmetricForm4::minkowski();
        let basis = orthogonal_complement(&g, &Vec4::basis(0)).unwrap();
        assert_eq!(basis, [Vec4::basis(1), Vec4::basis(2), Vec4::basis(3)]);
    }

    #[test]
    fn complement_of_boosted_vector() {
        // -2 w0 + w1 = 0 is solved by (1,2,0,0).
        let g = SymmetricForm4::minkowski();
        let v = Vec4::new(2.0, 1.0, 0.0, 0.0);
        let basis = orthogonal_complement(&g, &v).unwrap();
        let hand = Vec4::new(1.0, 2.0, 0.0, 0.0);
        assert!(basis[0].line_angle(&hand) < 1e-15);
        assert_eq!(basis[1], Vec4::basis(2));
        assert_eq!(basis[2], Vec4::basis(3));
        for w in &basis {
            assert!(g.eval(&v, w).abs() < 1e-15);
        }
    }

    #[test]
    fn complement_of_null_vector_fails() {
        let g = SymmetricForm4::minkowski();
        assert!(matches!(
            orthogonal_complement(&g, &Vec4::new(1.0, 1.0, 0.0, 0.0)),
            Err(Error::NullVector)
        ));
    }

    #[test]
    fn complement_of_degenerate_form_fails() {
        let g = SymmetricForm4::diag([-1.0, 0.0, 1.0, 1.0]);
        assert!(matches!(
            orthogonal_complement(&g, &Vec4::basis(0)),
            Err(Error::DegenerateForm { .. })
        ));
    }

    #[test]
    fn restriction_examples() {
        let g = SymmetricForm4::minkowski();
        let r = restrict_to_complement(&g, &Vec4::basis(0)).unwrap();
        assert_eq!(r.gram, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!(r.positive_definite);

        // In the hand basis {(1,2,0,0), e2, e3} the Gram matrix is diag(3,1,1);
        // the returned first vector is a multiple c·(1,2,0,0), so its entry is 3c².
        let v = Vec4::new(2.0, 1.0, 0.0, 0.0);
        let r = restrict_to_complement(&g, &v).unwrap();
        let c = r.basis[0][1] / 2.0;
        assert!((r.gram[0][0] - 3.0 * c * c).abs() < 1e-14);
        assert_eq!(r.gram[1][1], 1.0);
        assert_eq!(r.gram[2][2], 1.0);
        assert!(r.gram[0][1].abs() < 1e-15 && r.gram[0][2].abs() < 1e-15);
        assert!(r.positive_definite);

        assert!(matches!(
            restrict_to_complement(&g, &Vec4::basis(1)),
            Err(Error::NotTimelike)
        ));
    }

    #[test]
    fn line_angle_ignores_sign_and_scale() {
        let a = Vec4::new(1.0, 2.0, 3.0, 4.0);
        assert!(a.line_angle(&(a * -3.5)) < 1e-15);
        let b = Vec4::basis(0);
        let c = Vec4::basis(1);
        assert!((b.line_angle(&c) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }
}
