//! Levi-Civita connection of `g` and differentiation along sections of the
//! time and space bundles.
//!
//! Christoffel symbols are evaluated pointwise from the symbolic partials of
//! the metric components. Vector fields are given as coordinate-component
//! expressions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bundle::line_at;
use crate::dsl::{differentiate, eval, Expr};
use crate::eigen::invert;
use crate::error::{Error, Result};
use crate::form::{orthogonal_complement, SymmetricForm4, Vec4};
use crate::separation::TimeLine;
use crate::spacetime::{Point, SpacetimeSpec};

/// Pivot floor for inverting `g`.
const INVERSE_RTOL: f64 = 1e-13;

/// `Γ^μ_{νρ}` at one point, stored `gamma[μ][ν][ρ]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChristoffelField {
    pub gamma: [[[f64; 4]; 4]; 4],
}

impl ChristoffelField {
    pub fn get(&self, upper: usize, a: usize, b: usize) -> f64 {
        self.gamma[upper][a][b]
    }

    /// Largest `|Γ^μ_{νρ} − Γ^μ_{ρν}|`.
    pub fn torsion(&self) -> f64 {
        let mut m = 0.0_f64;
        for mu in 0..4 {
            for a in 0..4 {
                for b in 0..4 {
                    m = m.max((self.gamma[mu][a][b] - self.gamma[mu][b][a]).abs());
                }
            }
        }
        m
    }

    /// `(Γ(X, Y))^μ = Γ^μ_{νρ} X^ν Y^ρ`.
    pub fn contract(&self, x: &Vec4, y: &Vec4) -> Vec4 {
        Vec4(std::array::from_fn(|mu| {
            let mut s = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    s += self.gamma[mu][a][b] * x[a] * y[b];
                }
            }
            s
        }))
    }
}

/// Christoffel symbols from a metric, its inverse and `∂_k g_ij`.
pub fn christoffel_from_parts(g_inv: &[[f64; 4]; 4], dg: &[[[f64; 4]; 4]; 4]) -> ChristoffelField {
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in nu..4 {
                let mut s = 0.0;
                for sigma in 0..4 {
                    let lowered = dg[nu][sigma][rho] + dg[rho][sigma][nu] - dg[sigma][nu][rho];
                    s += g_inv[mu][sigma] * lowered;
                }
                gamma[mu][nu][rho] = 0.5 * s;
                gamma[mu][rho][nu] = 0.5 * s;
            }
        }
    }
    ChristoffelField { gamma }
}

/// `Γ^μ_{νρ} = ½ g^{μσ}(∂_ν g_{σρ} + ∂_ρ g_{σν} − ∂_σ g_{νρ})` at `p`.
pub fn christoffel_at(spec: &SpacetimeSpec, p: &Point) -> Result<ChristoffelField> {
    let g = spec.g_raw(p)?;
    let g_inv = invert(g.entries(), INVERSE_RTOL).ok_or(Error::DegenerateForm {
        det: g.determinant(),
    })?;
    let dg = spec.g_partials_at(p)?;
    Ok(christoffel_from_parts(&g_inv, &dg))
}

/// Coordinate components `F^μ` as expressions.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub sources: [String; 4],
    pub components: [Expr; 4],
}

impl VectorField {
    pub fn parse(spec: &SpacetimeSpec, sources: [&str; 4]) -> Result<Self> {
        let mut components: [Expr; 4] = Default::default();
        for (i, src) in sources.iter().enumerate() {
            components[i] = spec.compile(src, &format!("field component {i}"))?;
        }
        Ok(Self {
            sources: sources.map(str::to_string),
            components,
        })
    }

    /// Parse `"F0,F1,F2,F3"`.
    pub fn parse_list(spec: &SpacetimeSpec, text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let parts: [&str; 4] = parts.try_into().map_err(|p: Vec<&str>| {
            Error::Invalid(format!("vector field needs 4 components, got {}", p.len()))
        })?;
        Self::parse(spec, parts)
    }

    pub fn constant(spec: &SpacetimeSpec, v: &Vec4) -> Result<Self> {
        let s = v.0.map(|x| format!("{x:?}"));
        Self::parse(spec, [&s[0], &s[1], &s[2], &s[3]])
    }

    pub fn at(&self, spec: &SpacetimeSpec, p: &Point) -> Result<Vec4> {
        let b = spec.binding(p);
        let mut out = [0.0; 4];
        for (i, c) in self.components.iter().enumerate() {
            out[i] = eval(c, &b).map_err(|e| Error::in_expr(format!("field component {i}"), e))?;
        }
        Ok(Vec4(out))
    }

    /// Coordinate Jacobian `∂_ν F^μ` at `p`, stored `[μ][ν]`.
    pub fn jacobian_at(&self, spec: &SpacetimeSpec, p: &Point) -> Result<[[f64; 4]; 4]> {
        let b = spec.binding(p);
        let mut out = [[0.0; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                let d = differentiate(&self.components[mu], &spec.coords[nu]);
                out[mu][nu] = eval(&d, &b)
                    .map_err(|e| Error::in_expr(format!("d{}(F{mu})", spec.coords[nu]), e))?;
            }
        }
        Ok(out)
    }
}

/// `(∇_s F)^μ = s^ν (∂_ν F^μ + Γ^μ_{νρ} F^ρ)` for a vector `s` at `p`.
pub fn covariant_derivative_along(
    spec: &SpacetimeSpec,
    s: &Vec4,
    f: &VectorField,
    p: &Point,
) -> Result<Vec4> {
    let gamma = christoffel_at(spec, p)?;
    let jac = f.jacobian_at(spec, p)?;
    let fv = f.at(spec, p)?;
    let conn = gamma.contract(s, &fv);
    Ok(Vec4(std::array::from_fn(|mu| {
        (0..4).map(|nu| s[nu] * jac[mu][nu]).sum::<f64>() + conn[mu]
    })))
}

pub fn covariant_derivative(
    spec: &SpacetimeSpec,
    s: &VectorField,
    f: &VectorField,
    p: &Point,
) -> Result<Vec4> {
    let sv = s.at(spec, p)?;
    covariant_derivative_along(spec, &sv, f, p)
}

/// Directional derivative `s^ν ∂_ν f` of a scalar field.
pub fn scalar_derivative_along(spec: &SpacetimeSpec, s: &Vec4, f: &Expr, p: &Point) -> Result<f64> {
    let b = spec.binding(p);
    let mut out = 0.0;
    for nu in 0..4 {
        if s[nu] == 0.0 {
            continue;
        }
        let d = differentiate(f, &spec.coords[nu]);
        out += s[nu] * eval(&d, &b).map_err(|e| Error::in_expr("scalar derivative", e))?;
    }
    Ok(out)
}

/// Section of the time bundle at `p`: `multiplier(p) · direction`.
pub fn time_section_at(
    spec: &SpacetimeSpec,
    multiplier: &Expr,
    p: &Point,
) -> Result<(Vec4, TimeLine)> {
    let line = line_at(spec, p)?;
    let m = eval(multiplier, &spec.binding(p)).map_err(|e| Error::in_expr("multiplier", e))?;
    Ok((line.direction * m, line))
}

/// Time differentiation `∇_s F` with `s = multiplier · (time line)`.
pub fn time_derivative(
    spec: &SpacetimeSpec,
    multiplier: &Expr,
    f: &VectorField,
    p: &Point,
) -> Result<Vec4> {
    let (s, _) = time_section_at(spec, multiplier, p)?;
    covariant_derivative_along(spec, &s, f, p)
}

/// `g`-orthonormal frame of the complement of the time line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpaceFrame {
    pub time: TimeLine,
    pub vectors: [Vec4; 3],
}

impl SpaceFrame {
    pub fn gram(&self, g: &SymmetricForm4) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| g.eval(&self.vectors[i], &self.vectors[j])))
    }
}

/// Gram–Schmidt under `g` on the projected standard basis.
pub fn space_frame_at(spec: &SpacetimeSpec, p: &Point) -> Result<SpaceFrame> {
    let g = spec.g_at(p)?;
    let time = line_at(spec, p)?;
    let seeds = orthogonal_complement(&g, &time.direction)?;
    let mut vectors = [Vec4::ZERO; 3];
    for i in 0..3 {
        let mut w = seeds[i];
        for e in vectors.iter().take(i) {
            w = w - *e * g.eval(e, &w);
        }
        let norm2 = g.eval(&w, &w);
        if !(norm2 > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        vectors[i] = w * (1.0 / norm2.sqrt());
    }
    Ok(SpaceFrame { time, vectors })
}

/// Space differentiation `∇_s F` with `s = Σ coeffs_i · frame_i`.
pub fn space_derivative(
    spec: &SpacetimeSpec,
    coeffs: &[Expr; 3],
    f: &VectorField,
    p: &Point,
) -> Result<Vec4> {
    let s = space_section_at(spec, coeffs, p)?;
    covariant_derivative_along(spec, &s, f, p)
}

pub fn space_section_at(spec: &SpacetimeSpec, coeffs: &[Expr; 3], p: &Point) -> Result<Vec4> {
    let frame = space_frame_at(spec, p)?;
    let b = spec.binding(p);
    let mut s = Vec4::ZERO;
    for (i, c) in coeffs.iter().enumerate() {
        let a = eval(c, &b).map_err(|e| Error::in_expr(format!("space coefficient {i}"), e))?;
        s = s + frame.vectors[i] * a;
    }
    Ok(s)
}

/// Max over random constant fields `X, Y, Z` of
/// `|X(g(Y,Z)) − g(∇_X Y, Z) − g(Y, ∇_X Z)|` at `p`.
pub fn metric_compatibility_residual(
    spec: &SpacetimeSpec,
    p: &Point,
    probes: usize,
    seed: u64,
) -> Result<f64> {
    let g = spec.g_raw(p)?;
    let dg = spec.g_partials_at(p)?;
    let gamma = christoffel_at(spec, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..probes {
        let mut draw = || Vec4(std::array::from_fn(|_| rng.gen_range(-1.0..1.0)));
        let (x, y, z) = (draw(), draw(), draw());
        let mut lhs = 0.0;
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    lhs += x[k] * dg[k][i][j] * y[i] * z[j];
                }
            }
        }
        let nabla_y = gamma.contract(&x, &y);
        let nabla_z = gamma.contract(&x, &z);
        let r = lhs - g.eval(&nabla_y, &z) - g.eval(&y, &nabla_z);
        worst = worst.max(r.abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FLAT: &str = r#"
name = "minkowski"
coords = ["t", "x", "y", "z"]
box = { t = [-1, 1], x = [-1, 1], y = [-1, 1], z = [-1, 1] }
[metric]
g00 = -1
g11 = 1
g22 = 1
g33 = 1
"#;

    #[test]
    fn flat_connection_vanishes() {
        let spec = SpacetimeSpec::from_toml_str(FLAT).unwrap();
        let c = christoffel_at(&spec, &Point([0.2, 0.1, -0.3, 0.7])).unwrap();
        assert!(c.gamma.iter().flatten().flatten().all(|&x| x == 0.0));
    }

    #[test]
    fn flat_derivatives() {
        let spec = SpacetimeSpec::from_toml_str(FLAT).unwrap();
        let p = Point([0.5, 0.25, 0.0, 0.0]);
        let s = VectorField::parse(&spec, ["1", "0", "0", "0"]).unwrap();
        let f = VectorField::parse(&spec, ["x1", "0", "0", "0"]).unwrap();
        assert_eq!(covariant_derivative(&spec, &s, &f, &p).unwrap(), Vec4::ZERO);
        let f = VectorField::parse(&spec, ["x0", "0", "0", "0"]).unwrap();
        assert_eq!(
            covariant_derivative(&spec, &s, &f, &p).unwrap(),
            Vec4::basis(0)
        );
    }

    #[test]
    fn time_derivative_is_linear_in_multiplier() {
        let spec = SpacetimeSpec::from_toml_str(FLAT).unwrap();
        let p = Point([0.0; 4]);
        let f = VectorField::parse(&spec, ["x0", "0", "0", "0"]).unwrap();
        let m = |src: &str| spec.compile(src, "m").unwrap();
        assert_eq!(
            time_derivative(&spec, &m("1"), &f, &p).unwrap(),
            Vec4::basis(0)
        );
        assert_eq!(
            time_derivative(&spec, &m("2"), &f, &p).unwrap(),
            Vec4::new(2.0, 0.0, 0.0, 0.0)
        );
        assert_eq!(time_derivative(&spec, &m("0"), &f, &p).unwrap(), Vec4::ZERO);
    }

    #[test]
    fn flat_space_frame_and_derivative() {
        let spec = SpacetimeSpec::from_toml_str(FLAT).unwrap();
        let p = Point([0.0; 4]);
        let frame = space_frame_at(&spec, &p).unwrap();
        assert_eq!(
            frame.vectors,
            [Vec4::basis(1), Vec4::basis(2), Vec4::basis(3)]
        );
        let f = VectorField::parse(&spec, ["x1", "0", "0", "0"]).unwrap();
        let c = |s: &str| spec.compile(s, "c").unwrap();
        assert_eq!(
            space_derivative(&spec, &[c("1"), c("0"), c("0")], &f, &p).unwrap(),
            Vec4::basis(0)
        );
        assert_eq!(
            space_derivative(&spec, &[c("0"), c("0"), c("0")], &f, &p).unwrap(),
            Vec4::ZERO
        );
    }

    #[test]
    fn vector_field_list_needs_four_parts() {
        let spec = SpacetimeSpec::from_toml_str(FLAT).unwrap();
        assert!(matches!(
            VectorField::parse_list(&spec, "1,2,3"),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            VectorField::parse_list(&spec, "1,2,3,q"),
            Err(Error::UnknownCoordinate { .. })
        ));
    }

    #[test]
    fn flat_compatibility_is_exact() {
        let spec = SpacetimeSpec::from_toml_str(FLAT).unwrap();
        let r = metric_compatibility_residual(&spec, &Point([0.0; 4]), 20, 1).unwrap();
        assert!(r < 1e-14);
    }
}
