//! Spacetime specifications: one coordinate chart, optional periodic
//! coordinates, symbolic `g` and `h` components, exclusion predicates and
//! named loops.
//!
//! Specs are read from TOML:
//!
//! ```toml
//! name = "schwarzschild"
//! coords = ["t", "r", "theta", "phi"]
//! periodic = { phi = "2*pi" }
//! params = { M = 1.0 }
//! box = { t = [-1, 1], r = [2.5, 20], theta = [0.2, 2.9], phi = [0, "2*pi"] }
//! exclude = ["r - 2*M", "sin(theta)"]
//!
//! [metric]
//! g00 = "-(1 - 2*M/r)"
//! g11 = "1/(1 - 2*M/r)"
//! g22 = "r^2"
//! g33 = "r^2*sin(theta)^2"
//!
//! [[loop]]
//! name = "phi-loop"
//! param = "s"
//! curve = ["0", "4", "pi/2", "2*pi*s"]
//! ```
//!
//! Only the upper triangle of `[metric]` is required; a missing off-diagonal
//! entry is `0`. A missing `[riemann]` table means `h` is the coordinate
//! identity. The names `x0`..`x3` are accepted as positional aliases of the
//! four coordinates unless a coordinate already uses them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dsl::{self, differentiate, eval, Binding, Expr};
use crate::error::{Error, Result};
use crate::form::{signature_relative, Signature, SymmetricForm4};
use crate::par::Execution;

/// Relative tolerance used when checking the signature of `g_p` and `h_p`.
pub const SIGNATURE_RTOL: f64 = 1e-10;

/// Loop endpoints must agree modulo periods to this absolute tolerance.
pub const CLOSURE_TOL: f64 = 1e-12;

/// A point of the chart, in the spec's coordinate order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point(pub [f64; 4]);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodicCoord {
    pub index: usize,
    pub period: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Exclusion {
    pub source: String,
    pub expr: Expr,
}

/// A closed curve `s ↦ c(s)`, `s ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopCurve {
    pub name: String,
    pub param: String,
    pub components: [Expr; 4],
    pub sources: [String; 4],
}

impl LoopCurve {
    /// Chart coordinates at parameter `s`.
    pub fn coords_at(&self, spec: &SpacetimeSpec, s: f64) -> Result<[f64; 4]> {
        let mut b = spec.param_binding();
        b.set(self.param.clone(), s);
        let mut out = [0.0; 4];
        for (i, c) in self.components.iter().enumerate() {
            out[i] = eval(c, &b).map_err(|e| {
                Error::in_expr(format!("loop `{}` component {i} at s={s}", self.name), e)
            })?;
        }
        Ok(out)
    }

    /// The same curve traversed backwards, `s ↦ c(1 - s)`.
    pub fn reversed(&self) -> LoopCurve {
        let p = self.param.clone();
        let flipped = Expr::Sub(Box::new(Expr::Num(1.0)), Box::new(Expr::var(p.clone())));
        let components = self
            .components
            .clone()
            .map(|c| substitute(&c, &p, &flipped));
        LoopCurve {
            name: format!("{} (reversed)", self.name),
            param: self.param.clone(),
            sources: components.clone().map(|c| c.to_string()),
            components,
        }
    }
}

fn substitute(e: &Expr, var: &str, with: &Expr) -> Expr {
    match e {
        Expr::Var(v) if v == var => with.clone(),
        Expr::Num(_) | Expr::Var(_) => e.clone(),
        Expr::Neg(a) => Expr::Neg(Box::new(substitute(a, var, with))),
        Expr::Add(a, b) => Expr::Add(
            Box::new(substitute(a, var, with)),
            Box::new(substitute(b, var, with)),
        ),
        Expr::Sub(a, b) => Expr::Sub(
            Box::new(substitute(a, var, with)),
            Box::new(substitute(b, var, with)),
        ),
        Expr::Mul(a, b) => Expr::Mul(
            Box::new(substitute(a, var, with)),
            Box::new(substitute(b, var, with)),
        ),
        Expr::Div(a, b) => Expr::Div(
            Box::new(substitute(a, var, with)),
            Box::new(substitute(b, var, with)),
        ),
        Expr::Pow(a, n) => Expr::Pow(Box::new(substitute(a, var, with)), *n),
        Expr::Call(f, a) => Expr::Call(*f, Box::new(substitute(a, var, with))),
    }
}

/// A validated spacetime description.
#[derive(Debug, Clone)]
pub struct SpacetimeSpec {
    pub name: String,
    pub coords: [String; 4],
    pub params: BTreeMap<String, f64>,
    pub periodic: Vec<PeriodicCoord>,
    pub sampling_box: [Option<(f64, f64)>; 4],
    pub exclusions: Vec<Exclusion>,
    g: [[Expr; 4]; 4],
    h: Option<[[Expr; 4]; 4]>,
    /// `g_partials[k][i][j] = ∂_k g_ij`.
    g_partials: [[[Expr; 4]; 4]; 4],
    pub loops: Vec<LoopCurve>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum NumOrExpr {
    Num(f64),
    Text(String),
}

impl NumOrExpr {
    fn text(&self) -> String {
        match self {
            NumOrExpr::Num(x) => format!("{x}"),
            NumOrExpr::Text(s) => s.trim().to_string(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLoop {
    name: String,
    param: String,
    curve: Vec<NumOrExpr>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    name: String,
    coords: Vec<String>,
    #[serde(default)]
    periodic: BTreeMap<String, NumOrExpr>,
    #[serde(default)]
    params: BTreeMap<String, f64>,
    #[serde(default, rename = "box")]
    sampling_box: BTreeMap<String, (NumOrExpr, NumOrExpr)>,
    #[serde(default)]
    exclude: Vec<String>,
    metric: BTreeMap<String, NumOrExpr>,
    riemann: Option<BTreeMap<String, NumOrExpr>>,
    #[serde(default, rename = "loop")]
    loops: Vec<RawLoop>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Read and validate a spec file.
pub fn load_spec(path: impl AsRef<Path>) -> Result<SpacetimeSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    SpacetimeSpec::from_toml_str(&text)
}

/// Parse `prefix` + two digits into component indices.
fn component_index(key: &str, prefix: char) -> Option<(usize, usize)> {
    let mut chars = key.chars();
    if chars.next()? != prefix {
        return None;
    }
    let i = chars.next()?.to_digit(10)? as usize;
    let j = chars.next()?.to_digit(10)? as usize;
    if chars.next().is_some() || i > 3 || j > 3 {
        return None;
    }
    Some((i, j))
}

impl SpacetimeSpec {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| Error::SpecParse(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawSpec) -> Result<Self> {
        let coords: [String; 4] = raw.coords.clone().try_into().map_err(|_| {
            Error::SpecParse(format!(
                "`coords` must list exactly 4 names, got {}",
                raw.coords.len()
            ))
        })?;
        let mut seen = BTreeSet::new();
        for name in coords.iter().chain(raw.params.keys()) {
            if !is_identifier(name) {
                return Err(Error::SpecParse(format!(
                    "`{name}` is not a valid identifier"
                )));
            }
            if dsl::constant(name).is_some() {
                return Err(Error::SpecParse(format!(
                    "`{name}` is a reserved constant and cannot be redeclared"
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::SpecParse(format!("name `{name}` declared twice")));
            }
        }
        for (k, v) in &raw.params {
            if !v.is_finite() {
                return Err(Error::SpecParse(format!("parameter `{k}` is not finite")));
            }
        }

        let mut spec = SpacetimeSpec {
            name: raw.name,
            coords,
            params: raw.params,
            periodic: Vec::new(),
            sampling_box: [None; 4],
            exclusions: Vec::new(),
            g: Default::default(),
            h: None,
            g_partials: Default::default(),
            loops: Vec::new(),
        };

        for (coord, period) in &raw.periodic {
            let index = spec
                .coord_index(coord)
                .ok_or_else(|| Error::UnknownCoordinate {
                    name: coord.clone(),
                    context: "`periodic`".into(),
                })?;
            let period = spec.constant_value(&period.text(), &format!("period of `{coord}`"))?;
            if !(period > 0.0) {
                return Err(Error::SpecParse(format!(
                    "period of `{coord}` must be positive, got {period}"
                )));
            }
            spec.periodic.push(PeriodicCoord { index, period });
        }
        spec.periodic.sort_by_key(|p| p.index);

        for (coord, (lo, hi)) in &raw.sampling_box {
            let index = spec
                .coord_index(coord)
                .ok_or_else(|| Error::UnknownCoordinate {
                    name: coord.clone(),
                    context: "`box`".into(),
                })?;
            let ctx = format!("box of `{coord}`");
            let lo = spec.constant_value(&lo.text(), &ctx)?;
            let hi = spec.constant_value(&hi.text(), &ctx)?;
            if !(lo <= hi) {
                return Err(Error::SpecParse(format!(
                    "{ctx}: lower bound exceeds upper"
                )));
            }
            spec.sampling_box[index] = Some((lo, hi));
        }

        for src in &raw.exclude {
            let expr = spec.compile(src, &format!("exclusion `{src}`"))?;
            spec.exclusions.push(Exclusion {
                source: src.clone(),
                expr,
            });
        }

        spec.g = spec.component_matrix(&raw.metric, 'g', true)?;
        if let Some(table) = &raw.riemann {
            spec.h = Some(spec.component_matrix(table, 'h', false)?);
        }
        spec.g_partials = std::array::from_fn(|k| {
            std::array::from_fn(|i| {
                std::array::from_fn(|j| differentiate(&spec.g[i][j], &spec.coords[k]))
            })
        });

        for raw_loop in raw.loops {
            let lp = spec.compile_loop(raw_loop)?;
            spec.check_closure(&lp)?;
            spec.loops.push(lp);
        }
        Ok(spec)
    }

    fn component_matrix(
        &self,
        table: &BTreeMap<String, NumOrExpr>,
        prefix: char,
        diagonal_required: bool,
    ) -> Result<[[Expr; 4]; 4]> {
        let mut text: [[Option<String>; 4]; 4] = Default::default();
        for (key, value) in table {
            let (i, j) = component_index(key, prefix)
                .ok_or_else(|| Error::SpecParse(format!("unknown component key `{key}`")))?;
            text[i][j] = Some(value.text());
        }
        let mut out: [[Expr; 4]; 4] = Default::default();
        for i in 0..4 {
            for j in i..4 {
                let src = match (&text[i][j], &text[j][i]) {
                    (Some(a), Some(b)) if i != j && a != b => {
                        return Err(Error::AsymmetricMetric {
                            key: format!("{prefix}{i}{j}"),
                            a: a.clone(),
                            b: b.clone(),
                        })
                    }
                    (Some(a), _) | (None, Some(a)) => a.clone(),
                    (None, None) if i == j => {
                        if diagonal_required {
                            return Err(Error::MissingDiagonal(format!("{prefix}{i}{i}")));
                        }
                        // Riemannian table: unspecified diagonal falls back to identity.
                        "1".to_string()
                    }
                    (None, None) => "0".to_string(),
                };
                let e = self.compile(&src, &format!("{prefix}{i}{j}"))?;
                out[i][j] = e.clone();
                out[j][i] = e;
            }
        }
        Ok(out)
    }

    fn compile_loop(&self, raw: RawLoop) -> Result<LoopCurve> {
        if !is_identifier(&raw.param) {
            return Err(Error::SpecParse(format!(
                "loop `{}`: parameter `{}` is not a valid identifier",
                raw.name, raw.param
            )));
        }
        if raw.curve.len() != 4 {
            return Err(Error::SpecParse(format!(
                "loop `{}`: `curve` needs 4 components, got {}",
                raw.name,
                raw.curve.len()
            )));
        }
        let mut components: [Expr; 4] = Default::default();
        let mut sources: [String; 4] = Default::default();
        for (i, c) in raw.curve.iter().enumerate() {
            let src = c.text();
            let context = format!("loop `{}` component {i}", raw.name);
            let e = dsl::parse(&src).map_err(|e| Error::in_expr(context.clone(), e))?;
            for v in e.free_vars() {
                if v != raw.param && !self.params.contains_key(&v) && dsl::constant(&v).is_none() {
                    return Err(Error::UnknownCoordinate { name: v, context });
                }
            }
            components[i] = e;
            sources[i] = src;
        }
        Ok(LoopCurve {
            name: raw.name,
            param: raw.param,
            components,
            sources,
        })
    }

    /// Verify that `c(0)` and `c(1)` agree modulo declared periods.
    pub fn check_closure(&self, lp: &LoopCurve) -> Result<()> {
        let a = lp.coords_at(self, 0.0)?;
        let b = lp.coords_at(self, 1.0)?;
        for i in 0..4 {
            let mut gap = b[i] - a[i];
            if let Some(p) = self.period(i) {
                gap -= p * (gap / p).round();
            }
            if gap.abs() > CLOSURE_TOL {
                return Err(Error::LoopNotClosed {
                    name: lp.name.clone(),
                    coord: self.coords[i].clone(),
                    gap,
                });
            }
        }
        Ok(())
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    pub fn period(&self, index: usize) -> Option<f64> {
        self.periodic
            .iter()
            .find(|p| p.index == index)
            .map(|p| p.period)
    }

    /// Map a positional alias `x0`..`x3` to its coordinate name.
    fn alias(&self, name: &str) -> Option<String> {
        if self.coord_index(name).is_some() || self.params.contains_key(name) {
            return None;
        }
        let i = name.strip_prefix('x')?.parse::<usize>().ok()?;
        (i < 4 && name.len() == 2).then(|| self.coords[i].clone())
    }

    /// Parse an expression in the coordinates and parameters of this spec.
    ///
    /// Positional aliases are rewritten to coordinate names so symbolic
    /// differentiation sees the real variable.
    pub fn compile(&self, src: &str, context: &str) -> Result<Expr> {
        let e = dsl::parse(src).map_err(|e| Error::in_expr(context, e))?;
        let e = e.rename_vars(&|v| self.alias(v));
        for v in e.free_vars() {
            if self.coord_index(&v).is_none()
                && !self.params.contains_key(&v)
                && dsl::constant(&v).is_none()
            {
                return Err(Error::UnknownCoordinate {
                    name: v,
                    context: context.to_string(),
                });
            }
        }
        Ok(e)
    }

    /// Evaluate an expression with only parameters and constants in scope.
    pub fn constant_value(&self, src: &str, context: &str) -> Result<f64> {
        let e = dsl::parse(src).map_err(|e| Error::in_expr(context, e))?;
        for v in e.free_vars() {
            if !self.params.contains_key(&v) && dsl::constant(&v).is_none() {
                return Err(Error::UnknownCoordinate {
                    name: v,
                    context: context.to_string(),
                });
            }
        }
        eval(&e, &self.param_binding()).map_err(|e| Error::in_expr(context, e))
    }

    pub fn param_binding(&self) -> Binding {
        self.params.iter().map(|(k, v)| (k.clone(), *v)).collect()
    }

    /// Parameters plus the coordinates of `p`.
    pub fn binding(&self, p: &Point) -> Binding {
        let mut b = self.param_binding();
        for (name, x) in self.coords.iter().zip(p.0) {
            b.set(name.clone(), x);
        }
        b
    }

    /// Fails with [`Error::ExcludedPoint`] unless every predicate is > 0.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        if p.0.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        let b = self.binding(p);
        for ex in &self.exclusions {
            let ok = matches!(eval(&ex.expr, &b), Ok(v) if v > 0.0);
            if !ok {
                return Err(Error::ExcludedPoint {
                    point: p.0,
                    predicate: ex.source.clone(),
                });
            }
        }
        Ok(())
    }

    fn eval_matrix(&self, m: &[[Expr; 4]; 4], b: &Binding, label: char) -> Result<SymmetricForm4> {
        let mut out = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in i..4 {
                out[i][j] =
                    eval(&m[i][j], b).map_err(|e| Error::in_expr(format!("{label}{i}{j}"), e))?;
            }
        }
        SymmetricForm4::from_upper(out)
    }

    /// `g_p` without the signature check.
    pub fn g_raw(&self, p: &Point) -> Result<SymmetricForm4> {
        self.check_point(p)?;
        self.eval_matrix(&self.g, &self.binding(p), 'g')
    }

    /// `h_p` without the signature check.
    pub fn h_raw(&self, p: &Point) -> Result<SymmetricForm4> {
        self.check_point(p)?;
        match &self.h {
            Some(h) => self.eval_matrix(h, &self.binding(p), 'h'),
            None => Ok(SymmetricForm4::identity()),
        }
    }

    /// The Lorentzian metric at `p`; signature must be (1,0,3).
    pub fn g_at(&self, p: &Point) -> Result<SymmetricForm4> {
        let g = self.g_raw(p)?;
        let found = signature_relative(&g, SIGNATURE_RTOL);
        if !found.is_lorentzian() {
            return Err(Error::WrongSignature { found });
        }
        Ok(g)
    }

    /// The Riemannian metric at `p`; signature must be (0,0,4).
    pub fn h_at(&self, p: &Point) -> Result<SymmetricForm4> {
        let h = self.h_raw(p)?;
        let found = signature_relative(&h, SIGNATURE_RTOL);
        if !found.is_riemannian() {
            return Err(Error::NotRiemannian { found });
        }
        Ok(h)
    }

    pub fn g_component(&self, i: usize, j: usize) -> &Expr {
        &self.g[i][j]
    }

    pub fn h_component(&self, i: usize, j: usize) -> Option<&Expr> {
        self.h.as_ref().map(|h| &h[i][j])
    }

    /// Symbolic `∂_k g_ij`.
    pub fn g_partial(&self, k: usize, i: usize, j: usize) -> &Expr {
        &self.g_partials[k][i][j]
    }

    /// Numeric `∂_k g_ij` at `p`, indexed `[k][i][j]`.
    pub fn g_partials_at(&self, p: &Point) -> Result<[[[f64; 4]; 4]; 4]> {
        self.check_point(p)?;
        let b = self.binding(p);
        let mut out = [[[0.0; 4]; 4]; 4];
        for k in 0..4 {
            for i in 0..4 {
                for j in i..4 {
                    let v = eval(&self.g_partials[k][i][j], &b)
                        .map_err(|e| Error::in_expr(format!("d{}(g{i}{j})", self.coords[k]), e))?;
                    out[k][i][j] = v;
                    out[k][j][i] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn find_loop(&self, name: &str) -> Option<&LoopCurve> {
        self.loops.iter().find(|l| l.name == name)
    }

    /// Sampling box, failing if any coordinate lacks one.
    pub fn full_box(&self) -> Result<[(f64, f64); 4]> {
        let mut out = [(0.0, 0.0); 4];
        for i in 0..4 {
            out[i] =
                self.sampling_box[i].ok_or_else(|| Error::MissingBox(self.coords[i].clone()))?;
        }
        Ok(out)
    }

    /// Evaluate `g` and `h` at quasi-random points of the sampling box.
    pub fn validate(&self, samples: usize, seed: u64) -> Result<ValidationReport> {
        self.validate_with(samples, seed, Execution::default())
    }

    pub fn validate_with(
        &self,
        samples: usize,
        seed: u64,
        exec: Execution,
    ) -> Result<ValidationReport> {
        let bounds = self.full_box()?;
        let (points, rejected) = self.sample_points(&bounds, samples, seed);
        let checks = exec.map(&points, |p| self.check_sample(p));
        let violations: Vec<Violation> = checks.into_iter().flatten().collect();
        Ok(ValidationReport {
            spec: self.name.clone(),
            samples_requested: samples,
            samples_evaluated: points.len(),
            excluded_draws: rejected,
            violations,
        })
    }

    fn check_sample(&self, p: &Point) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |metric: &'static str, err: Error| {
            let kind = match &err {
                Error::WrongSignature { .. } => ViolationKind::WrongSignature,
                Error::NotRiemannian { .. } => ViolationKind::NotRiemannian,
                _ => ViolationKind::Evaluation,
            };
            out.push(Violation {
                point: p.0,
                metric,
                kind,
                detail: err.to_string(),
            });
        };
        if let Err(e) = self.g_at(p) {
            push("g", e);
        }
        if let Err(e) = self.h_at(p) {
            push("h", e);
        }
        out
    }

    /// Halton points (bases 2,3,5,7) with a seeded Cranley–Patterson shift,
    /// skipping points that fail an exclusion predicate.
    fn sample_points(&self, bounds: &[(f64, f64); 4], n: usize, seed: u64) -> (Vec<Point>, usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let shift: [f64; 4] = std::array::from_fn(|_| rng.gen::<f64>());
        let max_draws = n.saturating_mul(50).max(100);
        let mut points = Vec::with_capacity(n);
        let mut rejected = 0;
        let mut index = 1u64;
        while points.len() < n && (index as usize) <= max_draws {
            let coords: [f64; 4] = std::array::from_fn(|d| {
                let u = (radical_inverse(index, HALTON_BASES[d]) + shift[d]).fract();
                let (lo, hi) = bounds[d];
                lo + u * (hi - lo)
            });
            index += 1;
            let p = Point(coords);
            if self.check_point(&p).is_ok() {
                points.push(p);
            } else {
                rejected += 1;
            }
        }
        (points, rejected)
    }
}

const HALTON_BASES: [u64; 4] = [2, 3, 5, 7];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    WrongSignature,
    NotRiemannian,
    Evaluation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub point: [f64; 4],
    pub metric: &'static str,
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub spec: String,
    pub samples_requested: usize,
    pub samples_evaluated: usize,
    pub excluded_draws: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violations grouped by kind, in a fixed order.
    pub fn counts(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for v in &self.violations {
            *m.entry(format!("{:?}", v.kind)).or_insert(0) += 1;
        }
        m
    }
}

pub fn signature_of(form: &SymmetricForm4) -> Signature {
    signature_relative(form, SIGNATURE_RTOL)
}
