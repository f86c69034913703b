//! The time line bundle over a spacetime.
//!
//! The fibre over `p` is the timelike eigenline of `g_p` relative to `h_p`.
//! A line has no preferred sign, so to compare fibres along a curve we carry
//! a representative and flip it whenever it would point against its
//! predecessor. Around a closed loop the net sign is the ℤ/2 holonomy: `-1`
//! certifies that the bundle is nontrivial over the loop, i.e. that `w₁`
//! pairs nontrivially with the loop's class.

use std::fmt;

use serde::Serialize;

use crate::dsl::{eval, Expr};
use crate::error::{Error, Result};
use crate::form::{SymmetricForm4, Vec4};
use crate::par::Execution;
use crate::separation::{timelike_line, TimeLine};
use crate::spacetime::{LoopCurve, Point, SpacetimeSpec};

/// Minimum `|h(vᵢ, vᵢ₊₁)|` between consecutive unit representatives.
pub const ALIGNMENT_THRESHOLD: f64 = 0.1;

pub const MIN_TRANSPORT_SAMPLES: usize = 8;

/// Refinement stops once a curve would need more intervals than this.
pub const MAX_TRANSPORT_SAMPLES: usize = 1 << 14;

/// Multipliers below this fraction of the grid maximum count as zero.
pub const ZERO_RTOL: f64 = 1e-9;

/// Time line at `p`: the canonical representative from `g_p` and `h_p`.
pub fn line_at(spec: &SpacetimeSpec, p: &Point) -> Result<TimeLine> {
    let g = spec.g_at(p)?;
    let h = spec.h_at(p)?;
    timelike_line(&g, &h)
}

fn line_and_h(spec: &SpacetimeSpec, p: &Point) -> Result<(TimeLine, SymmetricForm4)> {
    let g = spec.g_at(p)?;
    let h = spec.h_at(p)?;
    Ok((timelike_line(&g, &h)?, h))
}

/// `h(a, b) / sqrt(h(a,a) h(b,b))`.
fn normalized_inner(h: &SymmetricForm4, a: &Vec4, b: &Vec4) -> f64 {
    h.eval(a, b) / (h.eval(a, a) * h.eval(b, b)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LineFieldSample {
    pub param: f64,
    pub point: Point,
    pub line: TimeLine,
    /// Continuously carried representative, `local_sign · line.direction`.
    pub representative: Vec4,
    /// `+1` if the canonical direction already agreed with the predecessor.
    pub local_sign: i8,
    /// Normalised inner product with the predecessor (1 for the first sample).
    pub alignment: f64,
}

/// Result of carrying a line representative along a curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Transport {
    pub curve: String,
    /// Number of intervals the curve was split into after refinement.
    pub samples_used: usize,
    pub min_alignment: f64,
    pub samples: Vec<LineFieldSample>,
    #[serde(skip)]
    metrics: Vec<SymmetricForm4>,
}

impl Transport {
    /// Number of places where the carried sign switches relative to the
    /// canonical direction.
    pub fn flips(&self) -> usize {
        self.samples
            .windows(2)
            .filter(|w| w[0].local_sign != w[1].local_sign)
            .count()
    }

    pub fn metrics(&self) -> &[SymmetricForm4] {
        &self.metrics
    }
}

/// Outcome of folding consecutive representatives into a continuous choice.
#[derive(Debug, Clone, PartialEq)]
pub struct SignFold {
    pub signs: Vec<i8>,
    pub alignments: Vec<f64>,
    pub representatives: Vec<Vec4>,
}

/// Carry a sign through `directions`, flipping whenever the next direction
/// points against the current representative under `metrics[i]`.
///
/// Fails with the first offending index and its alignment when two
/// consecutive lines are closer to orthogonal than `threshold`.
pub fn fold_signs(
    directions: &[Vec4],
    metrics: &[SymmetricForm4],
    threshold: f64,
) -> std::result::Result<SignFold, (usize, f64)> {
    let n = directions.len();
    let mut signs = Vec::with_capacity(n);
    let mut alignments = Vec::with_capacity(n);
    let mut reps = Vec::with_capacity(n);
    if n == 0 {
        return Ok(SignFold {
            signs,
            alignments,
            representatives: reps,
        });
    }
    signs.push(1);
    alignments.push(1.0);
    reps.push(directions[0]);
    for i in 1..n {
        let prev = reps[i - 1];
        let a = normalized_inner(&metrics[i - 1], &prev, &directions[i]);
        if !(a.abs() >= threshold) {
            return Err((i, a));
        }
        let sign: i8 = if a < 0.0 { -1 } else { 1 };
        signs.push(sign);
        alignments.push(a.abs());
        reps.push(directions[i] * sign as f64);
    }
    Ok(SignFold {
        signs,
        alignments,
        representatives: reps,
    })
}

pub fn transport_line(
    spec: &SpacetimeSpec,
    curve: &LoopCurve,
    n_samples: usize,
) -> Result<Transport> {
    transport_line_with(spec, curve, n_samples, Execution::default())
}

/// Sample the curve at `n + 1` parameters and fold the line field into a
/// continuous representative, doubling `n` until every step is aligned.
///
/// The eigen solves at each resolution are independent and run through
/// `exec`; only the sign fold is sequential.
pub fn transport_line_with(
    spec: &SpacetimeSpec,
    curve: &LoopCurve,
    n_samples: usize,
    exec: Execution,
) -> Result<Transport> {
    if n_samples < MIN_TRANSPORT_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_TRANSPORT_SAMPLES,
            got: n_samples,
        });
    }
    let mut n = n_samples;
    loop {
        let evaluated: Vec<Result<(f64, Point, TimeLine, SymmetricForm4)>> =
            exec.map_range(n + 1, |k| {
                let s = k as f64 / n as f64;
                let p = Point(curve.coords_at(spec, s)?);
                let (line, h) = line_and_h(spec, &p)?;
                Ok((s, p, line, h))
            });
        let evaluated = evaluated.into_iter().collect::<Result<Vec<_>>>()?;
        let directions: Vec<Vec4> = evaluated.iter().map(|e| e.2.direction).collect();
        let metrics: Vec<SymmetricForm4> = evaluated.iter().map(|e| e.3).collect();
        match fold_signs(&directions, &metrics, ALIGNMENT_THRESHOLD) {
            Ok(fold) => {
                let samples: Vec<LineFieldSample> = evaluated
                    .iter()
                    .enumerate()
                    .map(|(i, (s, p, line, _))| LineFieldSample {
                        param: *s,
                        point: *p,
                        line: *line,
                        representative: fold.representatives[i],
                        local_sign: fold.signs[i],
                        alignment: fold.alignments[i],
                    })
                    .collect();
                let min_alignment = fold.alignments.iter().copied().fold(1.0, f64::min);
                return Ok(Transport {
                    curve: curve.name.clone(),
                    samples_used: n,
                    min_alignment,
                    samples,
                    metrics,
                });
            }
            Err((_, alignment)) => {
                if n * 2 > MAX_TRANSPORT_SAMPLES {
                    return Err(Error::ResolutionExceeded {
                        curve: curve.name.clone(),
                        samples: n,
                        alignment,
                    });
                }
                n *= 2;
            }
        }
    }
}

/// `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Holonomy {
    #[serde(rename = "+1")]
    Trivial,
    #[serde(rename = "-1")]
    Flip,
}

impl Holonomy {
    pub fn value(self) -> i8 {
        match self {
            Holonomy::Trivial => 1,
            Holonomy::Flip => -1,
        }
    }

    pub fn from_sign(sign: f64) -> Self {
        if sign < 0.0 {
            Holonomy::Flip
        } else {
            Holonomy::Trivial
        }
    }
}

impl fmt::Display for Holonomy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolonomyResult {
    pub loop_name: String,
    pub holonomy: Holonomy,
    pub samples_used: usize,
    pub min_alignment: f64,
    /// Low-confidence time lines met along the loop.
    pub warnings: Vec<String>,
}

/// First low-confidence warning along a transport, with a count of the rest.
fn transport_warnings(t: &Transport) -> Vec<String> {
    let flagged: Vec<&LineFieldSample> =
        t.samples.iter().filter(|s| s.line.low_confidence).collect();
    let Some(first) = flagged.first() else {
        return Vec::new();
    };
    let mut out = vec![format!(
        "{} at s = {}: {}",
        t.curve,
        first.param,
        first.line.warning().expect("flagged")
    )];
    if flagged.len() > 1 {
        out.push(format!(
            "{}: {} of {} samples have a low-confidence time line",
            t.curve,
            flagged.len(),
            t.samples.len()
        ));
    }
    out
}

/// Close a transport: compare the last representative with the first one,
/// which sit over the same manifold point.
pub fn close_transport(t: &Transport) -> Result<HolonomyResult> {
    let first = t
        .samples
        .first()
        .ok_or(Error::Invalid("empty transport".into()))?;
    let last = t.samples.last().expect("non-empty");
    let a = normalized_inner(&t.metrics[0], &last.representative, &first.representative);
    if a.abs() < ALIGNMENT_THRESHOLD {
        return Err(Error::ResolutionExceeded {
            curve: t.curve.clone(),
            samples: t.samples_used,
            alignment: a,
        });
    }
    Ok(HolonomyResult {
        loop_name: t.curve.clone(),
        holonomy: Holonomy::from_sign(a),
        samples_used: t.samples_used,
        min_alignment: t.min_alignment.min(a.abs()),
        warnings: transport_warnings(t),
    })
}

pub fn holonomy(spec: &SpacetimeSpec, lp: &LoopCurve, n_samples: usize) -> Result<HolonomyResult> {
    holonomy_with(spec, lp, n_samples, Execution::default())
}

pub fn holonomy_with(
    spec: &SpacetimeSpec,
    lp: &LoopCurve,
    n_samples: usize,
    exec: Execution,
) -> Result<HolonomyResult> {
    spec.check_closure(lp)?;
    let t = transport_line_with(spec, lp, n_samples, exec)?;
    close_transport(&t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "Orientable-on-tested-loops")]
    OrientableOnTestedLoops,
    NotOrientable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::OrientableOnTestedLoops => "Orientable-on-tested-loops",
            Verdict::NotOrientable => "NotOrientable",
        })
    }
}

pub const TESTED_LOOPS_CAVEAT: &str = "orientable on the tested loops only: a global conclusion requires the declared loops to generate H1(M; Z/2)";
pub const NO_LOOPS_CAVEAT: &str =
    "no loops declared: the verdict carries no information about w1(T)";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrientabilityVerdict {
    pub holonomies: Vec<HolonomyResult>,
    pub verdict: Verdict,
}

impl OrientabilityVerdict {
    pub fn from_holonomies(holonomies: Vec<HolonomyResult>) -> Self {
        let verdict = if holonomies.iter().any(|h| h.holonomy == Holonomy::Flip) {
            Verdict::NotOrientable
        } else {
            Verdict::OrientableOnTestedLoops
        };
        Self {
            holonomies,
            verdict,
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .holonomies
            .iter()
            .flat_map(|h| h.warnings.iter().cloned())
            .collect();
        if self.verdict == Verdict::OrientableOnTestedLoops {
            if self.holonomies.is_empty() {
                out.push(NO_LOOPS_CAVEAT.to_string());
            }
            out.push(TESTED_LOOPS_CAVEAT.to_string());
        }
        out
    }
}

/// Holonomy of every declared loop.
pub fn orientability(spec: &SpacetimeSpec, n_samples: usize) -> Result<OrientabilityVerdict> {
    orientability_with(spec, n_samples, Execution::default())
}

pub fn orientability_with(
    spec: &SpacetimeSpec,
    n_samples: usize,
    exec: Execution,
) -> Result<OrientabilityVerdict> {
    let holonomies = spec
        .loops
        .iter()
        .map(|lp| holonomy_with(spec, lp, n_samples, exec))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrientabilityVerdict::from_holonomies(holonomies))
}

/// A section `p ↦ multiplier(p) · line_at(p).direction` of the time bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialSection {
    pub source: String,
    pub multiplier: Expr,
}

impl PartialSection {
    pub fn parse(spec: &SpacetimeSpec, src: &str) -> Result<Self> {
        Ok(Self {
            source: src.to_string(),
            multiplier: spec.compile(src, "section multiplier")?,
        })
    }

    pub fn value_at(&self, spec: &SpacetimeSpec, p: &Point) -> Result<(f64, TimeLine, Vec4)> {
        let line = line_at(spec, p)?;
        let m = eval(&self.multiplier, &spec.binding(p))
            .map_err(|e| Error::in_expr("section multiplier", e))?;
        Ok((m, line, line.direction * m))
    }
}

/// One sampled coordinate: `n` points covering `[lo, hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridAxis {
    pub coord: usize,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl GridAxis {
    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / self.n as f64
    }

    pub fn value(&self, k: usize) -> f64 {
        self.lo + k as f64 * self.step()
    }
}

/// A product grid: sampled axes, every other coordinate fixed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Grid {
    pub axes: Vec<GridAxis>,
    pub base: [f64; 4],
}

impl Grid {
    /// Parse `coord=lo:hi:n` (sampled) and `coord=value` (fixed) entries,
    /// comma separated. Unmentioned coordinates sit at the midpoint of the
    /// spec's sampling box.
    pub fn parse(spec: &SpacetimeSpec, text: &str) -> Result<Self> {
        let mut base = [f64::NAN; 4];
        let mut axes = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, range) = item
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("grid entry `{item}` lacks `=`")))?;
            let coord = spec
                .coord_index(name.trim())
                .ok_or_else(|| Error::UnknownCoordinate {
                    name: name.trim().to_string(),
                    context: "grid".into(),
                })?;
            if !base[coord].is_nan() || axes.iter().any(|a: &GridAxis| a.coord == coord) {
                return Err(Error::Invalid(format!(
                    "coordinate `{}` given twice",
                    name.trim()
                )));
            }
            let parts: Vec<&str> = range.split(':').collect();
            match parts.as_slice() {
                [value] => base[coord] = spec.constant_value(value, "grid value")?,
                [lo, hi, n] => {
                    let lo = spec.constant_value(lo, "grid bound")?;
                    let hi = spec.constant_value(hi, "grid bound")?;
                    let n: usize = n.trim().parse().map_err(|_| {
                        Error::Invalid(format!("grid count `{n}` is not an integer"))
                    })?;
                    if n == 0 || !(hi > lo) {
                        return Err(Error::Invalid(format!(
                            "grid axis `{}` needs hi > lo and n ≥ 1",
                            name.trim()
                        )));
                    }
                    axes.push(GridAxis { coord, lo, hi, n });
                }
                _ => {
                    return Err(Error::Invalid(format!(
                        "grid entry `{item}` must be coord=value or coord=lo:hi:n"
                    )))
                }
            }
        }
        for (i, slot) in base.iter_mut().enumerate() {
            if slot.is_nan() {
                let (lo, hi) = match axes.iter().find(|a| a.coord == i) {
                    Some(a) => (a.lo, a.lo),
                    None => spec.sampling_box[i]
                        .ok_or_else(|| Error::MissingBox(spec.coords[i].clone()))?,
                };
                *slot = 0.5 * (lo + hi);
            }
        }
        Ok(Grid { axes, base })
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.n).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Multi-index of flat index `i`; the last axis varies fastest.
    pub fn index(&self, mut i: usize) -> Vec<usize> {
        let mut idx = vec![0; self.axes.len()];
        for (slot, a) in idx.iter_mut().zip(&self.axes).rev() {
            *slot = i % a.n;
            i /= a.n;
        }
        idx
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.axes)
            .fold(0, |acc, (k, a)| acc * a.n + k)
    }

    pub fn point(&self, idx: &[usize]) -> Point {
        let mut c = self.base;
        for (k, a) in idx.iter().zip(&self.axes) {
            c[a.coord] = a.value(*k);
        }
        Point(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectionSample {
    pub point: Point,
    pub multiplier: f64,
    /// `multiplier · direction`; the local future direction when nonzero.
    pub value: Vec4,
    pub zero: bool,
}

/// Where a zero of the multiplier was located along one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroBracket {
    pub axis: String,
    /// Bracketing grid points (may wrap around a periodic axis).
    pub from: Point,
    pub to: Point,
    /// Interpolated (sign change) or midpoint (zero run) location on the axis.
    pub estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionReport {
    pub multiplier: String,
    pub max_abs_multiplier: f64,
    pub zero_threshold: f64,
    pub samples: Vec<SectionSample>,
    pub zero_points: Vec<Point>,
    pub zero_brackets: Vec<ZeroBracket>,
    pub warnings: Vec<String>,
}

/// A 1-D zero location in index space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bracket1d {
    /// Strict sign change between `k` and `k + 1` (mod n when wrapping).
    SignChange(usize),
    /// Maximal run of zero samples `first..=last` (cyclic when wrapping).
    ZeroRun { first: usize, last: usize },
}

/// Zero runs and sign changes of a sampled function on a line.
///
/// `wrap` treats the samples as cyclic. A zero run absorbs any sign change
/// across it, so a transversal zero landing exactly on a grid point is
/// reported once.
pub fn zero_brackets_1d(values: &[f64], threshold: f64, wrap: bool) -> Vec<Bracket1d> {
    let n = values.len();
    let class = |x: f64| -> i8 {
        if x.abs() <= threshold {
            0
        } else if x > 0.0 {
            1
        } else {
            -1
        }
    };
    let classes: Vec<i8> = values.iter().map(|&x| class(x)).collect();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    if classes.iter().all(|&c| c == 0) {
        out.push(Bracket1d::ZeroRun {
            first: 0,
            last: n - 1,
        });
        return out;
    }
    // wrapping scan starts just after the first nonzero sample
    let (start, mut last_sign) = if wrap {
        let f = (0..n).find(|&i| classes[i] != 0).expect("some nonzero");
        (f + 1, Some(classes[f]))
    } else {
        (0, None)
    };
    let mut run_start: Option<usize> = None;
    for k in 0..n {
        let i = (start + k) % n;
        let c = classes[i];
        if c == 0 {
            run_start.get_or_insert(i);
            continue;
        }
        if let Some(first) = run_start.take() {
            out.push(Bracket1d::ZeroRun {
                first,
                last: (i + n - 1) % n,
            });
        } else if last_sign.is_some_and(|s| s != c) {
            out.push(Bracket1d::SignChange((i + n - 1) % n));
        }
        last_sign = Some(c);
    }
    if let Some(first) = run_start {
        out.push(Bracket1d::ZeroRun { first, last: n - 1 });
    }
    out
}

pub fn evaluate_section(
    spec: &SpacetimeSpec,
    s: &PartialSection,
    grid: &Grid,
) -> Result<SectionReport> {
    evaluate_section_with(spec, s, grid, Execution::default())
}

pub fn evaluate_section_with(
    spec: &SpacetimeSpec,
    s: &PartialSection,
    grid: &Grid,
    exec: Execution,
) -> Result<SectionReport> {
    let evaluated = exec.map_range(grid.len(), |i| {
        let p = grid.point(&grid.index(i));
        s.value_at(spec, &p)
            .map(|(m, line, v)| (p, m, v, line.warning()))
    });
    let evaluated = evaluated.into_iter().collect::<Result<Vec<_>>>()?;
    let mut warnings = Vec::new();
    let flagged: Vec<_> = evaluated
        .iter()
        .filter_map(|e| e.3.as_ref().map(|w| (e.0, w)))
        .collect();
    if let Some((p, w)) = flagged.first() {
        warnings.push(format!("at {:?}: {w}", p.0));
        if flagged.len() > 1 {
            warnings.push(format!(
                "{} of {} grid points have a low-confidence time line",
                flagged.len(),
                evaluated.len()
            ));
        }
    }
    let evaluated: Vec<(Point, f64, Vec4)> =
        evaluated.into_iter().map(|e| (e.0, e.1, e.2)).collect();
    let max_abs = evaluated.iter().fold(0.0_f64, |m, e| m.max(e.1.abs()));
    let threshold = ZERO_RTOL * max_abs;
    let samples: Vec<SectionSample> = evaluated
        .iter()
        .map(|&(point, multiplier, value)| SectionSample {
            point,
            multiplier,
            value,
            zero: multiplier.abs() <= threshold,
        })
        .collect();
    let zero_points = samples.iter().filter(|s| s.zero).map(|s| s.point).collect();

    let mut zero_brackets = Vec::new();
    for (ax, axis) in grid.axes.iter().enumerate() {
        let wrap = spec
            .period(axis.coord)
            .is_some_and(|p| ((axis.hi - axis.lo) - p).abs() <= 1e-12 * p.max(1.0));
        // Every line of the grid running along this axis.
        for line_start in 0..grid.len() {
            let mut idx = grid.index(line_start);
            if idx[ax] != 0 {
                continue;
            }
            let flats: Vec<usize> = (0..axis.n)
                .map(|k| {
                    idx[ax] = k;
                    grid.flat(&idx)
                })
                .collect();
            let values: Vec<f64> = flats.iter().map(|&f| samples[f].multiplier).collect();
            for b in zero_brackets_1d(&values, threshold, wrap) {
                let (from, to, estimate) = match b {
                    Bracket1d::SignChange(k) => {
                        let k1 = (k + 1) % axis.n;
                        let (m0, m1) = (values[k], values[k1]);
                        let x0 = axis.value(k);
                        let t = m0 / (m0 - m1);
                        (
                            flats[k],
                            flats[k1],
                            wrap_coord(x0 + t * axis.step(), axis, wrap),
                        )
                    }
                    Bracket1d::ZeroRun { first, last } => {
                        let len = (last + axis.n - first) % axis.n;
                        let mid = axis.value(first) + 0.5 * len as f64 * axis.step();
                        let before = if wrap || first > 0 {
                            (first + axis.n - 1) % axis.n
                        } else {
                            first
                        };
                        let after = if wrap || last + 1 < axis.n {
                            (last + 1) % axis.n
                        } else {
                            last
                        };
                        (flats[before], flats[after], wrap_coord(mid, axis, wrap))
                    }
                };
                zero_brackets.push(ZeroBracket {
                    axis: spec.coords[axis.coord].clone(),
                    from: samples[from].point,
                    to: samples[to].point,
                    estimate,
                });
            }
        }
    }

    Ok(SectionReport {
        multiplier: s.source.clone(),
        max_abs_multiplier: max_abs,
        zero_threshold: threshold,
        samples,
        zero_points,
        zero_brackets,
        warnings,
    })
}

fn wrap_coord(x: f64, axis: &GridAxis, wrap: bool) -> f64 {
    if wrap && x >= axis.hi {
        x - (axis.hi - axis.lo)
    } else {
        x
    }
}
