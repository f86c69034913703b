//! Both directions of the time/space separation at a single point.
//!
//! * A timelike vector `v` induces a Riemannian metric: split
//!   `u = λ_u v + w_u` with `w_u ⟂_g v` and set
//!   `h(u, u') = −λ_u λ_{u'} g(v, v) + g(w_u, w_{u'})`.
//! * A Riemannian metric `h` turns `g` into a self-map through
//!   `h(G v, w) = g(v, w)`. That map is `h`-symmetric with exactly one
//!   negative eigenvalue; its eigenline is the time line.

use serde::Serialize;

use crate::eigen::generalized_eigen;
use crate::error::{Error, Result};
use crate::form::{classify_default, signature_relative, CausalClass, SymmetricForm4, Vec4};
use crate::spacetime::SIGNATURE_RTOL;

/// Default negative-eigenvalue threshold relative to `‖g‖∞`.
pub const EIGEN_COUNT_RTOL: f64 = 1e-10;

/// Gap below this fraction of the spectral radius marks a line as
/// low-confidence.
pub const LOW_CONFIDENCE_RTOL: f64 = 1e-8;

/// The `h`-unit timelike eigendirection at a point.
///
/// The direction is only defined up to sign; the stored representative has
/// its largest-magnitude component positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeLine {
    pub direction: Vec4,
    pub eigenvalue: f64,
    pub gap: f64,
    pub spectrum: [f64; 4],
    pub low_confidence: bool,
}

impl TimeLine {
    pub fn warning(&self) -> Option<String> {
        self.low_confidence.then(|| {
            format!(
                "low-confidence time line: eigenvalue gap {:e} is below {:e} of the spectrum",
                self.gap, LOW_CONFIDENCE_RTOL
            )
        })
    }
}

fn require_lorentzian(g: &SymmetricForm4) -> Result<()> {
    let found = signature_relative(g, SIGNATURE_RTOL);
    if found.is_lorentzian() {
        Ok(())
    } else {
        Err(Error::WrongSignature { found })
    }
}

fn require_riemannian(h: &SymmetricForm4) -> Result<()> {
    let found = signature_relative(h, SIGNATURE_RTOL);
    if found.is_riemannian() {
        Ok(())
    } else {
        Err(Error::NotRiemannian { found })
    }
}

/// Riemannian metric induced by the timelike vector `v`.
///
/// Polarising the quadratic formula with `λ_u = g(v,u)/g(v,v)` gives
/// `h = G − 2 (Gv)(Gv)ᵀ / g(v,v)`, which is what is computed. It depends on
/// `v` only through its line.
pub fn riemann_from_timelike(g: &SymmetricForm4, v: &Vec4) -> Result<SymmetricForm4> {
    require_lorentzian(g)?;
    if classify_default(g, v)? != CausalClass::Timelike {
        return Err(Error::NotTimelike);
    }
    let gv = g.apply(v);
    let gvv = gv.dot(v);
    let ge = g.entries();
    let mut h = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            h[i][j] = ge[i][j] - 2.0 * gv[i] * gv[j] / gvv;
        }
    }
    SymmetricForm4::from_upper(h)
}

/// Time line with the default eigenvalue-count tolerance.
pub fn timelike_line(g: &SymmetricForm4, h: &SymmetricForm4) -> Result<TimeLine> {
    timelike_from_riemann(g, h, EIGEN_COUNT_RTOL * g.max_abs())
}

/// Solve `g x = λ h x` and return the unique negative-eigenvalue direction.
pub fn timelike_from_riemann(g: &SymmetricForm4, h: &SymmetricForm4, tol: f64) -> Result<TimeLine> {
    require_lorentzian(g)?;
    require_riemannian(h)?;
    let ge = generalized_eigen(g.entries(), h.entries())?;
    let negatives = ge.values.iter().filter(|&&l| l < -tol).count();
    if negatives != 1 {
        return Err(Error::EigencountViolation { count: negatives });
    }
    let mut direction = Vec4(ge.vectors[0]);
    if direction[direction.argmax_abs()] < 0.0 {
        direction = -direction;
    }
    let eigenvalue = ge.values[0];
    let gap = ge.values[1] - ge.values[0];
    let radius = ge.values.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    Ok(TimeLine {
        direction,
        eigenvalue,
        gap,
        spectrum: ge.values,
        low_confidence: gap < LOW_CONFIDENCE_RTOL * radius,
    })
}

/// Residuals of composing both directions of the separation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RoundTrip {
    pub induced: SymmetricForm4,
    pub line: TimeLine,
    /// Angle between the recovered line and `span(v)`.
    pub angle: f64,
    /// `|λ_p + 1|`; the induced metric satisfies `h(v,·) = −g(v,·)`.
    pub eigenvalue_error: f64,
}

impl RoundTrip {
    pub fn passes(&self, tol: f64) -> bool {
        self.angle < tol && self.eigenvalue_error < tol
    }
}

pub fn roundtrip_check(g: &SymmetricForm4, v: &Vec4) -> Result<RoundTrip> {
    let induced = riemann_from_timelike(g, v)?;
    let line = timelike_line(g, &induced)?;
    Ok(RoundTrip {
        induced,
        angle: line.direction.line_angle(v),
        eigenvalue_error: (line.eigenvalue + 1.0).abs(),
        line,
    })
}
