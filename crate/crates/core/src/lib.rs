//! Time/space separation on Lorentzian 4-manifolds.
//!
//! Given a Lorentzian metric `g` and an auxiliary Riemannian metric `h`,
//! the `h`-identification of `g` with a self-map has a single negative
//! eigenvalue. Its eigenline field is the time bundle `T`. This crate
//! computes that field, tests whether `T` is trivial along user-supplied
//! loops, evaluates sections of `T`, and differentiates vector fields along
//! sections of `T` and of its `g`-orthogonal complement.
//!
//! Modules, bottom-up:
//!
//! - [`eigen`]: Jacobi and Cholesky-reduced generalized eigensolvers
//! - [`form`]: pointwise bilinear-form algebra and causal classification
//! - [`dsl`]: the expression language used in spec files
//! - [`spacetime`]: TOML spec loading and pointwise metric evaluation
//! - [`separation`]: timelike vector ⇄ Riemannian metric
//! - [`bundle`]: line field, holonomy, orientability, sections
//! - [`covariant`]: Christoffel symbols and time/space derivatives

pub mod bundle;
pub mod covariant;
pub mod dsl;
pub mod eigen;
pub mod error;
pub mod form;
pub mod par;
pub mod random;
pub mod separation;
pub mod spacetime;

pub use error::{Error, Result};
pub use form::{CausalClass, Signature, SymmetricForm4, Vec4};
pub use par::Execution;
pub use spacetime::{load_spec, LoopCurve, Point, SpacetimeSpec};
