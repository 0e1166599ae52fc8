//! Rigorous numerical integration of piecewise analytic functions along
//! straight-line paths in the complex plane, in arbitrary-precision ball
//! arithmetic.
//!
//! Every result is a mathematically guaranteed enclosure `[m +/- r]`: the
//! exact integral lies inside, whatever the working precision, tolerances,
//! or step limits were. Tightness degrades gracefully (and is reported via
//! the `converged` flag); containment never does.
//!
//! The integrator combines adaptive bisection with degree-adaptive
//! Gauss-Legendre quadrature. On each subinterval it either takes a cheap
//! direct enclosure or proves an error bound by evaluating the integrand on
//! complex boxes around Bernstein ellipses; subintervals where neither works
//! are bisected. Functions with jumps, kinks, or branch cuts along the path
//! are handled through piecewise analytic extensions (see [`piecewise`])
//! whose analyticity flag tells the integrator when a box is safe.
//!
//! # Example
//!
//! ```
//! use ballquad::{integrate, ComplexBox, Integrand, IntegrationOptions, Precision, RuleCache};
//!
//! // \int_0^1 dx/(1+x^2) = pi/4
//! let f = |z: &ComplexBox, _d: bool, prec: Precision| {
//!     ComplexBox::one().div(&ComplexBox::one().add(&z.mul(z, prec), prec), prec)
//! };
//! let prec = Precision::new(64);
//! let opts = IntegrationOptions::new(prec);
//! let cache = RuleCache::new();
//! let res = integrate(
//!     &f,
//!     &ComplexBox::zero(),
//!     &ComplexBox::one(),
//!     &opts,
//!     &cache,
//! )
//! .unwrap();
//! assert!(res.converged);
//! let quarter_pi = ballquad::RealBall::pi(prec).mul_2exp(-2);
//! assert!(res.value.re().overlaps(&quarter_pi));
//! ```

pub mod complex;
pub mod error;
pub mod format;
pub mod gauss;
pub mod integrate;
pub mod mag;
pub mod piecewise;
pub mod prec;
pub mod real;

pub use complex::ComplexBox;
pub use error::Error;
pub use gauss::{allowed_degrees, QuadratureRule, RuleCache, RuleCacheStats};
pub use integrate::{
    direct_enclosure, integrate, tail_bound, Integrand, IntegrationOptions, IntegrationResult,
    IntegrationStats, QueueMode, SubIntervalTask, WorkQueue,
};
pub use mag::{Mag, MAG_PREC};
pub use piecewise::{
    abs_ext, ceil_ext, floor_ext, log_analytic, max_ext, min_ext, sgn_ext, sqrt_analytic,
};
pub use prec::Precision;
pub use real::RealBall;

/// The arbitrary-precision floating-point midpoint type (re-exported).
pub use rug::Float;
