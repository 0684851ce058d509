//! Numerical verification toolkit for the Cauchy-Schlomilch transformation
//! and its extensions.
//!
//! The central identity states that for a, b > 0 and suitable f,
//!
//! ```text
//! ∫₀^∞ f((a·x − b/x)²) dx = (1/a) ∫₀^∞ f(y²) dy .
//! ```
//!
//! This crate evaluates both sides of that identity (and a catalog of
//! integral evaluations derived from it) by double-exponential quadrature,
//! checks the closed forms against a self-contained special-function kernel,
//! verifies the underlying combinatorial identities in exact rational
//! arithmetic, and implements the transformation-of-scale probability
//! distributions the identity gives rise to.
//!
//! Modules:
//!
//! - [`expr`] — small expression language for supplying integrands textually
//! - [`specfun`] — gamma/beta, Bessel I and J, erf, Si, eta/zeta, elliptic, ₂F₃
//! - [`quad`] — tanh-sinh / exp-sinh quadrature with endpoint-singularity care
//! - [`transform`] — transformed-integrand builders and theorem verification
//! - [`identities`] — exact BigRational checks of the binomial-sum identities
//! - [`catalog`] — the machine-checkable roster of evaluated integrals
//! - [`distributions`] — transformation-of-scale densities, samplers, asymmetry
//! - [`cli`] — command-line front end

// Full-precision literals and NaN-rejecting `!(x > 0)` guards are both
// deliberate throughout the numerical code.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod distributions;
pub mod expr;
pub mod identities;
pub mod quad;
pub mod report;
pub mod specfun;
pub mod transform;

use std::sync::Arc;

/// Shared callable abstraction `x ↦ real`: the lingua franca between the
/// parser, the transform builders, and the quadrature layer.
///
/// Compiled functions are immutable and may be called from any thread.
pub type RealFunction = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Wrap a closure as a [`RealFunction`].
pub fn real_fn<F>(f: F) -> RealFunction
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
{
    Arc::new(f)
}
