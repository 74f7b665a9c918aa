//! Steady-state physics and temperature metrology for a coherently driven
//! two-level probe coupled to an Ohmic phonon bath.
//!
//! The crate computes polaron-renormalized probe quantities (dressing factor,
//! effective splitting, phonon-induced decay), the driven steady state via a
//! closed form and via direct integration of the Bloch equations, and the
//! temperature sensitivity of the excited-state population expressed as a
//! quantum Fisher information together with its Cramér–Rao variance bound.
//! Grid sweeps, two-dimensional maps, scalar maximization, and a built-in
//! cross-validation battery sit on top of those kernels.
//!
//! The crate is `no_std` (with `alloc`): all transcendentals go through
//! `libm`, so results are bit-reproducible across platforms that share an
//! IEEE-754 `f64`.

#![no_std]
#![deny(unsafe_code)]
// Negated comparisons such as `!(x > 0.0)` are deliberate: they reject NaN,
// which the suggested `x <= 0.0` would silently accept. Reference constants
// keep the full 17 significant digits they were generated with, even where
// fewer digits would round-trip.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bath;
pub mod error;
pub mod metrology;
pub mod ode;
pub mod quad;
pub mod steady_state;
pub mod sweep;
pub mod validate;

pub use error::{Error, Result};
pub use num_complex::Complex64;
