//! Error type shared by every numeric module in the crate.

use core::fmt;

/// Failure modes of the physics and numerics kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An argument violated a documented domain constraint.
    ///
    /// The message names the offending quantity and the constraint, e.g.
    /// `"omega_c must be positive"`.
    Domain(&'static str),
    /// Adaptive quadrature exhausted its panel budget before reaching the
    /// requested absolute tolerance.
    QuadNoConvergence {
        /// Tolerance that was asked for.
        requested: f64,
        /// Error estimate actually achieved.
        achieved: f64,
    },
    /// The Bloch integrator reached `t_max` with the right-hand side still
    /// above the stationarity tolerance.
    OdeNoConvergence {
        /// Max-norm of the right-hand side at the final state.
        residual: f64,
        /// Integration horizon that was exhausted.
        t_max: f64,
    },
    /// A scalar maximization found an objective that is constant to machine
    /// precision over the whole bracket, so no maximum can be isolated.
    FlatObjective,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::QuadNoConvergence {
                requested,
                achieved,
            } => write!(
                f,
                "quadrature did not converge: requested tolerance {requested:e}, achieved {achieved:e}"
            ),
            Error::OdeNoConvergence { residual, t_max } => write!(
                f,
                "steady-state integration did not converge: residual {residual:e} after t_max = {t_max}"
            ),
            Error::FlatObjective => {
                write!(f, "objective is flat over the bracket; no maximum to refine")
            }
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
