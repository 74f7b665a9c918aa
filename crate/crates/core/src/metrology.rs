//! Temperature metrology: quantum Fisher information of the stationary
//! populations and the Cramér–Rao bound it implies.
//!
//! The stationary density matrix is diagonal in the information-carrying
//! sense used here: only the populations `(P_e, 1 - P_e)` respond to
//! temperature in a way that survives the long-time limit, so the quantum
//! Fisher information reduces to the classical Fisher information of the
//! population distribution,
//!
//! ```text
//! F_Q = sum_i (d p_i / dT)^2 / p_i = (dP_e/dT)^2 / (P_e (1 - P_e)),
//! ```
//!
//! with the symmetric logarithmic derivative diagonal as well,
//! `L_ii = (d p_i / dT) / p_i`. Both the sum form and the compact two-level
//! form are implemented so they can cross-check each other.

use crate::bath::{effective_drive, renormalized_at, BathConfig, ProbeConfig, RenormalizedQuantities};
use crate::error::{Error, Result};
use crate::steady_state::{steady_population_closed, steady_population_dt_analytic, Variant};
use alloc::vec::Vec;

/// Slack allowed when checking that populations sum to 1 and derivatives
/// sum to 0.
const SUM_SLACK: f64 = 1e-12;

/// Lower bound on the variance of a temperature estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarianceBound {
    /// Finite Cramér–Rao bound `1 / (nu * F_Q)`.
    Finite(f64),
    /// No information: zero Fisher information makes the variance bound
    /// infinite. Represented explicitly rather than as an error because it
    /// is a legitimate physical answer (e.g. at vanishing coupling).
    Unbounded,
}

impl VarianceBound {
    /// Numeric view: the bound, or `f64::INFINITY` when unbounded.
    pub fn as_f64(self) -> f64 {
        match self {
            VarianceBound::Finite(v) => v,
            VarianceBound::Unbounded => f64::INFINITY,
        }
    }
}

/// Full sensitivity record at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QfiPoint {
    /// Temperature the record was evaluated at.
    pub temperature: f64,
    /// Quantum Fisher information with respect to temperature.
    pub f_q: f64,
    /// Stationary excited population.
    pub p_e: f64,
    /// Analytic temperature derivative of the population.
    pub dpe_dt: f64,
    /// Cramér–Rao bound for a single measurement (`nu = 1`).
    pub variance_bound_single_shot: VarianceBound,
}

/// Compact two-level Fisher information
/// `(dP_e/dT)^2 / (P_e (1 - P_e))`.
///
/// Requires `0 < p_e < 1`; the boundary populations carry no admissible
/// derivative and are rejected.
pub fn qfi_from_population(p_e: f64, dpe_dt: f64) -> Result<f64> {
    if !(p_e > 0.0 && p_e < 1.0) {
        return Err(Error::Domain("P_e must lie strictly between 0 and 1"));
    }
    if !dpe_dt.is_finite() {
        return Err(Error::Domain("dPe_dT must be finite"));
    }
    Ok(dpe_dt * dpe_dt / (p_e * (1.0 - p_e)))
}

fn check_distribution(populations: &[f64], derivs: &[f64]) -> Result<()> {
    if populations.len() != derivs.len() {
        return Err(Error::Domain(
            "populations and derivatives must have equal length",
        ));
    }
    if populations.is_empty() {
        return Err(Error::Domain("populations must be non-empty"));
    }
    let mut p_sum = 0.0;
    let mut d_sum = 0.0;
    for (&p, &d) in populations.iter().zip(derivs) {
        if !(p > 0.0) {
            return Err(Error::Domain("every population must be positive"));
        }
        if !d.is_finite() {
            return Err(Error::Domain("every derivative must be finite"));
        }
        p_sum += p;
        d_sum += d;
    }
    if (p_sum - 1.0).abs() > SUM_SLACK {
        return Err(Error::Domain("populations must sum to 1"));
    }
    if d_sum.abs() > SUM_SLACK {
        return Err(Error::Domain(
            "population derivatives must sum to 0 (trace preservation)",
        ));
    }
    Ok(())
}

/// Fisher information in sum form, `sum_i (d p_i)^2 / p_i`.
///
/// `populations` must be a strictly positive distribution summing to 1 and
/// `derivs` its trace-preserving derivative (summing to 0), both to within
/// `1e-12`.
pub fn qfi_sum_form(populations: &[f64], derivs: &[f64]) -> Result<f64> {
    check_distribution(populations, derivs)?;
    Ok(populations
        .iter()
        .zip(derivs)
        .map(|(&p, &d)| d * d / p)
        .sum())
}

/// Diagonal of the symmetric logarithmic derivative, `L_ii = d p_i / p_i`.
///
/// Same preconditions as [`qfi_sum_form`]. Satisfies
/// `sum_i p_i L_ii = 0` and `sum_i p_i L_ii^2 = F_Q`.
pub fn sld_diagonal(populations: &[f64], derivs: &[f64]) -> Result<Vec<f64>> {
    check_distribution(populations, derivs)?;
    Ok(populations
        .iter()
        .zip(derivs)
        .map(|(&p, &d)| d / p)
        .collect())
}

/// Cramér–Rao bound `Var(T) >= 1 / (nu * F_Q)` for `nu` independent
/// measurements.
///
/// Zero Fisher information yields [`VarianceBound::Unbounded`]; negative
/// `F_Q` or `nu = 0` are domain errors.
pub fn cramer_rao_bound(f_q: f64, nu: u64) -> Result<VarianceBound> {
    if !(f_q >= 0.0) {
        return Err(Error::Domain("F_Q must be non-negative"));
    }
    if nu == 0 {
        return Err(Error::Domain("nu (number of measurements) must be at least 1"));
    }
    let denom = nu as f64 * f_q;
    let bound = 1.0 / denom;
    if bound.is_finite() {
        Ok(VarianceBound::Finite(bound))
    } else {
        Ok(VarianceBound::Unbounded)
    }
}

/// Sensitivity record plus the dressed quantities it was derived from;
/// shared backend for [`qfi_at`] and the sweep engine.
pub(crate) fn qfi_with_renorm(
    probe: ProbeConfig,
    bath: BathConfig,
    temperature: f64,
    variant: Variant,
) -> Result<(QfiPoint, RenormalizedQuantities)> {
    let r = renormalized_at(probe, bath, temperature)?;
    let drive = effective_drive(probe, r.f);
    let p_e = steady_population_closed(r.omega_eff, r.gamma, drive, variant);
    let dpe_dt = steady_population_dt_analytic(probe, bath, temperature, variant)?;
    let f_q = qfi_from_population(p_e, dpe_dt)?;
    let point = QfiPoint {
        temperature,
        f_q,
        p_e,
        dpe_dt,
        variance_bound_single_shot: cramer_rao_bound(f_q, 1)?,
    };
    Ok((point, r))
}

/// Evaluates the full temperature-sensitivity record at one operating
/// point.
pub fn qfi_at(
    probe: ProbeConfig,
    bath: BathConfig,
    temperature: f64,
    variant: Variant,
) -> Result<QfiPoint> {
    qfi_with_renorm(probe, bath, temperature, variant).map(|(point, _)| point)
}
