//! Ohmic bath spectral functions and polaron-renormalized probe quantities.
//!
//! The probe is a two-level system with bare splitting `omega0`, driven
//! coherently with amplitude `Omega`. The bath has spectral density
//! `J(w) = eta * w * exp(-w / omega_c)` (Ohmic exponent fixed at 1). Thermal
//! dressing multiplies the splitting by the factor
//! `f = exp(-(eta/omega_c) * (2 n(omega0, T) + 1))` and scales the
//! phonon-induced decay `gamma = 2 pi J(omega0) (n + 1) f`. Everything the
//! steady state needs — the dressed quantities and their exact temperature
//! derivatives — is bundled in [`RenormalizedQuantities`].
//!
//! All occupation-number arithmetic uses `expm1`-based forms so that the
//! high-temperature regime (`omega / T` small) keeps full relative accuracy.

use crate::error::{Error, Result};
use crate::quad;
use libm::{cos, exp, expm1, sin, tanh};
use num_complex::Complex64;

/// Upper integration limit for bath integrals, in units of `omega_c`.
///
/// The exponential cutoff makes the integrand at `50 omega_c` smaller than
/// `1e-21` relative to its peak, far below every tolerance used here.
pub const OMEGA_MAX_CUTOFF_UNITS: f64 = 50.0;

/// How the drive amplitude enters the steady-state equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DriveMode {
    /// The drive couples with its bare amplitude `Omega`.
    ///
    /// This is the default: a laboratory drive field is not dressed by the
    /// bath transformation that renormalizes the splitting.
    Bare,
    /// The drive amplitude is dressed by the same factor `f` as the
    /// splitting, i.e. `Omega_eff = Omega * f`.
    Renormalized,
}

/// Two-level probe parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeConfig {
    omega0: f64,
    drive: f64,
    drive_mode: DriveMode,
}

impl ProbeConfig {
    /// Creates a probe configuration.
    ///
    /// `omega0` is the bare level splitting and `drive` the coherent drive
    /// amplitude; both must be strictly positive and finite.
    pub fn new(omega0: f64, drive: f64, drive_mode: DriveMode) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::Domain("omega0 must be positive and finite"));
        }
        if !(drive > 0.0) || !drive.is_finite() {
            return Err(Error::Domain("Omega (drive amplitude) must be positive and finite"));
        }
        Ok(Self {
            omega0,
            drive,
            drive_mode,
        })
    }

    /// Bare level splitting.
    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Bare drive amplitude.
    pub fn drive(&self) -> f64 {
        self.drive
    }

    /// Drive dressing convention.
    pub fn drive_mode(&self) -> DriveMode {
        self.drive_mode
    }
}

/// Ohmic bath parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathConfig {
    eta: f64,
    omega_c: f64,
    s: f64,
}

impl BathConfig {
    /// Creates a bath configuration.
    ///
    /// `eta >= 0` is the dimensionless coupling, `omega_c > 0` the
    /// exponential cutoff, and `s` the Ohmicity exponent. Only the strictly
    /// Ohmic case `s = 1` is supported; any other exponent is rejected so
    /// that the closed-form dressing expressions below stay valid.
    pub fn new(eta: f64, omega_c: f64, s: f64) -> Result<Self> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::Domain("eta must be non-negative and finite"));
        }
        if !(omega_c > 0.0) || !omega_c.is_finite() {
            return Err(Error::Domain("omega_c must be positive and finite"));
        }
        if s != 1.0 {
            return Err(Error::Domain("s (Ohmicity exponent) must equal 1"));
        }
        Ok(Self { eta, omega_c, s })
    }

    /// Dimensionless coupling strength.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Exponential cutoff frequency.
    pub fn omega_c(&self) -> f64 {
        self.omega_c
    }

    /// Ohmicity exponent (always 1).
    pub fn s(&self) -> f64 {
        self.s
    }

    /// Upper limit used by the bath integrals, `50 * omega_c`.
    pub fn omega_max(&self) -> f64 {
        OMEGA_MAX_CUTOFF_UNITS * self.omega_c
    }
}

/// Dressed probe quantities at one temperature, with exact T-derivatives.
///
/// Produced by [`renormalized_at`]; every downstream quantity (steady-state
/// population, its temperature derivative, the Fisher information) is a pure
/// function of these numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenormalizedQuantities {
    /// Thermal dressing factor, in `(0, 1]`.
    pub f: f64,
    /// Dressed splitting `omega0 * f`.
    pub omega_eff: f64,
    /// Phonon-induced decay rate `2 pi J(omega0) (n + 1) f`.
    pub gamma: f64,
    /// Bose occupation `n(omega0, T)`.
    pub n: f64,
    /// `d n / d T` at the probe frequency.
    pub dn_dt: f64,
    /// `d f / d T`.
    pub df_dt: f64,
    /// `d omega_eff / d T`.
    pub domega_eff_dt: f64,
    /// `d gamma / d T`.
    pub dgamma_dt: f64,
}

/// Ohmic spectral density `J(w) = eta * w * exp(-w / omega_c)`.
///
/// Defined for `w >= 0`; `J(0) = 0`.
pub fn spectral_density(omega: f64, bath: BathConfig) -> Result<f64> {
    if !(omega >= 0.0) {
        return Err(Error::Domain("omega must be non-negative"));
    }
    Ok(bath.eta * omega * exp(-omega / bath.omega_c))
}

/// Bose occupation `n(w, T) = 1 / (exp(w/T) - 1)`.
///
/// Computed as `z / (1 - z)` with `z = exp(-w/T)` and `1 - z = -expm1(-w/T)`,
/// which keeps full relative accuracy for `w / T` down to the underflow
/// threshold (the naive form loses ~`w/T` relative digits there).
pub fn bose_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain("omega must be positive"));
    }
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive"));
    }
    let x = omega / temperature;
    let z = exp(-x);
    Ok(z / -expm1(-x))
}

/// Temperature derivative of the Bose occupation,
/// `dn/dT = (w / T^2) * exp(w/T) / (exp(w/T) - 1)^2`.
///
/// Uses the same `expm1`-stabilized form as [`bose_occupation`].
pub fn bose_occupation_dt(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::Domain("omega must be positive"));
    }
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive"));
    }
    let x = omega / temperature;
    let z = exp(-x);
    let one_minus_z = -expm1(-x);
    Ok((omega / (temperature * temperature)) * z / (one_minus_z * one_minus_z))
}

/// Thermal dressing factor `f = exp(-(eta/omega_c) * (2 n(omega0, T) + 1))`.
///
/// Always in `(0, 1]`; equals 1 exactly at `eta = 0` and decreases strictly
/// with both coupling and temperature. At extreme temperatures the
/// exponential may underflow to 0, which downstream code handles as the
/// fully dressed limit.
pub fn dressing_factor(bath: BathConfig, omega0: f64, temperature: f64) -> Result<f64> {
    let n = bose_occupation(omega0, temperature)?;
    Ok(exp(-(bath.eta / bath.omega_c) * (2.0 * n + 1.0)))
}

/// Dressing factor from its integral representation,
/// `exp(-1/2 * Int_{w_min}^{50 w_c} J(w)/w^2 * coth(w / 2T) dw)`.
///
/// The integrand behaves as `2 eta T / w` for small `w`, so the integral
/// diverges logarithmically as `w_min -> 0`; a strictly positive infrared
/// cutoff `omega_min < omega_c` is therefore required. This form is the
/// full multi-mode dressing exponent; the closed form [`dressing_factor`]
/// keeps only the resonant-mode contribution, so the two are *different*
/// quantities that agree only in order of magnitude.
pub fn dressing_factor_integral(
    bath: BathConfig,
    temperature: f64,
    omega_min: f64,
    quad_tol: f64,
) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive"));
    }
    if !(omega_min > 0.0 && omega_min < bath.omega_c) {
        return Err(Error::Domain("omega_min must satisfy 0 < omega_min < omega_c"));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Domain("quad_tol must be positive"));
    }
    // J(w)/w^2 * coth(w/2T) = (eta/w) e^{-w/omega_c} coth(w/2T)
    let integrand = |w: f64| (bath.eta / w) * exp(-w / bath.omega_c) / tanh(0.5 * w / temperature);
    let exponent = quad::integrate(integrand, omega_min, bath.omega_max(), quad_tol)?;
    Ok(exp(-0.5 * exponent))
}

/// Dressed quantities and their exact temperature derivatives at one point.
///
/// The derivative chain is fully analytic:
/// `df/dT = -2 (eta/omega_c) f dn/dT`,
/// `d omega_eff/dT = omega0 df/dT`,
/// `d gamma/dT = 2 pi J(omega0) [dn/dT * f + (n + 1) df/dT]`.
pub fn renormalized_at(
    probe: ProbeConfig,
    bath: BathConfig,
    temperature: f64,
) -> Result<RenormalizedQuantities> {
    let n = bose_occupation(probe.omega0, temperature)?;
    let dn_dt = bose_occupation_dt(probe.omega0, temperature)?;
    let ratio = bath.eta / bath.omega_c;
    let f = exp(-ratio * (2.0 * n + 1.0));
    let df_dt = -2.0 * ratio * f * dn_dt;
    let j0 = spectral_density(probe.omega0, bath)?;
    let two_pi_j0 = 2.0 * core::f64::consts::PI * j0;
    let gamma = two_pi_j0 * (n + 1.0) * f;
    let dgamma_dt = two_pi_j0 * (dn_dt * f + (n + 1.0) * df_dt);
    Ok(RenormalizedQuantities {
        f,
        omega_eff: probe.omega0 * f,
        gamma,
        n,
        dn_dt,
        df_dt,
        domega_eff_dt: probe.omega0 * df_dt,
        dgamma_dt,
    })
}

/// Drive amplitude actually entering the Bloch equations.
///
/// [`DriveMode::Bare`] returns `Omega`; [`DriveMode::Renormalized`] returns
/// `Omega * f` with the dressing factor supplied by the caller.
pub fn effective_drive(probe: ProbeConfig, f: f64) -> f64 {
    match probe.drive_mode {
        DriveMode::Bare => probe.drive,
        DriveMode::Renormalized => probe.drive * f,
    }
}

/// `w * coth(w / 2T)`, continuous at `w = 0` where it equals `2T`.
fn omega_coth_half(omega: f64, temperature: f64) -> f64 {
    let y = 0.5 * omega / temperature;
    if y == 0.0 {
        2.0 * temperature
    } else {
        2.0 * temperature * (y / tanh(y))
    }
}

/// Finite-temperature bath correlation function
/// `C(t) = Int_0^{50 w_c} J(w) [ n(w,T) e^{i w t} + (n(w,T)+1) e^{-i w t} ] dw`.
///
/// Split into real and imaginary parts,
/// `Re C = Int J(w) (2n+1) cos(wt) dw` and `Im C = -Int J(w) sin(wt) dw`,
/// each evaluated by adaptive quadrature to absolute tolerance `quad_tol`.
/// The combination `J(w)(2n+1) = eta e^{-w/omega_c} * w coth(w/2T)` is
/// smooth down to `w = 0` (limit `2 eta T`). Satisfies
/// `C(-t) = conj(C(t))`.
pub fn bath_correlation(
    t: f64,
    bath: BathConfig,
    temperature: f64,
    quad_tol: f64,
) -> Result<Complex64> {
    if !(temperature > 0.0) {
        return Err(Error::Domain("temperature must be positive"));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Domain("quad_tol must be positive"));
    }
    if !t.is_finite() {
        return Err(Error::Domain("t must be finite"));
    }
    let omega_max = bath.omega_max();
    let re_integrand =
        |w: f64| bath.eta * exp(-w / bath.omega_c) * omega_coth_half(w, temperature) * cos(w * t);
    let im_integrand = |w: f64| -bath.eta * w * exp(-w / bath.omega_c) * sin(w * t);
    let re = quad::integrate(re_integrand, 0.0, omega_max, quad_tol)?;
    let im = quad::integrate(im_integrand, 0.0, omega_max, quad_tol)?;
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bath(eta: f64, omega_c: f64) -> BathConfig {
        BathConfig::new(eta, omega_c, 1.0).unwrap()
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert!(ProbeConfig::new(0.0, 0.5, DriveMode::Bare).is_err());
        assert!(ProbeConfig::new(-1.0, 0.5, DriveMode::Bare).is_err());
        assert!(ProbeConfig::new(1.0, 0.0, DriveMode::Bare).is_err());
        assert!(ProbeConfig::new(1.0, f64::NAN, DriveMode::Bare).is_err());
        assert!(ProbeConfig::new(1.0, 0.5, DriveMode::Bare).is_ok());

        assert!(BathConfig::new(-0.1, 5.0, 1.0).is_err());
        assert!(BathConfig::new(0.6, 0.0, 1.0).is_err());
        assert!(BathConfig::new(0.6, 5.0, 0.5).is_err());
        assert!(BathConfig::new(0.6, 5.0, 2.0).is_err());
        assert!(BathConfig::new(0.0, 5.0, 1.0).is_ok());
    }

    #[test]
    fn spectral_density_matches_reference_point() {
        // J(5) with eta = 1, omega_c = 5 equals 5/e.
        let j = spectral_density(5.0, bath(1.0, 5.0)).unwrap();
        assert!(rel_close(j, 1.8393972058572116, 1e-15), "J = {j}");
        assert_eq!(spectral_density(0.0, bath(1.0, 5.0)).unwrap(), 0.0);
        assert!(spectral_density(-1.0, bath(1.0, 5.0)).is_err());
    }

    #[test]
    fn bose_occupation_matches_reference_points() {
        // n(1, 1) = 1/(e - 1)
        let n = bose_occupation(1.0, 1.0).unwrap();
        assert!(rel_close(n, 0.58197670686932642, 1e-15), "n = {n}");
        // High-temperature value requires the expm1 form for full accuracy.
        let n_hot = bose_occupation(1.0, 1000.0).unwrap();
        assert!(
            rel_close(n_hot, 999.50008333333192, 1e-14),
            "n_hot = {n_hot}"
        );
        // Classical expansion: n - (T - 1/2) = 1/(12 T) + O(1/T^3).
        assert!((n_hot - 999.5 - 1.0 / 12000.0).abs() < 1e-11);
        assert!(bose_occupation(1.0, 0.0).is_err());
        assert!(bose_occupation(1.0, -1.0).is_err());
        assert!(bose_occupation(0.0, 1.0).is_err());
    }

    #[test]
    fn bose_occupation_dt_matches_reference_points() {
        // dn/dT at (1, 1) = e/(e-1)^2
        let d = bose_occupation_dt(1.0, 1.0).unwrap();
        assert!(rel_close(d, 0.92067359420779232, 1e-15), "dn_dt = {d}");
        // High-temperature limit dn/dT -> 1/omega.
        let d_hot = bose_occupation_dt(1.0, 50.0).unwrap();
        assert!(
            rel_close(d_hot, 0.99996666733332276, 1e-14),
            "dn_dt hot = {d_hot}"
        );
    }

    #[test]
    fn bose_occupation_dt_agrees_with_finite_difference() {
        for &(omega, t) in &[(1.0, 0.3), (1.0, 1.0), (2.5, 4.0), (0.5, 10.0)] {
            let h = 1e-6 * t;
            let fd = (bose_occupation(omega, t + h).unwrap()
                - bose_occupation(omega, t - h).unwrap())
                / (2.0 * h);
            let an = bose_occupation_dt(omega, t).unwrap();
            assert!(rel_close(an, fd, 1e-8), "omega={omega} T={t}: {an} vs {fd}");
        }
    }

    #[test]
    fn dressing_factor_matches_reference_points() {
        let f = dressing_factor(bath(0.6, 5.0), 1.0, 1.0).unwrap();
        assert!(rel_close(f, 0.77130267363397536, 1e-15), "f = {f}");
        // eta = 0 leaves the probe exactly undressed.
        assert_eq!(dressing_factor(bath(0.0, 5.0), 1.0, 1.0).unwrap(), 1.0);
        // Defaults operating point.
        let f_def = dressing_factor(bath(0.6, 0.8), 1.0, 1.0).unwrap();
        assert!(rel_close(f_def, 0.19731278656897817, 1e-15), "f = {f_def}");
    }

    #[test]
    fn dressing_factor_is_strictly_monotonic() {
        let mut prev = dressing_factor(bath(0.0, 5.0), 1.0, 1.0).unwrap();
        for i in 1..=40 {
            let eta = 0.1 * i as f64;
            let f = dressing_factor(bath(eta, 5.0), 1.0, 1.0).unwrap();
            assert!(f < prev, "f not decreasing in eta at eta = {eta}");
            prev = f;
        }
        let mut prev = dressing_factor(bath(0.6, 5.0), 1.0, 0.05).unwrap();
        for i in 1..=40 {
            let t = 0.05 + 0.15 * i as f64;
            let f = dressing_factor(bath(0.6, 5.0), 1.0, t).unwrap();
            assert!(f < prev, "f not decreasing in T at T = {t}");
            prev = f;
        }
    }

    #[test]
    fn renormalized_chain_matches_reference_points() {
        let probe = ProbeConfig::new(1.0, 0.5, DriveMode::Bare).unwrap();
        let r = renormalized_at(probe, bath(0.6, 5.0), 1.0).unwrap();
        assert!(rel_close(r.f, 0.77130267363397536, 1e-15));
        assert!(rel_close(r.omega_eff, 0.77130267363397536, 1e-15));
        assert!(rel_close(r.gamma, 3.766145928348199, 1e-14), "gamma = {}", r.gamma);
        assert!(rel_close(r.n, 0.58197670686932642, 1e-15));
        assert!(rel_close(r.dn_dt, 0.92067359420779232, 1e-15));
        assert!(rel_close(r.df_dt, -0.17042832114160126, 1e-14), "df_dt = {}", r.df_dt);
        assert!(rel_close(r.domega_eff_dt, -0.17042832114160126, 1e-14));
        assert!(
            rel_close(r.dgamma_dt, 1.3596353390101961, 1e-14),
            "dgamma_dt = {}",
            r.dgamma_dt
        );

        let r_def = renormalized_at(probe, bath(0.6, 0.8), 1.0).unwrap();
        assert!(rel_close(r_def.f, 0.19731278656897817, 1e-15));
        assert!(
            rel_close(r_def.gamma, 0.33714624805653963, 1e-14),
            "gamma = {}",
            r_def.gamma
        );
    }

    #[test]
    fn renormalized_derivatives_agree_with_finite_differences() {
        let probe = ProbeConfig::new(1.0, 0.5, DriveMode::Bare).unwrap();
        for &(eta, wc, t) in &[(0.6, 5.0, 1.0), (0.6, 0.8, 1.0), (2.0, 0.8, 0.4), (0.1, 3.0, 2.5)] {
            let b = bath(eta, wc);
            let h = 1e-6 * t;
            let hi = renormalized_at(probe, b, t + h).unwrap();
            let lo = renormalized_at(probe, b, t - h).unwrap();
            let r = renormalized_at(probe, b, t).unwrap();
            let df_fd = (hi.f - lo.f) / (2.0 * h);
            let dg_fd = (hi.gamma - lo.gamma) / (2.0 * h);
            assert!(rel_close(r.df_dt, df_fd, 1e-7), "df {} vs {}", r.df_dt, df_fd);
            assert!(rel_close(r.dgamma_dt, dg_fd, 1e-7), "dg {} vs {}", r.dgamma_dt, dg_fd);
        }
    }

    #[test]
    fn effective_drive_respects_mode() {
        let bare = ProbeConfig::new(1.0, 0.5, DriveMode::Bare).unwrap();
        let dressed = ProbeConfig::new(1.0, 0.5, DriveMode::Renormalized).unwrap();
        assert_eq!(effective_drive(bare, 0.25), 0.5);
        assert_eq!(effective_drive(dressed, 0.25), 0.125);
    }

    #[test]
    fn dressing_factor_integral_matches_reference_points() {
        let b = bath(0.6, 5.0);
        for &(omega_min, want) in &[
            (0.25, 0.1144072666234447),
            (0.5, 0.3546329967504119),
            (1.0, 0.6109040382642728),
        ] {
            let f = dressing_factor_integral(b, 1.0, omega_min, 1e-10).unwrap();
            assert!(rel_close(f, want, 1e-9), "omega_min={omega_min}: {f} vs {want}");
        }
        // Divergence as the infrared cutoff shrinks: f decreases.
        let f1 = dressing_factor_integral(b, 1.0, 0.5, 1e-10).unwrap();
        let f2 = dressing_factor_integral(b, 1.0, 0.05, 1e-10).unwrap();
        assert!(f2 < f1);
        assert!(dressing_factor_integral(b, 1.0, 0.0, 1e-10).is_err());
        assert!(dressing_factor_integral(b, 1.0, 6.0, 1e-10).is_err());
    }

    #[test]
    fn bath_correlation_matches_reference_points() {
        let b = bath(0.6, 5.0);
        let c0 = bath_correlation(0.0, b, 1.0, 1e-10).unwrap();
        assert!(rel_close(c0.re, 16.520852646508535, 1e-10), "C(0) = {}", c0.re);
        assert_eq!(c0.im, -0.0);

        let c1 = bath_correlation(1.0, b, 1.0, 1e-10).unwrap();
        assert!(
            rel_close(c1.re, 0.080025795660197785, 1e-8),
            "Re C(1) = {}",
            c1.re
        );
        assert!(
            rel_close(c1.im, -0.22189349112426036, 1e-8),
            "Im C(1) = {}",
            c1.im
        );

        let c2 = bath_correlation(2.0, b, 1.0, 1e-10).unwrap();
        assert!(rel_close(c2.re, 0.051302417913925871, 1e-8));
        assert!(rel_close(c2.im, -0.029408881482207627, 1e-8));
    }

    #[test]
    fn bath_correlation_has_hermitian_time_symmetry() {
        let b = bath(0.6, 5.0);
        for &t in &[0.3, 1.0, 2.7] {
            let c_plus = bath_correlation(t, b, 1.0, 1e-11).unwrap();
            let c_minus = bath_correlation(-t, b, 1.0, 1e-11).unwrap();
            assert!((c_plus.re - c_minus.re).abs() < 1e-9);
            assert!((c_plus.im + c_minus.im).abs() < 1e-9);
        }
    }
}
