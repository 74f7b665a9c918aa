//! Built-in cross-validation battery.
//!
//! Four independent suites check the numeric core against itself:
//!
//! 1. **Derivative**: analytic `dP_e/dT` against Richardson-extrapolated
//!    central differences on a temperature × coupling grid.
//! 2. **Ode**: both closed-form populations against the integrated Bloch
//!    fixed point on a coarser grid; exactly one closed form is expected to
//!    match, and the suite passes when at least one does.
//! 3. **Identity**: the compact two-level Fisher information against the
//!    general sum form on pseudo-random population/derivative pairs.
//! 4. **Monotonicity**: strict decrease of the dressing factor along
//!    coupling and temperature scans.
//!
//! The grid suites run over `T in [0.1, 5] x eta in [0.05, 3]` on a
//! wide-cutoff reference bath (`omega_c = 5`). That reference keeps the
//! decay rate of every grid point in `[0.2, 8.5]`, so the Bloch flow is
//! strongly contracting everywhere and the derivative stays resolvable;
//! narrow-cutoff baths enter a deep-dressing plateau inside these ranges
//! where `gamma` underflows and neither route is meaningful.

use crate::bath::{dressing_factor, effective_drive, renormalized_at, BathConfig, ProbeConfig};
use crate::error::Result;
use crate::metrology::{qfi_from_population, qfi_sum_form};
use crate::steady_state::{
    integrate_to_steady_state, steady_population_closed, steady_population_dt_analytic,
    steady_population_dt_fd, BlochState, Variant, DEFAULT_RHS_TOL, DEFAULT_T_MAX,
};

/// Reference bath cutoff for the grid suites.
pub const REFERENCE_OMEGA_C: f64 = 5.0;

/// Temperature range scanned by the grid suites.
pub const T_RANGE: (f64, f64) = (0.1, 5.0);

/// Coupling range scanned by the grid suites.
pub const ETA_RANGE: (f64, f64) = (0.05, 3.0);

/// Tolerance of the derivative suite.
pub const DERIVATIVE_TOL: f64 = 1e-6;

/// Absolute floor entering the derivative suite's scaled error: deviations
/// are measured relative to `max(|analytic|, |differenced|, FLOOR)`, so
/// derivatives below the floor are compared absolutely (to
/// `DERIVATIVE_TOL * DERIVATIVE_FLOOR = 1e-9`). A bare relative comparison
/// is unbounded near the zero crossings of `dP_e/dT` that these ranges
/// sample.
pub const DERIVATIVE_FLOOR: f64 = 1e-3;

/// Tolerance of the ODE-versus-closed-form suite.
pub const ODE_TOL: f64 = 1e-8;

/// Tolerance of the Fisher-information identity suite.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Default grid of the derivative suite.
pub const DERIVATIVE_GRID: (usize, usize) = (20, 20);

/// Default grid of the ODE suite.
pub const ODE_GRID: (usize, usize) = (10, 10);

/// Default sample count of the identity suite.
pub const IDENTITY_SAMPLES: usize = 1000;

/// Outcome of the derivative suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeCheck {
    /// `(temperature points, coupling points)`.
    pub grid: (usize, usize),
    /// Worst scaled deviation over the grid.
    pub max_scaled_error: f64,
    /// Tolerance compared against.
    pub tolerance: f64,
    /// Whether every node passed.
    pub passed: bool,
}

/// Outcome of the ODE suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeCheck {
    /// `(temperature points, coupling points)`.
    pub grid: (usize, usize),
    /// Worst `|P_ode - P_closed|` for the unit-weight closed form.
    pub max_abs_dev_paper: f64,
    /// Worst `|P_ode - P_closed|` for the weight-four closed form.
    pub max_abs_dev_rederived: f64,
    /// Tolerance compared against.
    pub tolerance: f64,
    /// Whether at least one closed form matched everywhere.
    pub passed: bool,
}

/// Outcome of the Fisher-information identity suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    /// Number of pseudo-random pairs tested.
    pub samples: usize,
    /// Worst relative deviation between the two forms.
    pub max_rel_error: f64,
    /// Tolerance compared against.
    pub tolerance: f64,
    /// Whether every pair passed.
    pub passed: bool,
}

/// Outcome of the dressing-factor monotonicity suite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonotonicityCheck {
    /// Number of ordered comparisons performed.
    pub comparisons: usize,
    /// Number of non-decreasing steps observed (should be zero).
    pub violations: usize,
    /// Whether no violation occurred.
    pub passed: bool,
}

/// Combined report of all four suites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Analytic-versus-differenced derivative suite.
    pub derivative: DerivativeCheck,
    /// Closed-form-versus-integration suite.
    pub ode: OdeCheck,
    /// Fisher-information identity suite.
    pub identity: IdentityCheck,
    /// Dressing-factor monotonicity suite.
    pub monotonicity: MonotonicityCheck,
}

impl ValidationReport {
    /// True when every suite passed.
    pub fn passed(&self) -> bool {
        self.derivative.passed && self.ode.passed && self.identity.passed && self.monotonicity.passed
    }
}

fn grid_value(range: (f64, f64), i: usize, n: usize) -> f64 {
    range.0 + (range.1 - range.0) * i as f64 / (n - 1) as f64
}

fn reference_bath(eta: f64) -> Result<BathConfig> {
    BathConfig::new(eta, REFERENCE_OMEGA_C, 1.0)
}

/// Runs the derivative suite for one probe and closed-form variant.
pub fn derivative_check(
    probe: ProbeConfig,
    variant: Variant,
    grid: (usize, usize),
) -> Result<DerivativeCheck> {
    let mut max_scaled_error = 0.0_f64;
    for i in 0..grid.0 {
        let t = grid_value(T_RANGE, i, grid.0);
        for j in 0..grid.1 {
            let bath = reference_bath(grid_value(ETA_RANGE, j, grid.1))?;
            let analytic = steady_population_dt_analytic(probe, bath, t, variant)?;
            let h = 1e-5 * t;
            let coarse = steady_population_dt_fd(probe, bath, t, h, variant)?;
            let fine = steady_population_dt_fd(probe, bath, t, 0.5 * h, variant)?;
            let richardson = (4.0 * fine - coarse) / 3.0;
            let scale = analytic.abs().max(richardson.abs()).max(DERIVATIVE_FLOOR);
            max_scaled_error = max_scaled_error.max((analytic - richardson).abs() / scale);
        }
    }
    Ok(DerivativeCheck {
        grid,
        max_scaled_error,
        tolerance: DERIVATIVE_TOL,
        passed: max_scaled_error <= DERIVATIVE_TOL,
    })
}

/// Runs the ODE suite for one probe; both closed forms are compared.
pub fn ode_check(probe: ProbeConfig, grid: (usize, usize)) -> Result<OdeCheck> {
    let mut max_paper = 0.0_f64;
    let mut max_rederived = 0.0_f64;
    for i in 0..grid.0 {
        let t = grid_value(T_RANGE, i, grid.0);
        for j in 0..grid.1 {
            let bath = reference_bath(grid_value(ETA_RANGE, j, grid.1))?;
            let r = renormalized_at(probe, bath, t)?;
            let drive = effective_drive(probe, r.f);
            let sol = integrate_to_steady_state(
                BlochState::GROUND,
                r.omega_eff,
                r.gamma,
                drive,
                DEFAULT_RHS_TOL,
                DEFAULT_T_MAX,
            )?;
            let p_paper = steady_population_closed(r.omega_eff, r.gamma, drive, Variant::Paper);
            let p_rederived =
                steady_population_closed(r.omega_eff, r.gamma, drive, Variant::Rederived);
            max_paper = max_paper.max((sol.p_e - p_paper).abs());
            max_rederived = max_rederived.max((sol.p_e - p_rederived).abs());
        }
    }
    Ok(OdeCheck {
        grid,
        max_abs_dev_paper: max_paper,
        max_abs_dev_rederived: max_rederived,
        tolerance: ODE_TOL,
        passed: max_paper <= ODE_TOL || max_rederived <= ODE_TOL,
    })
}

/// Deterministic 64-bit mixer used to generate test pairs; fixed seed, no
/// configuration, identical output on every run and platform.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 significant bits.
    fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0)
    }
}

/// Runs the Fisher-information identity suite on `samples` pseudo-random
/// `(P_e, dPe_dT)` pairs with `P_e in [0.001, 0.999]` and
/// `dPe_dT in [-1, 1]`.
pub fn identity_check(samples: usize) -> IdentityCheck {
    let mut rng = SplitMix64(0x42D5_11FE_77A5_0C3B);
    let mut max_rel_error = 0.0_f64;
    for _ in 0..samples {
        let p = 0.001 + 0.998 * rng.next_unit();
        let d = 2.0 * rng.next_unit() - 1.0;
        let compact = qfi_from_population(p, d).expect("generated pair is valid");
        let summed = qfi_sum_form(&[p, 1.0 - p], &[d, -d]).expect("generated pair is valid");
        let rel = (compact - summed).abs() / compact.abs().max(1e-300);
        max_rel_error = max_rel_error.max(rel);
    }
    IdentityCheck {
        samples,
        max_rel_error,
        tolerance: IDENTITY_TOL,
        passed: max_rel_error <= IDENTITY_TOL,
    }
}

/// Runs the dressing-factor monotonicity suite: `f` must strictly decrease
/// along coupling at several temperatures and along temperature at several
/// nonzero couplings.
pub fn monotonicity_check(probe: ProbeConfig) -> Result<MonotonicityCheck> {
    const SCAN_POINTS: usize = 60;
    let omega0 = probe.omega0();
    let mut comparisons = 0usize;
    let mut violations = 0usize;

    for &t in &[0.1, 0.5, 1.0, 2.0, 5.0] {
        let mut prev = f64::INFINITY;
        for i in 0..SCAN_POINTS {
            let eta = 3.0 * i as f64 / (SCAN_POINTS - 1) as f64;
            let f = dressing_factor(reference_bath(eta)?, omega0, t)?;
            if i > 0 {
                comparisons += 1;
                if f >= prev {
                    violations += 1;
                }
            }
            prev = f;
        }
    }
    for &eta in &[0.1, 0.6, 3.0] {
        let bath = reference_bath(eta)?;
        let mut prev = f64::INFINITY;
        for i in 0..SCAN_POINTS {
            let t = 0.05 + (5.0 - 0.05) * i as f64 / (SCAN_POINTS - 1) as f64;
            let f = dressing_factor(bath, omega0, t)?;
            if i > 0 {
                comparisons += 1;
                if f >= prev {
                    violations += 1;
                }
            }
            prev = f;
        }
    }
    Ok(MonotonicityCheck {
        comparisons,
        violations,
        passed: violations == 0,
    })
}

/// Runs all four suites at their standard sizes.
pub fn run(probe: ProbeConfig, variant: Variant) -> Result<ValidationReport> {
    Ok(ValidationReport {
        derivative: derivative_check(probe, variant, DERIVATIVE_GRID)?,
        ode: ode_check(probe, ODE_GRID)?,
        identity: identity_check(IDENTITY_SAMPLES),
        monotonicity: monotonicity_check(probe)?,
    })
}
