//! Embedded Dormand–Prince 5(4) integrator with adaptive step control.
//!
//! Integrates autonomous first-order systems `dy/dt = rhs(y)` with a
//! fifth-order solution, a fourth-order embedded error estimate, and the
//! first-same-as-last optimization (the seventh stage of an accepted step is
//! the first stage of the next). A caller-supplied predicate on
//! `(state, derivative)` stops the run early, which is how steady-state
//! detection is implemented downstream.

use alloc::vec::Vec;

/// Stage coupling coefficients `a_ij` (row `i` feeds stage `i + 2`); the
/// time nodes of the tableau are not needed for autonomous systems.
const A: [&[f64]; 6] = [
    &[0.2],
    &[3.0 / 40.0, 9.0 / 40.0],
    &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0],
    &[19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0],
    &[
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
    ],
    &[
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// Error coefficients: fifth-order weights minus the embedded fourth-order
/// weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Step-size controller settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Absolute tolerance per component.
    pub abs_tol: f64,
    /// Relative tolerance per component.
    pub rel_tol: f64,
    /// First trial step size.
    pub h_initial: f64,
    /// Cap on attempted steps (accepted plus rejected).
    pub max_steps: u64,
}

impl Default for StepControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            h_initial: 1e-3,
            max_steps: 10_000_000,
        }
    }
}

/// Outcome of an adaptive integration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integration<const N: usize> {
    /// Final state.
    pub y: [f64; N],
    /// Time reached.
    pub t: f64,
    /// Steps attempted (accepted plus rejected).
    pub steps: u64,
    /// Whether the stop predicate fired (as opposed to running out of time
    /// or steps).
    pub converged: bool,
}

/// Integrates `dy/dt = rhs(y)` from `y0` at `t = 0` until `stop(state,
/// derivative)` returns true or `t_max` is reached.
///
/// The step is accepted when the weighted RMS of the embedded error estimate
/// — each component scaled by `abs_tol + rel_tol * |y|` — is at most 1, and
/// the next step size follows the standard fifth-order rescaling clamped to
/// `[0.2, 5.0]` with a 0.9 safety factor.
pub fn integrate<const N: usize>(
    rhs: impl Fn(&[f64; N]) -> [f64; N],
    y0: [f64; N],
    t_max: f64,
    ctrl: &StepControl,
    stop: impl Fn(&[f64; N], &[f64; N]) -> bool,
) -> Integration<N> {
    let mut t = 0.0_f64;
    let mut y = y0;
    let mut k: [[f64; N]; 7] = [[0.0; N]; 7];
    k[0] = rhs(&y);
    let mut h = ctrl.h_initial;
    let mut steps: u64 = 0;

    loop {
        if stop(&y, &k[0]) {
            return Integration {
                y,
                t,
                steps,
                converged: true,
            };
        }
        if t >= t_max || steps >= ctrl.max_steps {
            return Integration {
                y,
                t,
                steps,
                converged: false,
            };
        }
        // A step below floating point resolution of t means the controller
        // has stalled; bail out rather than loop forever.
        if h < 1e-14 * t.abs().max(1.0) {
            return Integration {
                y,
                t,
                steps,
                converged: false,
            };
        }
        let h_step = h.min(t_max - t);

        // Stages 2..7; the seventh stage is evaluated at the fifth-order
        // solution itself, so `ys` after the last stage *is* the candidate
        // new state.
        let mut y_new = y;
        for stage in 0..6 {
            let mut ys = y;
            for (j, &a) in A[stage].iter().enumerate() {
                for i in 0..N {
                    ys[i] += h_step * a * k[j][i];
                }
            }
            k[stage + 1] = rhs(&ys);
            y_new = ys;
        }

        let mut err_sq = 0.0;
        for i in 0..N {
            let mut e = 0.0;
            for (j, &ej) in E.iter().enumerate() {
                e += ej * k[j][i];
            }
            e *= h_step;
            let scale = ctrl.abs_tol + ctrl.rel_tol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / scale) * (e / scale);
        }
        let err_norm = libm::sqrt(err_sq / N as f64);
        steps += 1;
        if err_norm <= 1.0 {
            t += h_step;
            y = y_new;
            k[0] = k[6];
        }
        h *= if err_norm > 0.0 {
            (0.9 * libm::pow(err_norm, -0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
    }
}

/// Convenience wrapper returning the trajectory of accepted `(t, y)` points;
/// used by tests that need to look at the whole path.
#[allow(dead_code)]
pub(crate) fn integrate_dense<const N: usize>(
    rhs: impl Fn(&[f64; N]) -> [f64; N] + Copy,
    y0: [f64; N],
    t_max: f64,
    ctrl: &StepControl,
) -> Vec<(f64, [f64; N])> {
    let mut out = Vec::new();
    let mut t_now = 0.0;
    let mut y_now = y0;
    out.push((t_now, y_now));
    // March in fixed windows so intermediate states are observable without
    // complicating the main loop with a callback.
    let window = t_max / 64.0;
    for _ in 0..64 {
        let run = integrate(rhs, y_now, window, ctrl, |_, _| false);
        t_now += run.t;
        y_now = run.y;
        out.push((t_now, y_now));
    }
    out
}
