//! Principal branch of the Lambert W function on `[0, inf)`.
//!
//! Two entry points: [`lambert_w`] takes `y` directly, [`solve_w_log`] takes
//! `L = ln y` and never forms `y`, so arguments like `(b - 1) e^b` with
//! `b` in the thousands stay representable.

use super::AnalyticError;

pub(crate) const MAX_ITERATIONS: usize = 100;

/// `W(y)` for `y >= 0`: the `w >= 0` with `w e^w = y`.
///
/// Halley iteration started from `ln(1 + y)`, which is never below `W(y)`,
/// so `w e^w` stays finite for every finite `y`.
pub fn lambert_w(y: f64) -> Result<f64, AnalyticError> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(AnalyticError::Domain {
            name: "y",
            value: y,
            expected: "finite and >= 0",
        });
    }
    if y == 0.0 {
        return Ok(0.0);
    }

    let mut w = y.ln_1p();
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let residual = w * ew - y;
        let d1 = ew * (w + 1.0);
        let step = residual / (d1 - (w + 2.0) * residual / (2.0 * w + 2.0));
        let next = w - step;
        if (next - w).abs() <= 4.0 * f64::EPSILON * next.abs().max(f64::MIN_POSITIVE) {
            return Ok(polish(next, y));
        }
        w = next;
    }
    Err(AnalyticError::NoConvergence {
        what: "lambert_w",
        iterations: MAX_ITERATIONS,
    })
}

// One Newton step on the converged value; picks up the last half-ulp.
fn polish(w: f64, y: f64) -> f64 {
    let ew = w.exp();
    let d = ew * (w + 1.0);
    let next = w - (w * ew - y) / d;
    if next.is_finite() && next >= 0.0 {
        next
    } else {
        w
    }
}

/// Solves `w + ln w = log_y` for `w > 0`, i.e. `W(exp(log_y))`.
///
/// Newton on `v = ln w`, where `e^v + v - log_y` is convex and increasing.
/// Start: `w0 = log_y` when `log_y >= 1`, otherwise `w0 = exp(log_y - 1)`.
/// Very negative `log_y` underflows to `0`.
pub fn solve_w_log(log_y: f64) -> Result<f64, AnalyticError> {
    if log_y.is_nan() {
        return Err(AnalyticError::Domain {
            name: "log_y",
            value: log_y,
            expected: "not NaN",
        });
    }
    if log_y == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    if log_y == f64::NEG_INFINITY {
        return Ok(0.0);
    }

    let mut v = if log_y >= 1.0 {
        log_y.ln()
    } else {
        log_y - 1.0
    };
    for _ in 0..MAX_ITERATIONS {
        let ev = v.exp();
        let step = (ev + v - log_y) / (ev + 1.0);
        let next = v - step;
        if (next - v).abs() <= 2.0 * f64::EPSILON * next.abs().max(1.0) {
            return Ok(next.exp());
        }
        v = next;
    }
    Err(AnalyticError::NoConvergence {
        what: "solve_w_log",
        iterations: MAX_ITERATIONS,
    })
}
