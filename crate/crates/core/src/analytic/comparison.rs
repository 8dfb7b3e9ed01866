//! Numerical check that the solution of `A' = f(A)` dominates the
//! recurrence `a_{i+1} = a_i + f(a_i)` started from the same value.

use serde::Serialize;

use super::AnalyticError;

/// Step of the fixed-step RK4 integrator.
pub const RK4_STEP: f64 = 1.0 / 1024.0;
/// Slack allowed when comparing `A(i)` against `a_i`.
pub const DOMINATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonOutcome {
    /// `true` iff `A(i) >= a_i - 1e-9` for every `i <= n`.
    pub holds: bool,
    /// First index `i` (1-based) where domination fails.
    pub witness: Option<usize>,
    /// `a_1, ..., a_n`.
    pub recurrence: Vec<f64>,
    /// `A(1), ..., A(n)`.
    pub smooth: Vec<f64>,
}

/// Iterates `a_{i+1} = a_i + f(a_i)` from `a_1 = a1` and integrates
/// `A' = f(A)`, `A(1) = a1` with classical RK4 at step 1/1024, comparing the
/// two at `i = 1..=n`.
///
/// `f` must be decreasing and nonpositive on `[0, inf)` with `f(0) = 0`; this
/// is the caller's responsibility, but a recurrence that leaves `[0, a1]` is
/// reported as [`AnalyticError::ModelViolation`].
pub fn comparison_lemma_check<F>(
    f: F,
    a1: f64,
    n: usize,
) -> Result<ComparisonOutcome, AnalyticError>
where
    F: Fn(f64) -> f64,
{
    if !(a1 > 0.0) || !a1.is_finite() {
        return Err(AnalyticError::Domain {
            name: "a1",
            value: a1,
            expected: "finite and > 0",
        });
    }
    if n == 0 {
        return Err(AnalyticError::Domain {
            name: "n",
            value: 0.0,
            expected: ">= 1",
        });
    }

    let mut recurrence = Vec::with_capacity(n);
    let mut a = a1;
    for i in 1..=n {
        if !(0.0..=a1).contains(&a) {
            return Err(AnalyticError::ModelViolation { index: i, value: a });
        }
        recurrence.push(a);
        a += f(a);
    }

    let steps_per_unit = (1.0 / RK4_STEP).round() as usize;
    let h = RK4_STEP;
    let mut smooth = Vec::with_capacity(n);
    let mut y = a1;
    smooth.push(y);
    for _ in 1..n {
        for _ in 0..steps_per_unit {
            let k1 = f(y);
            let k2 = f(y + 0.5 * h * k1);
            let k3 = f(y + 0.5 * h * k2);
            let k4 = f(y + h * k3);
            y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        smooth.push(y);
    }

    let witness = recurrence
        .iter()
        .zip(&smooth)
        .position(|(&a, &big_a)| big_a < a - DOMINATION_SLACK)
        .map(|idx| idx + 1);

    Ok(ComparisonOutcome {
        holds: witness.is_none(),
        witness,
        recurrence,
        smooth,
    })
}
