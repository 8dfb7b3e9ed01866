//! Asymptotic search-cost distribution of Robin Hood hashing.
//!
//! Everything here works with the *double tail* `qq_i = alpha * sum_{j>=i}
//! Pr{X >= j}` of the search cost `X` of a random key. Two models are
//! supported:
//!
//! * [`ModelKind::InsertOnly`]: keys are inserted until load `alpha`;
//!   `qq_1 = ln beta`, `qq_{i+1} = qq_i - 1 + e^{-qq_i}`.
//! * [`ModelKind::SteadyState`]: after filling, random insertions and random
//!   deletions (by marking) alternate forever; `qq_1 = beta - 1`,
//!   `qq_{i+1} = qq_i^2 / (1 + qq_i)`.
//!
//! with `beta = 1 / (1 - alpha)`. Both recurrences have the form
//! `qq_{i+1} - qq_i = f(qq_i)` with `f` decreasing and nonpositive, so the
//! solution `Q` of `Q' = f(Q)`, `Q(1) = qq_1` lies above them
//! ([`ode_majorant`], [`comparison_lemma_check`]). Summing `Q` with
//! Euler-Maclaurin at order two gives [`variance_upper_bound`].

mod comparison;
mod lambert;
mod quadrature;
mod sum;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use comparison::{comparison_lemma_check, ComparisonOutcome, DOMINATION_SLACK, RK4_STEP};
pub use lambert::{lambert_w, solve_w_log};
pub use quadrature::adaptive_simpson;

use sum::{CompensatedSum, DoubleDouble};

/// Default truncation threshold for [`rh_tails`].
pub const DEFAULT_EPSILON: f64 = 1e-12;
/// Absolute tolerance of the majorant integral in [`variance_upper_bound`].
pub const MAJORANT_INTEGRAL_TOLERANCE: f64 = 1e-10;

const SMALL_ALPHA: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("load factor {0} is outside [0, 1)")]
    InvalidLoadFactor(f64),
    #[error("truncation threshold {0} is outside (0, 1)")]
    InvalidEpsilon(f64),
    #[error("{name} = {value} is outside the domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{what} did not converge in {iterations} iterations")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
    },
    #[error("quadrature reached an estimated error of {achieved:e}, requested {requested:e}")]
    Quadrature { requested: f64, achieved: f64 },
    #[error("recurrence left [0, a1] at index {index} (value {value})")]
    ModelViolation { index: usize, value: f64 },
}

/// Load factor `alpha` in `[0, 1)` together with `beta = 1 / (1 - alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoadFactor {
    alpha: f64,
    beta: f64,
}

impl LoadFactor {
    pub fn new(alpha: f64) -> Result<Self, AnalyticError> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(AnalyticError::InvalidLoadFactor(alpha));
        }
        Ok(LoadFactor {
            alpha,
            beta: 1.0 / (1.0 - alpha),
        })
    }

    /// Builds the load factor from `beta >= 1`, keeping `beta` exact.
    ///
    /// `alpha` is then `1 - 1/beta` rounded, so `1 / (1 - alpha)` may differ
    /// from `beta` in the last bits when `beta` is large.
    pub fn from_beta(beta: f64) -> Result<Self, AnalyticError> {
        if !(beta >= 1.0) || !beta.is_finite() {
            return Err(AnalyticError::Domain {
                name: "beta",
                value: beta,
                expected: "finite and >= 1",
            });
        }
        Ok(LoadFactor {
            alpha: (beta - 1.0) / beta,
            beta,
        })
    }

    pub fn alpha(self) -> f64 {
        self.alpha
    }

    pub fn beta(self) -> f64 {
        self.beta
    }

    /// `beta - 1 = alpha / (1 - alpha)`.
    fn beta_minus_one(self) -> f64 {
        self.alpha * self.beta
    }

    /// `ln beta = -ln(1 - alpha)`.
    fn ln_beta(self) -> f64 {
        -(-self.alpha).ln_1p()
    }
}

impl fmt::Display for LoadFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha)
    }
}

/// Which process the table went through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Insertions only, up to the target load.
    InsertOnly,
    /// Fill, then alternate one random insertion with one random deletion.
    SteadyState,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::InsertOnly => "insert-only",
            ModelKind::SteadyState => "steady-state",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "insert-only" => Ok(ModelKind::InsertOnly),
            "steady-state" => Ok(ModelKind::SteadyState),
            other => Err(format!(
                "unknown model '{other}' (expected insert-only or steady-state)"
            )),
        }
    }
}

/// Truncated double tails `qq_1, ..., qq_K` of the Robin Hood search cost.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailSequence {
    pub load: LoadFactor,
    pub model: ModelKind,
    /// `values[i - 1] = qq_i`. The last entry is the first one below
    /// `epsilon`.
    pub values: Vec<f64>,
    pub epsilon: f64,
    /// Upper bound on `sum_{i > K} qq_i`.
    pub remainder_bound: f64,
}

impl TailSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `qq_i` for 1-based `i`, zero past the truncation point.
    pub fn double_tail(&self, i: usize) -> f64 {
        assert!(i >= 1, "tail indices start at 1");
        self.values.get(i - 1).copied().unwrap_or(0.0)
    }

    /// Single tails `q_bar_i = qq_i - qq_{i+1} = alpha * Pr{X >= i}`.
    ///
    /// Taken from the recurrence step rather than by subtraction, which loses
    /// most digits when `qq_i` is large.
    pub fn single_tails(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|&q| single_tail(self.model, q))
            .collect()
    }

    /// `Pr{X >= i}` for `i = 1..=K`.
    pub fn tail_probabilities(&self) -> Vec<f64> {
        let alpha = self.load.alpha();
        self.single_tails().into_iter().map(|t| t / alpha).collect()
    }

    /// Compensated `sum_i qq_i` over the retained terms.
    pub fn sum(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .collect::<CompensatedSum>()
            .value()
    }
}

/// Mean and variance of the search cost, in probes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    /// Bound on the variance error caused by truncating the tail sum.
    pub truncation_error: f64,
}

impl Moments {
    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

fn check_epsilon(epsilon: f64) -> Result<(), AnalyticError> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(AnalyticError::InvalidEpsilon(epsilon))
    }
}

/// `q - 1 + e^{-q}` without cancellation for small `q`.
fn insert_only_step(q: f64) -> f64 {
    if q > 0.5 {
        return q + (-q).exp_m1();
    }
    // q^2/2! - q^3/3! + q^4/4! - ...
    let mut term = q * q / 2.0;
    let mut acc = term;
    let mut k = 2.0;
    while term.abs() > acc.abs() * 1e-18 {
        k += 1.0;
        term *= -q / k;
        acc += term;
    }
    acc
}

/// `qq_i - qq_{i+1}` given `qq_i`.
fn single_tail(model: ModelKind, q: f64) -> f64 {
    match model {
        ModelKind::InsertOnly => -(-q).exp_m1(),
        ModelKind::SteadyState => q / (1.0 + q),
    }
}

/// Double tails of the Robin Hood search cost, truncated at the first term
/// below `epsilon`.
///
/// Once a term is below `epsilon < 1`, every further ratio is below 1/2 in
/// both models, so the discarded remainder is at most `2 * epsilon`.
/// `alpha = 0` yields an empty sequence.
pub fn rh_tails(
    load: LoadFactor,
    model: ModelKind,
    epsilon: f64,
) -> Result<TailSequence, AnalyticError> {
    check_epsilon(epsilon)?;
    let mut values = Vec::new();
    if load.alpha() > 0.0 {
        match model {
            ModelKind::InsertOnly => {
                let mut q = load.ln_beta();
                loop {
                    values.push(q);
                    if q < epsilon {
                        break;
                    }
                    q = insert_only_step(q);
                }
            }
            ModelKind::SteadyState => {
                // qq_{i+1} = qq_i - 1 + 1/(1 + qq_i). For large qq this is
                // carried in double-double so that a million steps from
                // beta = 10^6 do not drift by more than an ulp or two.
                let mut q = DoubleDouble::new(load.beta_minus_one());
                while q.value() >= 1.0 {
                    values.push(q.value());
                    let recip = 1.0 / (1.0 + q.value());
                    q = q.add(-1.0).add(recip);
                }
                let mut q = q.value();
                loop {
                    values.push(q);
                    if q < epsilon {
                        break;
                    }
                    q = q * q / (1.0 + q);
                }
            }
        }
    }
    let remainder_bound = if values.is_empty() {
        0.0
    } else {
        2.0 * epsilon
    };
    Ok(TailSequence {
        load,
        model,
        values,
        epsilon,
        remainder_bound,
    })
}

/// Expected successful search cost.
///
/// Insert-only: `ln(1/(1-alpha)) / alpha` for every discipline, with the
/// series `1 + alpha/2 + alpha^2/3 + ...` below `alpha = 1e-4`.
/// Steady state: `beta`.
pub fn mean_search_cost(load: LoadFactor, model: ModelKind) -> f64 {
    let a = load.alpha();
    match model {
        ModelKind::InsertOnly if a < SMALL_ALPHA => {
            1.0 + a * (1.0 / 2.0 + a * (1.0 / 3.0 + a * (1.0 / 4.0 + a / 5.0)))
        }
        ModelKind::InsertOnly => load.ln_beta() / a,
        ModelKind::SteadyState => load.beta(),
    }
}

/// Point probabilities `p_i = Pr{X = i}` for `i = 1..=K`.
///
/// Terms past the truncation point are taken as zero, so the probabilities
/// sum to one up to rounding. `alpha = 0` gives `[1.0]`.
pub fn distribution(tails: &TailSequence) -> Vec<f64> {
    if tails.is_empty() {
        return vec![1.0];
    }
    let alpha = tails.load.alpha();
    let q = &tails.values;
    (0..q.len())
        .map(|i| {
            let bar = single_tail(tails.model, q[i]);
            let Some(&next) = q.get(i + 1) else {
                return bar / alpha;
            };
            // q_bar_i - q_bar_{i+1}, factored so that no large terms cancel
            let diff = match tails.model {
                ModelKind::InsertOnly => (-next).exp() * -(-(q[i] - next)).exp_m1(),
                ModelKind::SteadyState => bar / ((1.0 + q[i]) * (1.0 + next)),
            };
            (diff / alpha).max(0.0)
        })
        .collect()
}

/// Mean and variance of the Robin Hood search cost from the double tails:
/// `var = (2/alpha) sum qq_i - mu - mu^2`.
pub fn variance_search_cost(
    load: LoadFactor,
    model: ModelKind,
    epsilon: f64,
) -> Result<Moments, AnalyticError> {
    check_epsilon(epsilon)?;
    let mean = mean_search_cost(load, model);
    if load.alpha() == 0.0 {
        return Ok(Moments {
            mean,
            variance: 0.0,
            truncation_error: 0.0,
        });
    }
    let tails = rh_tails(load, model, epsilon)?;
    Ok(moments_from_tails(&tails))
}

/// Moments implied by an already computed tail sequence.
pub fn moments_from_tails(tails: &TailSequence) -> Moments {
    let mean = mean_search_cost(tails.load, tails.model);
    if tails.is_empty() {
        return Moments {
            mean,
            variance: 0.0,
            truncation_error: 0.0,
        };
    }
    let scale = 2.0 / tails.load.alpha();
    let variance = (scale * tails.sum() - mean - mean * mean).max(0.0);
    Moments {
        mean,
        variance,
        truncation_error: scale * tails.remainder_bound,
    }
}

fn check_majorant_load(load: LoadFactor) -> Result<(), AnalyticError> {
    if load.alpha() > 0.0 {
        Ok(())
    } else {
        Err(AnalyticError::InvalidLoadFactor(load.alpha()))
    }
}

/// The majorant `Q(x)`: solution of `Q' = f(Q)` with `Q(1) = qq_1`.
///
/// Insert-only: `ln(1 + (beta - 1) e^{1-x})`.
/// Steady state: `W((beta - 1) e^{beta - x})`, solved in log form.
pub fn ode_majorant(x: f64, load: LoadFactor, model: ModelKind) -> Result<f64, AnalyticError> {
    if !(x >= 1.0) {
        return Err(AnalyticError::Domain {
            name: "x",
            value: x,
            expected: ">= 1",
        });
    }
    check_majorant_load(load)?;
    let bm1 = load.beta_minus_one();
    match model {
        ModelKind::InsertOnly => Ok((bm1 * (1.0 - x).exp()).ln_1p()),
        ModelKind::SteadyState => {
            // beta - x is exact for integral x; keep it apart from ln(beta-1)
            solve_w_log(bm1.ln() + (load.beta() - x))
        }
    }
}

/// `int_1^inf Q(x) dx`.
///
/// Substituting `u = Q(x)` turns the insert-only integral into
/// `int_0^{ln beta} u / (1 - e^{-u}) du`; the steady-state one is
/// `(beta - 1) + (beta - 1)^2 / 2`.
pub fn majorant_integral(load: LoadFactor, model: ModelKind) -> Result<f64, AnalyticError> {
    check_majorant_load(load)?;
    match model {
        ModelKind::InsertOnly => adaptive_simpson(
            |u| if u == 0.0 { 1.0 } else { u / -(-u).exp_m1() },
            0.0,
            load.ln_beta(),
            MAJORANT_INTEGRAL_TOLERANCE,
        ),
        ModelKind::SteadyState => {
            let bm1 = load.beta_minus_one();
            Ok(bm1 + 0.5 * bm1 * bm1)
        }
    }
}

/// Upper bound on the Robin Hood variance,
/// `(2/alpha) int_1^inf Q + 1/3 - mu^2`.
///
/// The `1/3` collects the Euler-Maclaurin correction `Q(1)/2 - Q'(1)/12`
/// and the order-two remainder, with `Q(1) = alpha mu` and `Q'(1) = -alpha`.
/// In the steady state this is exactly `beta + 1/3`.
pub fn variance_upper_bound(load: LoadFactor, model: ModelKind) -> Result<f64, AnalyticError> {
    check_majorant_load(load)?;
    match model {
        ModelKind::InsertOnly => {
            let integral = majorant_integral(load, model)?;
            let mu = mean_search_cost(load, model);
            Ok(2.0 / load.alpha() * integral + 1.0 / 3.0 - mu * mu)
        }
        ModelKind::SteadyState => Ok(load.beta() + 1.0 / 3.0),
    }
}

/// `beta / (beta - 1 + e^{i-1})`, an upper bound on `Pr{X >= i}` in the
/// insert-only model.
pub fn tail_upper_bound(i: u32, load: LoadFactor) -> Result<f64, AnalyticError> {
    if i == 0 {
        return Err(AnalyticError::Domain {
            name: "i",
            value: 0.0,
            expected: ">= 1",
        });
    }
    tail_upper_bound_at(f64::from(i), load)
}

/// [`tail_upper_bound`] at a real-valued position `x >= 1`.
pub fn tail_upper_bound_at(x: f64, load: LoadFactor) -> Result<f64, AnalyticError> {
    if !(x >= 1.0) {
        return Err(AnalyticError::Domain {
            name: "x",
            value: x,
            expected: ">= 1",
        });
    }
    check_majorant_load(load)?;
    let beta = load.beta();
    Ok(beta / (load.beta_minus_one() + (x - 1.0).exp()))
}

/// Density of the standard logistic distribution,
/// `e^{-x} / (1 + e^{-x})^2`, evaluated through `|x|`.
pub fn logistic_limit_density(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    e / ((1.0 + e) * (1.0 + e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(alpha: f64) -> LoadFactor {
        LoadFactor::new(alpha).unwrap()
    }

    fn beta(b: f64) -> LoadFactor {
        LoadFactor::from_beta(b).unwrap()
    }

    #[test]
    fn load_factor_validation() {
        assert!(LoadFactor::new(1.0).is_err());
        assert!(LoadFactor::new(-0.1).is_err());
        assert!(LoadFactor::new(f64::NAN).is_err());
        assert_eq!(load(0.0).beta(), 1.0);
        assert_eq!(load(0.5).beta(), 2.0);
        assert!(LoadFactor::from_beta(0.5).is_err());
        assert_eq!(beta(10.0).alpha(), 0.9);
    }

    #[test]
    fn insert_only_tails_at_ninety_percent() {
        // Frozen from an independent high-precision iteration of
        // q <- q - 1 + exp(-q) starting at ln 10.
        let t = rh_tails(load(0.9), ModelKind::InsertOnly, 1e-12).unwrap();
        let expected = [
            std::f64::consts::LN_10,
            1.402585092994046,
            0.6485454041097409,
            0.17135109906511248,
        ];
        for (got, want) in t.values.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        assert_eq!(t.remainder_bound, 2e-12);
        assert!(*t.values.last().unwrap() < 1e-12);
        assert!(t.values[t.len() - 2] >= 1e-12);
    }

    #[test]
    fn steady_state_tails_by_hand() {
        let t = rh_tails(load(0.5), ModelKind::SteadyState, 1e-12).unwrap();
        assert_eq!(t.values[0], 1.0);
        assert_eq!(t.values[1], 0.5);
        assert!((t.values[2] - 1.0 / 6.0).abs() < 1e-16);
        assert!((t.values[3] - 1.0 / 42.0).abs() < 1e-16);
    }

    #[test]
    fn zero_load_is_degenerate() {
        let t = rh_tails(load(0.0), ModelKind::InsertOnly, 1e-12).unwrap();
        assert!(t.is_empty());
        assert_eq!(distribution(&t), vec![1.0]);
        let m = variance_search_cost(load(0.0), ModelKind::SteadyState, 1e-12).unwrap();
        assert_eq!((m.mean, m.variance), (1.0, 0.0));
    }

    #[test]
    fn rejects_bad_epsilon() {
        for eps in [0.0, -1e-3, 1.0, f64::NAN] {
            assert!(rh_tails(load(0.5), ModelKind::InsertOnly, eps).is_err());
        }
    }

    #[test]
    fn means() {
        assert_eq!(mean_search_cost(load(0.0), ModelKind::InsertOnly), 1.0);
        assert_eq!(mean_search_cost(load(0.0), ModelKind::SteadyState), 1.0);
        let m = mean_search_cost(load(0.99), ModelKind::InsertOnly);
        assert!((m - 100f64.ln() / 0.99).abs() < 1e-14);
        assert!((m - 4.65169).abs() < 1e-5);
        assert!((mean_search_cost(load(0.9), ModelKind::SteadyState) - 10.0).abs() < 1e-12);
    }

    #[test]
    fn small_alpha_mean_is_continuous() {
        let below = mean_search_cost(load(SMALL_ALPHA * (1.0 - 1e-12)), ModelKind::InsertOnly);
        let above = mean_search_cost(load(SMALL_ALPHA), ModelKind::InsertOnly);
        assert!((below - above).abs() < 1e-13);
        let tiny = mean_search_cost(load(1e-12), ModelKind::InsertOnly);
        assert!((tiny - 1.0).abs() < 1e-11);
    }

    #[test]
    fn distribution_examples() {
        let t = rh_tails(load(0.9), ModelKind::InsertOnly, 1e-12).unwrap();
        let p = distribution(&t);
        let qbar2 = t.values[1] - t.values[2];
        assert!((p[0] - (0.9 - qbar2) / 0.9).abs() < 1e-14);
        assert!((p[0] - 0.162_190).abs() < 2e-5);
        assert!((t.tail_probabilities()[0] - 1.0).abs() < 1e-14);

        let t = rh_tails(load(0.5), ModelKind::SteadyState, 1e-12).unwrap();
        let tails = t.tail_probabilities();
        assert!((tails[0] - 1.0).abs() < 1e-15);
        assert!((tails[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!((tails[2] - 2.0 / 7.0).abs() < 1e-15);
    }

    #[test]
    fn fig4_points() {
        for (b, v) in [
            (2.0, 0.764119604),
            (10.0, 7.6773737),
            (50.0, 46.262428),
            (100.0, 95.60498),
        ] {
            let m = variance_search_cost(beta(b), ModelKind::SteadyState, 1e-12).unwrap();
            assert!(
                (m.variance - v).abs() < 1e-3,
                "beta {b}: {} vs {v}",
                m.variance
            );
        }
    }

    #[test]
    fn variance_near_full_table() {
        let m = variance_search_cost(load(1.0 - 1e-6), ModelKind::InsertOnly, 1e-12).unwrap();
        assert!((1.87..=1.90).contains(&m.variance), "{}", m.variance);
        assert!(m.truncation_error < 1e-11);
    }

    #[test]
    fn majorant_examples() {
        let b10 = beta(10.0);
        assert!(
            (ode_majorant(1.0, b10, ModelKind::InsertOnly).unwrap() - 10f64.ln()).abs() < 1e-15
        );
        let q2 = ode_majorant(2.0, b10, ModelKind::InsertOnly).unwrap();
        assert!((q2 - ((9.0 + std::f64::consts::E).ln() - 1.0)).abs() < 1e-14);
        assert!((q2 - 1.461150).abs() < 1e-6);
        for b in [1.5, 2.0, 10.0, 1e3, 1e6] {
            let q1 = ode_majorant(1.0, beta(b), ModelKind::SteadyState).unwrap();
            assert!((q1 - (b - 1.0)).abs() <= 1e-12 * b, "beta {b}: {q1}");
        }
        assert!(ode_majorant(0.5, b10, ModelKind::InsertOnly).is_err());
        assert!(ode_majorant(1.0, load(0.0), ModelKind::InsertOnly).is_err());
    }

    #[test]
    fn steady_state_majorant_solves_its_ode() {
        // central finite difference of Q against f(Q) = -Q / (1 + Q)
        let lf = beta(20.0);
        let h = 1e-5;
        for x in [1.5, 3.0, 10.0, 19.0, 25.0] {
            let q = ode_majorant(x, lf, ModelKind::SteadyState).unwrap();
            let dq = (ode_majorant(x + h, lf, ModelKind::SteadyState).unwrap()
                - ode_majorant(x - h, lf, ModelKind::SteadyState).unwrap())
                / (2.0 * h);
            assert!((dq + q / (1.0 + q)).abs() < 1e-7, "x = {x}");
        }
    }

    #[test]
    fn insert_only_majorant_integral_matches_direct_quadrature() {
        // integrate Q(x) directly over [1, 60] (tail beyond is < 1e-20)
        let lf = beta(10.0);
        let direct = adaptive_simpson(
            |x| ode_majorant(x, lf, ModelKind::InsertOnly).unwrap(),
            1.0,
            60.0,
            1e-12,
        )
        .unwrap();
        let sub = majorant_integral(lf, ModelKind::InsertOnly).unwrap();
        assert!((direct - sub).abs() < 1e-9, "{direct} vs {sub}");
    }

    #[test]
    fn steady_state_integral_matches_direct_quadrature() {
        let lf = beta(5.0);
        let direct = adaptive_simpson(
            |x| ode_majorant(x, lf, ModelKind::SteadyState).unwrap(),
            1.0,
            80.0,
            1e-11,
        )
        .unwrap();
        assert!((direct - majorant_integral(lf, ModelKind::SteadyState).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn bounds() {
        assert_eq!(
            variance_upper_bound(beta(10.0), ModelKind::SteadyState).unwrap(),
            10.0 + 1.0 / 3.0
        );
        let b = variance_upper_bound(beta(1e6), ModelKind::InsertOnly).unwrap();
        let limit = std::f64::consts::PI.powi(2) / 3.0 + 1.0 / 3.0;
        assert!((b - 3.6232).abs() < 1e-3, "{b}");
        assert!((b - limit).abs() < 1e-3);
        let b2 = variance_upper_bound(beta(2.0), ModelKind::SteadyState).unwrap();
        assert!((b2 - 7.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn tail_bound_values() {
        for b in [1.5, 10.0, 1e6] {
            assert_eq!(tail_upper_bound(1, beta(b)).unwrap(), 1.0);
        }
        let v = tail_upper_bound(4, beta(10.0)).unwrap();
        assert!((v - 10.0 / (9.0 + 3f64.exp())).abs() < 1e-15);
        assert!((v - 0.343814).abs() < 1e-6);
        assert!(tail_upper_bound(0, beta(10.0)).is_err());
        // exceedance past 1 + ln(beta - 1) tends to 1 / (e^k + 1)
        let lf = beta(1e12);
        for k in [0.0, 1.0, 3.0] {
            let x = 1.0 + (lf.beta() - 1.0).ln() + k;
            let v = tail_upper_bound_at(x, lf).unwrap();
            assert!((v - 1.0 / (f64::exp(k) + 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn logistic_density() {
        assert_eq!(logistic_limit_density(0.0), 0.25);
        let e = std::f64::consts::E;
        assert!((logistic_limit_density(1.0) - e / ((1.0 + e) * (1.0 + e))).abs() < 1e-16);
        assert!((logistic_limit_density(1.0) - 0.196612).abs() < 1e-6);
        assert_eq!(logistic_limit_density(3.0), logistic_limit_density(-3.0));
        assert!(logistic_limit_density(-800.0) == 0.0);
    }

    #[test]
    fn model_kind_parses() {
        assert_eq!(
            "insert-only".parse::<ModelKind>().unwrap(),
            ModelKind::InsertOnly
        );
        assert_eq!(
            "steady-state".parse::<ModelKind>().unwrap(),
            ModelKind::SteadyState
        );
        assert!("rh".parse::<ModelKind>().is_err());
    }
}
