//! Monte Carlo experiments: fill tables to a load factor, churn them with
//! random insert/delete pairs, and compare the measured age distribution with
//! the analytic model.

use std::collections::BTreeMap;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::analytic::{self, AnalyticError, LoadFactor, ModelKind};
use crate::hashtable::{mix64, Discipline, Slot, Table, TableError};

const KEY_STREAM_SALT: u64 = 0x6A09_E667_F3BC_C908;
const DELETE_STREAM_SALT: u64 = 0xBB67_AE85_84CA_A73B;
const SAMPLE_STREAM_SALT: u64 = 0x3C6E_F372_FE94_F82B;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error("cannot measure an empty table")]
    EmptyTable,
    #[error("replication with seed {seed} failed: {source}")]
    Replication {
        seed: u64,
        #[source]
        source: Box<SimError>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    /// Table size.
    pub m: usize,
    pub alpha: LoadFactor,
    pub discipline: Discipline,
    pub model: ModelKind,
    /// Insert/delete pairs after the fill; zero for insert-only.
    pub cycles: u64,
    pub replications: u32,
    pub base_seed: u64,
    /// Keys sampled by search benchmarks.
    pub sample_size: usize,
}

impl ExperimentConfig {
    pub fn new(m: usize, alpha: LoadFactor, discipline: Discipline, model: ModelKind) -> Self {
        let cycles = match model {
            ModelKind::InsertOnly => 0,
            ModelKind::SteadyState => 10 * m as u64,
        };
        ExperimentConfig {
            m,
            alpha,
            discipline,
            model,
            cycles,
            replications: 1,
            base_seed: 0,
            sample_size: 0,
        }
    }

    /// `floor(alpha * m)`.
    pub fn target_keys(&self) -> usize {
        (self.alpha.alpha() * self.m as f64).floor() as usize
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let fail = |msg: String| Err(SimError::Config(msg));
        if self.m < 16 {
            return fail(format!("m = {} must be at least 16", self.m));
        }
        if self.m > crate::hashtable::MAX_SLOTS {
            return fail(format!(
                "m = {} exceeds {}",
                self.m,
                crate::hashtable::MAX_SLOTS
            ));
        }
        if self.target_keys() >= self.m {
            return fail(format!(
                "alpha = {} leaves no free slot in m = {}",
                self.alpha, self.m
            ));
        }
        if self.model == ModelKind::InsertOnly && self.cycles != 0 {
            return fail("cycles must be 0 for the insert-only model".into());
        }
        if self.replications == 0 {
            return fail("replications must be at least 1".into());
        }
        if self.sample_size > self.target_keys() {
            return fail(format!(
                "sample size {} exceeds the {} stored keys",
                self.sample_size,
                self.target_keys()
            ));
        }
        Ok(())
    }
}

/// Distinct synthetic keys: a counter pushed through a bijective mixer.
#[derive(Debug, Clone)]
pub struct KeyGenerator {
    offset: u64,
    next: u64,
}

impl KeyGenerator {
    pub fn new(seed: u64) -> Self {
        KeyGenerator {
            offset: mix64(seed ^ KEY_STREAM_SALT),
            next: 0,
        }
    }

    pub fn next_key(&mut self) -> u64 {
        let k = mix64(self.next ^ self.offset);
        self.next += 1;
        k
    }
}

/// Table plus the generators that continue its history.
#[derive(Debug, Clone)]
pub struct Run {
    pub table: Table,
    pub keys: KeyGenerator,
    pub rng: ChaCha8Rng,
}

/// Inserts `floor(alpha * m)` fresh keys into an empty table.
pub fn fill(config: &ExperimentConfig, seed: u64) -> Result<Run, SimError> {
    let mut table = Table::new(config.m, config.discipline, seed);
    let mut keys = KeyGenerator::new(seed);
    for _ in 0..config.target_keys() {
        table.insert(keys.next_key())?;
    }
    Ok(Run {
        table,
        keys,
        rng: ChaCha8Rng::seed_from_u64(seed ^ DELETE_STREAM_SALT),
    })
}

/// Runs `cycles` rounds of one fresh insertion followed by one random
/// deletion.
pub fn churn(run: &mut Run, cycles: u64) -> Result<(), SimError> {
    for _ in 0..cycles {
        run.table.insert(run.keys.next_key())?;
        run.table.delete_random(&mut run.rng)?;
    }
    Ok(())
}

/// [`fill`] followed by `config.cycles` rounds of [`churn`].
pub fn steady_state(config: &ExperimentConfig, seed: u64) -> Result<Run, SimError> {
    let mut run = fill(config, seed)?;
    churn(&mut run, config.cycles)?;
    Ok(run)
}

/// Like [`steady_state`], measuring the table after each cumulative cycle
/// count in `checkpoints` (sorted ascending).
pub fn steady_state_snapshots(
    config: &ExperimentConfig,
    seed: u64,
    checkpoints: &[u64],
) -> Result<Vec<EmpiricalStats>, SimError> {
    let mut run = fill(config, seed)?;
    let mut done = 0u64;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &c in checkpoints {
        if c < done {
            return Err(SimError::Config("checkpoints must be ascending".into()));
        }
        churn(&mut run, c - done)?;
        done = c;
        out.push(measure(&run.table)?);
    }
    Ok(out)
}

/// Age statistics of the keys in a table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalStats {
    pub n: u64,
    pub mean_age: f64,
    /// Population variance.
    pub var_age: f64,
    pub histogram: BTreeMap<u32, u64>,
}

impl EmpiricalStats {
    /// Exact mean and variance from a histogram, via integer moments.
    pub fn from_histogram(histogram: BTreeMap<u32, u64>) -> Result<Self, SimError> {
        let mut n = 0u128;
        let mut s1 = 0u128;
        let mut s2 = 0u128;
        for (&age, &count) in &histogram {
            let (a, c) = (u128::from(age), u128::from(count));
            n += c;
            s1 += c * a;
            s2 += c * a * a;
        }
        if n == 0 {
            return Err(SimError::EmptyTable);
        }
        let nf = n as f64;
        let mean_age = s1 as f64 / nf;
        // n * s2 - s1^2 >= 0 by Cauchy-Schwarz
        let var_age = (n * s2 - s1 * s1) as f64 / (nf * nf);
        Ok(EmpiricalStats {
            n: n as u64,
            mean_age,
            var_age,
            histogram,
        })
    }

    /// `Pr{X >= i}` for `i = 1..=max_age`.
    pub fn tail_probabilities(&self) -> Vec<f64> {
        let max_age = self.histogram.keys().next_back().copied().unwrap_or(0) as usize;
        let mut counts = vec![0u64; max_age + 1];
        for (&age, &c) in &self.histogram {
            counts[age as usize] += c;
        }
        let n = self.n as f64;
        let mut acc = 0u64;
        let mut tails = vec![0.0; max_age];
        for i in (1..=max_age).rev() {
            acc += counts[i];
            tails[i - 1] = acc as f64 / n;
        }
        tails
    }
}

pub fn measure(table: &Table) -> Result<EmpiricalStats, SimError> {
    EmpiricalStats::from_histogram(table.age_histogram())
}

/// [`measure`] on a raw slot array, e.g. one read back from a snapshot.
pub fn measure_slots(slots: &[Slot]) -> Result<EmpiricalStats, SimError> {
    let mut hist = BTreeMap::new();
    for slot in slots {
        if let Slot::Occupied { age, .. } = slot {
            *hist.entry(*age).or_insert(0u64) += 1;
        }
    }
    EmpiricalStats::from_histogram(hist)
}

/// `max_i |a_i - b_i|`, treating missing entries as zero.
pub fn tail_sup_diff(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
}

/// Relative tolerances applied by [`compare`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    pub mean_rel: f64,
    pub var_rel: f64,
    pub tail_abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            mean_rel: 0.02,
            var_rel: 0.10,
            tail_abs: 0.01,
        }
    }
}

/// A replicated estimate with its standard error across replications.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    pub fn from_samples(samples: &[f64]) -> Estimate {
        let r = samples.len() as f64;
        let value = samples.iter().sum::<f64>() / r;
        let std_error = if samples.len() > 1 {
            let ss: f64 = samples.iter().map(|x| (x - value) * (x - value)).sum();
            (ss / (r - 1.0) / r).sqrt()
        } else {
            0.0
        };
        Estimate { value, std_error }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicationSummary {
    pub seed: u64,
    pub n: u64,
    pub mean_age: f64,
    pub var_age: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PassFlags {
    pub mean: bool,
    pub variance: Option<bool>,
    pub tails: Option<bool>,
}

/// Measured versus analytic search-cost statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub discipline: Discipline,
    pub model: ModelKind,
    pub alpha: f64,
    pub analytic_mean: f64,
    /// Known only for Robin Hood, and for FCFS/LCFS in the steady state.
    pub analytic_var: Option<f64>,
    pub empirical_mean: Estimate,
    pub empirical_var: Estimate,
    pub mean_rel_err: f64,
    pub var_rel_err: Option<f64>,
    /// `max_i |Pr_emp{X >= i} - Pr{X >= i}|` over the pooled histogram
    /// (Robin Hood only).
    pub tail_sup_diff: Option<f64>,
    pub tolerances: Tolerances,
    pub passes: PassFlags,
    pub replications: Vec<ReplicationSummary>,
}

impl ComparisonReport {
    pub fn all_pass(&self) -> bool {
        self.passes.mean
            && self.passes.variance.unwrap_or(true)
            && self.passes.tails.unwrap_or(true)
    }
}

/// Analytic reference variance: Robin Hood from the tail recurrences,
/// FCFS/LCFS in the steady state from the geometric law
/// `alpha / (1 - alpha)^2`.
pub fn reference_variance(
    load: LoadFactor,
    model: ModelKind,
    discipline: Discipline,
    epsilon: f64,
) -> Result<Option<f64>, SimError> {
    Ok(match (discipline, model) {
        (Discipline::RobinHood, _) => {
            Some(analytic::variance_search_cost(load, model, epsilon)?.variance)
        }
        (_, ModelKind::SteadyState) => {
            let one_minus = 1.0 - load.alpha();
            Some(load.alpha() / (one_minus * one_minus))
        }
        (_, ModelKind::InsertOnly) => None,
    })
}

/// Compares one or more replications (listed in seed order) with the model.
pub fn compare(
    runs: &[(u64, EmpiricalStats)],
    load: LoadFactor,
    model: ModelKind,
    discipline: Discipline,
    epsilon: f64,
    tolerances: Tolerances,
) -> Result<ComparisonReport, SimError> {
    if runs.is_empty() {
        return Err(SimError::Config("nothing to compare".into()));
    }
    let analytic_mean = analytic::mean_search_cost(load, model);
    let analytic_var = reference_variance(load, model, discipline, epsilon)?;

    let means: Vec<f64> = runs.iter().map(|(_, s)| s.mean_age).collect();
    let vars: Vec<f64> = runs.iter().map(|(_, s)| s.var_age).collect();
    let empirical_mean = Estimate::from_samples(&means);
    let empirical_var = Estimate::from_samples(&vars);

    let mut pooled = BTreeMap::new();
    for (_, s) in runs {
        for (&age, &c) in &s.histogram {
            *pooled.entry(age).or_insert(0u64) += c;
        }
    }
    let tail_sup_diff = if discipline == Discipline::RobinHood {
        let model_tails = if load.alpha() > 0.0 {
            analytic::rh_tails(load, model, epsilon)?.tail_probabilities()
        } else {
            vec![1.0]
        };
        let emp_tails = if pooled.is_empty() {
            vec![1.0]
        } else {
            EmpiricalStats::from_histogram(pooled)?.tail_probabilities()
        };
        Some(tail_sup_diff(&emp_tails, &model_tails).min(1.0))
    } else {
        None
    };

    let mean_rel_err = (empirical_mean.value - analytic_mean).abs() / analytic_mean;
    let var_rel_err = analytic_var.map(|v| {
        if v == 0.0 {
            empirical_var.value.abs()
        } else {
            (empirical_var.value - v).abs() / v
        }
    });
    let passes = PassFlags {
        mean: mean_rel_err <= tolerances.mean_rel,
        variance: var_rel_err.map(|e| e <= tolerances.var_rel),
        tails: tail_sup_diff.map(|d| d <= tolerances.tail_abs),
    };
    let replications = runs
        .iter()
        .map(|(seed, s)| ReplicationSummary {
            seed: *seed,
            n: s.n,
            mean_age: s.mean_age,
            var_age: s.var_age,
        })
        .collect();

    Ok(ComparisonReport {
        discipline,
        model,
        alpha: load.alpha(),
        analytic_mean,
        analytic_var,
        empirical_mean,
        empirical_var,
        mean_rel_err,
        var_rel_err,
        tail_sup_diff,
        tolerances,
        passes,
        replications,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchCost {
    /// Mean probes of the standard search over the sample.
    pub standard_mean: f64,
    /// Mean inspections of the mean-centered search over the sample.
    pub centered_mean: f64,
    /// Mean stored age of the sampled keys.
    pub sampled_mean_age: f64,
}

/// Searches `sample_size` keys drawn without replacement with both search
/// strategies.
pub fn search_cost_experiment(
    table: &Table,
    sample_size: usize,
    center: f64,
    seed: u64,
) -> Result<SearchCost, SimError> {
    if sample_size == 0 || sample_size > table.len() {
        return Err(SimError::Config(format!(
            "sample size {sample_size} must be in 1..={}",
            table.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ SAMPLE_STREAM_SALT);
    let mut standard = 0u64;
    let mut centered = 0u64;
    let mut ages = 0u64;
    for i in index::sample(&mut rng, table.len(), sample_size) {
        let (key, age) = table.registry_entry(i);
        standard += u64::from(table.search_standard(key)?);
        centered += table.search_mean_centered(key, center)?;
        ages += u64::from(age);
    }
    let k = sample_size as f64;
    Ok(SearchCost {
        standard_mean: standard as f64 / k,
        centered_mean: centered as f64 / k,
        sampled_mean_age: ages as f64 / k,
    })
}

/// Runs `experiment` for seeds `base_seed .. base_seed + replications`,
/// possibly in parallel, returning results in seed order.
///
/// `threads` caps the worker count; `None` uses the global rayon pool.
pub fn replicate<T, F>(
    config: &ExperimentConfig,
    threads: Option<usize>,
    experiment: F,
) -> Result<Vec<(u64, T)>, SimError>
where
    T: Send,
    F: Fn(&ExperimentConfig, u64) -> Result<T, SimError> + Sync,
{
    config.validate()?;
    let seeds: Vec<u64> = (0..u64::from(config.replications))
        .map(|r| config.base_seed.wrapping_add(r))
        .collect();
    let work = || {
        seeds
            .par_iter()
            .map(|&seed| {
                experiment(config, seed)
                    .map(|v| (seed, v))
                    .map_err(|e| SimError::Replication {
                        seed,
                        source: Box::new(e),
                    })
            })
            .collect::<Vec<_>>()
    };
    let results = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| SimError::Config(e.to_string()))?
            .install(work),
        None => work(),
    };
    // first failure in seed order, independent of completion order
    results.into_iter().collect()
}

/// Builds the table the configuration describes (fill, then churn for the
/// steady-state model) and measures it. An empty table measures as the
/// degenerate distribution at 1.
pub fn run_replication(config: &ExperimentConfig, seed: u64) -> Result<EmpiricalStats, SimError> {
    let run = match config.model {
        ModelKind::InsertOnly => fill(config, seed)?,
        ModelKind::SteadyState => steady_state(config, seed)?,
    };
    if run.table.is_empty() {
        return Ok(EmpiricalStats {
            n: 0,
            mean_age: 1.0,
            var_age: 0.0,
            histogram: BTreeMap::new(),
        });
    }
    measure(&run.table)
}

/// Replicated table experiment compared with the analytic model.
pub fn run_experiment(
    config: &ExperimentConfig,
    epsilon: f64,
    tolerances: Tolerances,
    threads: Option<usize>,
) -> Result<ComparisonReport, SimError> {
    let runs = replicate(config, threads, run_replication)?;
    compare(
        &runs,
        config.alpha,
        config.model,
        config.discipline,
        epsilon,
        tolerances,
    )
}
