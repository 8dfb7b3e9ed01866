//! `rhlab`: search-cost distributions, variance bounds, table simulations and
//! figure data for random-probing hash tables.
//!
//! Exit codes: 0 on success with every check passing, 1 when a computation
//! fails or a check does not pass, 2 on bad arguments.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rhlab::analytic::{self, AnalyticError, LoadFactor, ModelKind};
use rhlab::hashtable::Discipline;
use rhlab::simulator::{self, ExperimentConfig, SimError, Tolerances};
use serde::Serialize;
use serde_json::json;

use output::{emit_rows, json_bytes, write_to, Format, OutputArgs};

const DEFAULT_GRID: [f64; 6] = [0.1, 0.5, 0.9, 0.99, 0.999, 0.999_999];
const DEFAULT_SAMPLE: usize = 10_000;
const THREADS_VAR: &str = "RHLAB_THREADS";

#[derive(Debug)]
pub enum Failure {
    /// Rejected input; exit code 2.
    Usage(String),
    /// Failed computation or broken invariant; exit code 1.
    Internal(String),
}

impl From<AnalyticError> for Failure {
    fn from(e: AnalyticError) -> Self {
        match e {
            AnalyticError::InvalidLoadFactor(_)
            | AnalyticError::InvalidEpsilon(_)
            | AnalyticError::Domain { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Config(msg) => Failure::Usage(msg),
            SimError::Analytic(a) => a.into(),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rhlab",
    version,
    about = "Robin Hood hashing: distributions, bounds and simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Search-cost distribution of Robin Hood hashing.
    Dist(DistArgs),
    /// Mean, variance and variance upper bound over a grid of load factors.
    Bounds(BoundsArgs),
    /// Build tables by simulation and compare their ages with the analytic model.
    Simulate(SimulateArgs),
    /// Standard versus mean-centered successful search on an insert-only table.
    Searchbench(SearchArgs),
    /// Plot-ready CSV data for the figures.
    Figures(FigureArgs),
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value = "insert-only")]
    model: ModelKind,
    #[arg(long, default_value_t = analytic::DEFAULT_EPSILON)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Comma-separated load factors in (0, 1).
    #[arg(long, value_delimiter = ',', conflicts_with = "beta_grid")]
    alpha_grid: Option<Vec<f64>>,
    /// Comma-separated values of beta = 1/(1 - alpha), kept exact.
    #[arg(long, value_delimiter = ',')]
    beta_grid: Option<Vec<f64>>,
    #[arg(long, default_value = "insert-only")]
    model: ModelKind,
    #[arg(long, default_value_t = analytic::DEFAULT_EPSILON)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 100_000)]
    m: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value = "rh")]
    discipline: Discipline,
    #[arg(long, default_value = "insert-only")]
    model: ModelKind,
    /// Insert/delete pairs after the fill [default: 10m for steady-state, 0 otherwise]
    #[arg(long)]
    cycles: Option<u64>,
    #[arg(long, default_value_t = 5)]
    replications: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = analytic::DEFAULT_EPSILON)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 100_000)]
    m: usize,
    #[arg(long)]
    alpha: f64,
    #[arg(long, default_value = "rh")]
    discipline: Discipline,
    /// Keys searched [default: min(10000, stored keys)]
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = analytic::DEFAULT_EPSILON)]
    epsilon: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Figure {
    Fig1,
    Fig2,
    Fig4,
    All,
}

#[derive(Debug, Args)]
struct FigureArgs {
    #[arg(long, value_enum, default_value_t = Figure::All)]
    which: Figure,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Table size for the simulated curves of fig2.
    #[arg(long, default_value_t = 100_000)]
    m: usize,
    /// Churn cycles for fig2 [default: 10m]
    #[arg(long)]
    cycles: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dist(a) => dist(a),
        Command::Bounds(a) => bounds(a),
        Command::Simulate(a) => simulate(a),
        Command::Searchbench(a) => searchbench(a),
        Command::Figures(a) => figures(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("rhlab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("rhlab: error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// Load factor strictly inside (0, 1).
fn open_load(alpha: f64) -> Result<LoadFactor, Failure> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Failure::Usage(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    Ok(LoadFactor::new(alpha)?)
}

/// Replication thread cap from the environment; `None` means all cores.
fn thread_cap() -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Failure::Usage(format!(
                "{THREADS_VAR} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

#[derive(Debug, Serialize)]
struct DistRow {
    i: usize,
    p: f64,
    tail: f64,
    double_tail: f64,
}

fn dist(a: DistArgs) -> Result<bool, Failure> {
    let started = Instant::now();
    let load = open_load(a.alpha)?;
    let tails = analytic::rh_tails(load, a.model, a.epsilon)?;
    let p = analytic::distribution(&tails);
    let bars = tails.single_tails();
    let rows: Vec<DistRow> = (0..tails.len())
        .map(|k| DistRow {
            i: k + 1,
            p: p[k],
            tail: bars[k],
            double_tail: tails.values[k],
        })
        .collect();
    let total: f64 = p.iter().sum();
    if !(total <= 1.0 + 1e-12 && total >= 1.0 - 3.0 * a.epsilon / a.alpha - 1e-12) {
        return Err(Failure::Internal(format!("probabilities sum to {total}")));
    }
    let config = json!({
        "alpha": a.alpha,
        "beta": load.beta(),
        "model": a.model,
        "epsilon": a.epsilon,
        "remainder_bound": tails.remainder_bound,
    });
    emit_rows(&a.output, "rhlab.dist/1", config, started, &rows)?;
    Ok(true)
}

#[derive(Debug, Serialize)]
struct BoundsRow {
    alpha: f64,
    beta: f64,
    mean: f64,
    variance: f64,
    variance_upper_bound: f64,
    bound_minus_variance: f64,
}

fn bounds(a: BoundsArgs) -> Result<bool, Failure> {
    let started = Instant::now();
    let loads: Vec<LoadFactor> = match (&a.alpha_grid, &a.beta_grid) {
        (_, Some(betas)) => betas
            .iter()
            .map(|&b| {
                if b > 1.0 && b.is_finite() {
                    Ok(LoadFactor::from_beta(b)?)
                } else {
                    Err(Failure::Usage(format!(
                        "beta must be finite and > 1, got {b}"
                    )))
                }
            })
            .collect::<Result<_, _>>()?,
        (Some(alphas), None) => alphas
            .iter()
            .map(|&x| open_load(x))
            .collect::<Result<_, _>>()?,
        (None, None) => DEFAULT_GRID
            .iter()
            .map(|&x| open_load(x))
            .collect::<Result<_, _>>()?,
    };
    let mut rows = Vec::with_capacity(loads.len());
    for load in loads {
        let moments = analytic::variance_search_cost(load, a.model, a.epsilon)?;
        let bound = analytic::variance_upper_bound(load, a.model)?;
        rows.push(BoundsRow {
            alpha: load.alpha(),
            beta: load.beta(),
            mean: moments.mean,
            variance: moments.variance,
            variance_upper_bound: bound,
            bound_minus_variance: bound - moments.variance,
        });
    }
    let config = json!({
        "model": a.model,
        "epsilon": a.epsilon,
        "grid": if a.beta_grid.is_some() { "beta" } else { "alpha" },
    });
    emit_rows(&a.output, "rhlab.bounds/1", config, started, &rows)?;
    Ok(rows.iter().all(|r| r.bound_minus_variance >= 0.0))
}

#[derive(Debug, Serialize)]
struct SimulateRow {
    discipline: Discipline,
    model: ModelKind,
    alpha: f64,
    m: usize,
    cycles: u64,
    replications: u32,
    seed: u64,
    analytic_mean: f64,
    analytic_var: Option<f64>,
    empirical_mean: f64,
    empirical_mean_se: f64,
    empirical_var: f64,
    empirical_var_se: f64,
    mean_rel_err: f64,
    var_rel_err: Option<f64>,
    tail_sup_diff: Option<f64>,
    pass: bool,
}

fn simulate(a: SimulateArgs) -> Result<bool, Failure> {
    let started = Instant::now();
    let load = LoadFactor::new(a.alpha)?;
    let mut config = ExperimentConfig::new(a.m, load, a.discipline, a.model);
    if let Some(c) = a.cycles {
        config.cycles = c;
    }
    config.replications = a.replications;
    config.base_seed = a.seed;
    config.validate()?;
    let threads = thread_cap()?;
    let tolerances = Tolerances::default();
    let report = simulator::run_experiment(&config, a.epsilon, tolerances, threads)?;
    let pass = report.all_pass();
    let echo = json!({
        "m": config.m,
        "alpha": a.alpha,
        "discipline": config.discipline,
        "model": config.model,
        "cycles": config.cycles,
        "replications": config.replications,
        "seed": config.base_seed,
        "epsilon": a.epsilon,
        "tolerances": tolerances,
    });
    let bytes = match a.output.format {
        Format::Csv => output::csv_bytes(&[SimulateRow {
            discipline: config.discipline,
            model: config.model,
            alpha: a.alpha,
            m: config.m,
            cycles: config.cycles,
            replications: config.replications,
            seed: config.base_seed,
            analytic_mean: report.analytic_mean,
            analytic_var: report.analytic_var,
            empirical_mean: report.empirical_mean.value,
            empirical_mean_se: report.empirical_mean.std_error,
            empirical_var: report.empirical_var.value,
            empirical_var_se: report.empirical_var.std_error,
            mean_rel_err: report.mean_rel_err,
            var_rel_err: report.var_rel_err,
            tail_sup_diff: report.tail_sup_diff,
            pass,
        }])?,
        Format::Json => json_bytes(
            "rhlab.simulate/1",
            echo,
            started,
            json!({ "pass": pass, "report": report }),
        )?,
    };
    write_to(a.output.out.as_deref(), &bytes)?;
    Ok(pass)
}

#[derive(Debug, Serialize)]
struct SearchRow {
    mode: &'static str,
    mean_probes: f64,
    mu: f64,
    /// Robin Hood only; the other disciplines have no closed-form value.
    sigma: Option<f64>,
}

fn searchbench(a: SearchArgs) -> Result<bool, Failure> {
    let started = Instant::now();
    let load = open_load(a.alpha)?;
    let mut config = ExperimentConfig::new(a.m, load, a.discipline, ModelKind::InsertOnly);
    config.base_seed = a.seed;
    let n = config.target_keys();
    if n == 0 {
        return Err(Failure::Usage(format!(
            "alpha = {} stores no keys in m = {}",
            a.alpha, a.m
        )));
    }
    config.sample_size = a.sample.unwrap_or(DEFAULT_SAMPLE.min(n));
    if config.sample_size == 0 {
        return Err(Failure::Usage("sample must be at least 1".into()));
    }
    config.validate()?;
    let moments = analytic::variance_search_cost(load, ModelKind::InsertOnly, a.epsilon)?;
    let run = simulator::fill(&config, config.base_seed)?;
    let cost = simulator::search_cost_experiment(
        &run.table,
        config.sample_size,
        moments.mean,
        config.base_seed,
    )?;
    if cost.standard_mean != cost.sampled_mean_age {
        return Err(Failure::Internal(format!(
            "standard search mean {} differs from the sampled mean age {}",
            cost.standard_mean, cost.sampled_mean_age
        )));
    }
    let sigma = (a.discipline == Discipline::RobinHood).then(|| moments.std_dev());
    let rows = [
        SearchRow {
            mode: "standard",
            mean_probes: cost.standard_mean,
            mu: moments.mean,
            sigma,
        },
        SearchRow {
            mode: "centered",
            mean_probes: cost.centered_mean,
            mu: moments.mean,
            sigma,
        },
    ];
    let echo = json!({
        "m": config.m,
        "alpha": a.alpha,
        "discipline": config.discipline,
        "model": config.model,
        "sample": config.sample_size,
        "seed": config.base_seed,
        "epsilon": a.epsilon,
        "center": moments.mean,
    });
    emit_rows(&a.output, "rhlab.searchbench/1", echo, started, &rows)?;
    Ok(true)
}

#[derive(Debug, Serialize)]
struct Fig1Row {
    x: u32,
    double_tail: f64,
    majorant: f64,
}

#[derive(Debug, Serialize)]
struct Fig2Row {
    i: u32,
    fcfs: f64,
    lcfs: f64,
    rh: f64,
}

#[derive(Debug, Serialize)]
struct Fig4Row {
    beta: u32,
    variance: f64,
    beta_line: f64,
}

fn figures(a: FigureArgs) -> Result<bool, Failure> {
    std::fs::create_dir_all(&a.out_dir)
        .map_err(|e| Failure::Internal(format!("{}: {e}", a.out_dir.display())))?;
    let wanted = |f: Figure| a.which == f || a.which == Figure::All;
    let mut ok = true;
    if wanted(Figure::Fig1) {
        let load = LoadFactor::from_beta(10.0)?;
        let tails = analytic::rh_tails(load, ModelKind::InsertOnly, analytic::DEFAULT_EPSILON)?;
        let rows = (1..=10u32)
            .map(|x| {
                Ok(Fig1Row {
                    x,
                    double_tail: tails.double_tail(x as usize),
                    majorant: analytic::ode_majorant(f64::from(x), load, ModelKind::InsertOnly)?,
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        ok &= rows.iter().all(|r| r.double_tail <= r.majorant + 1e-9);
        write_to(
            Some(&a.out_dir.join("fig1.csv")),
            &output::csv_bytes(&rows)?,
        )?;
    }
    if wanted(Figure::Fig2) {
        let rows = fig2_rows(&a)?;
        write_to(
            Some(&a.out_dir.join("fig2.csv")),
            &output::csv_bytes(&rows)?,
        )?;
    }
    if wanted(Figure::Fig4) {
        let rows = (1..=100u32)
            .map(|b| {
                let load = LoadFactor::from_beta(f64::from(b))?;
                let m = analytic::variance_search_cost(
                    load,
                    ModelKind::SteadyState,
                    analytic::DEFAULT_EPSILON,
                )?;
                Ok(Fig4Row {
                    beta: b,
                    variance: m.variance,
                    beta_line: f64::from(b),
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        ok &= rows.iter().all(|r| r.variance <= r.beta_line + 1.0 / 3.0);
        write_to(
            Some(&a.out_dir.join("fig4.csv")),
            &output::csv_bytes(&rows)?,
        )?;
    }
    Ok(ok)
}

/// Steady-state search-cost distributions at alpha = 0.99: FCFS and LCFS
/// measured on churned tables, Robin Hood from the recurrence.
fn fig2_rows(a: &FigureArgs) -> Result<Vec<Fig2Row>, Failure> {
    const MAX_I: u32 = 150;
    let load = LoadFactor::new(0.99)?;
    let rh = analytic::distribution(&analytic::rh_tails(
        load,
        ModelKind::SteadyState,
        analytic::DEFAULT_EPSILON,
    )?);
    let threads = thread_cap()?;
    let mut empirical = Vec::new();
    for d in [Discipline::Fcfs, Discipline::Lcfs] {
        let mut config = ExperimentConfig::new(a.m, load, d, ModelKind::SteadyState);
        if let Some(c) = a.cycles {
            config.cycles = c;
        }
        config.base_seed = a.seed;
        let mut runs = simulator::replicate(&config, threads, simulator::run_replication)?;
        empirical.push(runs.remove(0).1);
    }
    let share = |k: usize, i: u32| {
        let s = &empirical[k];
        s.histogram.get(&i).copied().unwrap_or(0) as f64 / s.n.max(1) as f64
    };
    Ok((1..=MAX_I)
        .map(|i| Fig2Row {
            i,
            fcfs: share(0, i),
            lcfs: share(1, i),
            rh: rh.get(i as usize - 1).copied().unwrap_or(0.0),
        })
        .collect())
}
