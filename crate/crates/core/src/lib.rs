//! Open addressing with random probing under FCFS, LCFS and Robin Hood
//! collision resolution.
//!
//! The crate has three layers:
//!
//! * [`analytic`] computes the asymptotic search-cost distribution of Robin
//!   Hood hashing (insert-only and insert/delete steady state), its moments,
//!   the ODE majorants that bound it, and closed-form variance and tail bounds.
//! * [`hashtable`] is a concrete table with random probing, deletion by
//!   marking, standard and mean-centered successful search.
//! * [`simulator`] drives tables to a load factor (and through insert/delete
//!   churn), measures age statistics and compares them with [`analytic`].

// `!(x >= a)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod hashtable;
pub mod simulator;

pub use analytic::{LoadFactor, ModelKind, Moments, TailSequence};
pub use hashtable::{Discipline, InsertionReceipt, Slot, Table};
pub use simulator::{ComparisonReport, EmpiricalStats, ExperimentConfig};

/// Crate version, echoed in CLI reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
