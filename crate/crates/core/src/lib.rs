//! Solver toolkit for the data-driven chance-constrained multiple-choice
//! knapsack problem (DDCCMCKP).
//!
//! Items have fixed costs and random weights known only through sample data.
//! Exactly one item is picked per class; a solution is feasible when the
//! probability of the total weight fitting within the capacity is at least
//! the required confidence level. The crate provides:
//!
//! - [`instance`]: problem data model, validation and JSON serialization
//! - [`eval`]: chance-constraint evaluators (exact heap enumeration,
//!   Monte Carlo, accelerated Monte Carlo with fast screening,
//!   concentration bounds, Gaussian quantile test)
//! - [`search`]: the DDALS local-search solver
//! - [`baselines`]: greedy, GA, EDA and Gaussian-assumption solvers
//! - [`generator`]: LAB/APP benchmark generators and hidden truth models
//! - [`harness`]: experiment orchestration, metrics and CSV reports

pub mod baselines;
pub mod eval;
pub mod generator;
pub mod harness;
pub mod instance;
pub mod rng;
pub mod search;

pub use eval::{EvalMethod, EvalOutcome, Evaluator, EvaluatorKind, Verdict};
pub use instance::{Class, Instance, InstanceError, Item, Solution, SolutionError};
pub use search::{ddals, DdalsParams, DdalsResult, SfeVariant};

