//! Chance-constraint evaluators.
//!
//! A solution's empirical confidence is the fraction of the `L^m` sample
//! combinations whose total weight fits within the capacity. The evaluators
//! answer "is that fraction at least P0?" by different routes:
//!
//! - [`brute_force_confidence`]: full enumeration, the reference oracle
//! - [`exact_feasibility`]: pops combination sums in non-increasing order
//!   from a max-heap and stops as soon as the verdict is decided
//! - [`monte_carlo_confidence`]: bootstrap resampling of the item samples
//! - [`accelerated_mc`]: Monte Carlo preceded by a sorted-sample screening
//!   test that eliminates many infeasible solutions without simulation
//! - [`gaussian_feasibility`]: moment-based normal-quantile test
//! - [`bernstein_lower_bound`] / [`hoeffding_lower_bound`]: concentration
//!   lower bounds on the confidence
//!
//! All evaluators are pure given (instance, solution, seed) and apply the
//! same boundary rules: a combination summing to exactly `W` satisfies the
//! constraint, and a solution is infeasible only when the violating count
//! strictly exceeds `(1-P0)·L^m`.

mod bounds;
mod brute;
mod gaussian;
mod heap;
mod mc;
mod moments;
mod screen;

pub use bounds::{bernstein_lower_bound, hoeffding_lower_bound, required_sample_size};
pub use brute::{brute_force_confidence, brute_force_confidence_with_limit, brute_force_outcome, DEFAULT_BRUTE_FORCE_LIMIT};
pub use gaussian::{gaussian_confidence, gaussian_feasibility, inv_norm_cdf, norm_cdf};
pub use heap::{exact_feasibility, popped_sums_prefix};
pub use mc::{accelerated_mc, accelerated_mc_with_tuples, monte_carlo_confidence};
pub use moments::{MomentSummary, MomentTable};
pub use screen::{build_screen_tuples, fast_screen, IndexTuple, ScreenResult, SCREEN_TUPLE_CAP};

use crate::instance::{Instance, Solution};
use crate::rng::solution_seed;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMethod {
    ExactHeap,
    BruteForce,
    MonteCarlo,
    AcceleratedMc,
    GaussianQuantile,
}

/// Effort counters, exposed for the harness's evaluation-time metric.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalWork {
    pub heap_pops: u64,
    pub draws: u64,
    pub screen_checks: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalOutcome {
    pub verdict: Verdict,
    /// Estimated confidence level. The exact method may terminate early
    /// knowing only the verdict, in which case this is `None`.
    pub estimated_confidence: Option<f64>,
    pub method: EvalMethod,
    pub work: EvalWork,
}

impl EvalOutcome {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("brute force refused: {combinations:.0} combinations exceed the guard limit {limit}")]
    GuardExceeded { combinations: f64, limit: u64 },
    #[error("draw count must be positive")]
    ZeroDraws,
    #[error("k = {k} out of range: instance has {total:.0} combinations")]
    PrefixOutOfRange { k: u64, total: f64 },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
}

/// Number of violating combinations tolerated before a solution becomes
/// infeasible: `(1-P0)·L^m`. Every evaluator and the screening construction
/// share this exact floating-point expression so their verdicts agree.
pub fn violation_budget(p0: f64, total_combinations: f64) -> f64 {
    (1.0 - p0) * total_combinations
}

/// Strict feasibility rule on a violation count: infeasible only when the
/// count strictly exceeds the budget, so a count of exactly `(1-P0)·L^m`
/// is still feasible.
pub fn feasible_by_violations(violations: f64, p0: f64, total_combinations: f64) -> bool {
    violations <= violation_budget(p0, total_combinations)
}

/// Configured evaluation method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvaluatorKind {
    ExactHeap,
    /// Reference enumeration; refuses beyond its guard limit.
    BruteForce { limit: u64 },
    MonteCarlo { draws: u64 },
    AcceleratedMc { draws: u64 },
    GaussianQuantile,
}

/// An evaluation method bound to an instance, with per-instance caches
/// (screening tuples, moment table) built once.
///
/// Monte Carlo seeds are derived from `(base_seed, picks)`, so re-evaluating
/// the same solution reproduces the same estimate.
pub struct Evaluator<'a> {
    instance: &'a Instance,
    kind: EvaluatorKind,
    base_seed: u64,
    screen_tuples: Vec<IndexTuple>,
    moments: Option<MomentTable>,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance, kind: EvaluatorKind, base_seed: u64) -> Self {
        match kind {
            EvaluatorKind::MonteCarlo { draws } | EvaluatorKind::AcceleratedMc { draws } => {
                assert!(draws > 0, "draw count must be positive");
            }
            _ => {}
        }
        let screen_tuples = match kind {
            EvaluatorKind::AcceleratedMc { .. } => build_screen_tuples(
                instance.num_classes,
                instance.sample_count,
                instance.confidence_level,
            ),
            _ => Vec::new(),
        };
        let moments = match kind {
            EvaluatorKind::GaussianQuantile => Some(MomentTable::new(instance)),
            _ => None,
        };
        Self { instance, kind, base_seed, screen_tuples, moments }
    }

    pub fn kind(&self) -> EvaluatorKind {
        self.kind
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    /// Evaluate a valid solution. Pure: identical inputs give identical
    /// outcomes regardless of call order.
    pub fn evaluate(&self, solution: &Solution) -> EvalOutcome {
        match self.kind {
            EvaluatorKind::ExactHeap => exact_feasibility(self.instance, solution),
            EvaluatorKind::BruteForce { limit } => {
                brute_force_outcome(self.instance, solution, limit)
                    .expect("instance within brute force guard")
            }
            EvaluatorKind::MonteCarlo { draws } => {
                let seed = solution_seed(self.base_seed, &solution.picks);
                monte_carlo_confidence(self.instance, solution, draws, seed)
                    .expect("draws validated at construction")
            }
            EvaluatorKind::AcceleratedMc { draws } => {
                let seed = solution_seed(self.base_seed, &solution.picks);
                accelerated_mc_with_tuples(self.instance, solution, draws, seed, &self.screen_tuples)
                    .expect("draws validated at construction")
            }
            EvaluatorKind::GaussianQuantile => {
                let moments = self.moments.as_ref().expect("moment table built");
                let picked = moments.picked(solution);
                let verdict = gaussian_feasibility(
                    &picked,
                    self.instance.capacity,
                    self.instance.confidence_level,
                );
                let confidence = gaussian_confidence(&picked, self.instance.capacity);
                EvalOutcome {
                    verdict,
                    estimated_confidence: Some(confidence),
                    method: EvalMethod::GaussianQuantile,
                    work: EvalWork::default(),
                }
            }
        }
    }
}
