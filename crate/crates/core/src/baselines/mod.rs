//! Comparison solvers: Greedy (the constructive procedure alone), a genetic
//! algorithm, a univariate-marginal EDA, and the DDALS skeleton driven by
//! the Gaussian-quantile feasibility test.

mod eda;
mod ga;

pub use eda::{eda, EdaParams};
pub use ga::{genetic_algorithm, GaParams};

use crate::eval::{EvalOutcome, Evaluator, EvaluatorKind};
use crate::instance::{Instance, Solution};
use crate::rng::derive_seed;
use crate::search::{build_surrogates, cp_construct, ddals, DdalsParams, DdalsResult, SearchCtx, SolutionArchive};

/// Output shared by the population baselines.
#[derive(Debug, Clone)]
pub struct BaselineResult {
    pub solution: Solution,
    pub cost: f64,
    /// False when no feasible individual was ever evaluated; the returned
    /// solution is then the best infeasible one.
    pub feasible: bool,
    pub estimated_confidence: Option<f64>,
    pub eval_count: u64,
}

/// Greedy baseline: the constructive procedure with no subsequent search.
/// Shares the CP code path (and therefore the exact start solution) with
/// [`ddals`] for the same lambda, evaluator and seed.
pub fn greedy(
    instance: &Instance,
    lambda: f64,
    evaluator: EvaluatorKind,
    seed: u64,
) -> BaselineResult {
    let table = build_surrogates(instance, lambda);
    let eval = Evaluator::new(instance, evaluator, derive_seed(seed, 0));
    let mut ctx = SearchCtx {
        instance,
        table: &table,
        evaluator: &eval,
        archives: SolutionArchive::new(),
        eval_count: 0,
        rng: crate::rng::chacha(derive_seed(seed, 1)),
        backfill_seed: derive_seed(seed, 2),
    };
    let (solution, feasible) = cp_construct(&mut ctx);
    let cost = ctx.cost(&solution);
    let estimated_confidence = ctx.archives.lookup(&solution).map(|e| e.confidence);
    BaselineResult { solution, cost, feasible, estimated_confidence, eval_count: ctx.eval_count }
}

/// The DDALS skeleton with the data-driven evaluator replaced by the
/// Gaussian-quantile feasibility test.
pub fn gaussian_baseline(instance: &Instance, params: &DdalsParams) -> DdalsResult {
    let params = DdalsParams { evaluator: EvaluatorKind::GaussianQuantile, ..*params };
    ddals(instance, &params)
}

/// Feasible individuals rank above every infeasible one; feasible ties
/// break by lower cost, infeasible ones by higher estimated confidence.
pub(crate) fn rank_key(outcome: &EvalOutcome, cost: f64) -> (u8, f64) {
    if outcome.is_feasible() {
        (0, cost)
    } else {
        (1, -outcome.estimated_confidence.unwrap_or(0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::load_instance;

    #[test]
    fn greedy_uses_one_evaluation_on_a_feasible_start() {
        let inst = load_instance(
            br#"{"m": 2, "W": 9.0, "P0": 0.9, "L": 1,
                 "classes": [
                    [{"cost": 1.0, "samples": [5.0]}, {"cost": 4.0, "samples": [2.0]}],
                    [{"cost": 1.0, "samples": [4.0]}, {"cost": 3.0, "samples": [1.0]}]
                 ]}"#,
        )
        .unwrap();
        let out = greedy(&inst, 1.0, EvaluatorKind::ExactHeap, 5);
        assert!(out.feasible);
        assert_eq!(out.eval_count, 1);
    }

    #[test]
    fn greedy_matches_ddals_start_for_same_lambda_and_seed() {
        for seed in 0..3 {
            let inst = crate::generator::tests_support::small_lab_instance(seed + 60);
            let g = greedy(&inst, 1.0, EvaluatorKind::ExactHeap, seed);
            let d = ddals(&inst, &DdalsParams::new(EvaluatorKind::ExactHeap, seed));
            assert_eq!(g.cost, d.cp_cost, "seed {seed}");
        }
    }

    #[test]
    fn feasible_always_outranks_infeasible() {
        use crate::eval::{EvalMethod, EvalWork, Verdict};
        let feas = EvalOutcome {
            verdict: Verdict::Feasible,
            estimated_confidence: Some(0.5),
            method: EvalMethod::ExactHeap,
            work: EvalWork::default(),
        };
        let infeas = EvalOutcome {
            verdict: Verdict::Infeasible,
            estimated_confidence: Some(0.999),
            method: EvalMethod::ExactHeap,
            work: EvalWork::default(),
        };
        // Even an expensive feasible individual beats a confident infeasible one.
        assert!(rank_key(&feas, 1e9) < rank_key(&infeas, 0.0));
        // Infeasible individuals order by confidence, descending.
        let low = EvalOutcome { estimated_confidence: Some(0.2), ..infeas.clone() };
        assert!(rank_key(&infeas, 1.0) < rank_key(&low, 1.0));
    }
}
