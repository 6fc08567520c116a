//! Data-driven adaptive local search (DDALS).
//!
//! A run builds surrogate weights, constructs a start solution (CP), then
//! alternates local swap search (LSS) and random degradation for `max_iter`
//! iterations, deepens the best solution with further swap search (FSS),
//! and finally filters the output through solution feasibility enhancement
//! (SFE) over the archives collected along the way.

mod archive;
mod ops;
mod sfe;
mod surrogate;

pub use archive::{ArchiveEntry, SolutionArchive, ARCHIVE_CAPACITY};
pub use sfe::{rank_sum_score, sfe_select, v1_threshold, SfeSelection, SfeVariant};
pub use surrogate::{build_surrogates, SurrogateTable};

pub(crate) use ops::{constructive_procedure as cp_construct, SearchCtx};

use crate::eval::{Evaluator, EvaluatorKind};
use crate::instance::{Instance, Solution};
use crate::rng::{chacha, derive_seed};
use ops::{constructive_procedure, degrade, further_swap_search, local_swap_search, random_init, LssOutcome};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdalsParams {
    /// Weighting factor for the surrogate weights.
    pub lambda: f64,
    pub max_iter: u32,
    pub sfe_variant: SfeVariant,
    pub evaluator: EvaluatorKind,
    pub seed: u64,
    /// Apply LSS once per iteration instead of repeating to a fixpoint.
    pub lss_single_pass: bool,
    /// Ablation toggles.
    pub cp_random_init: bool,
    pub use_lss: bool,
    pub use_degrade: bool,
    pub use_fss: bool,
}

impl DdalsParams {
    pub fn new(evaluator: EvaluatorKind, seed: u64) -> Self {
        Self {
            lambda: 1.0,
            max_iter: 30,
            sfe_variant: SfeVariant::Original,
            evaluator,
            seed,
            lss_single_pass: false,
            cp_random_init: false,
            use_lss: true,
            use_degrade: true,
            use_fss: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DdalsResult {
    pub solution: Solution,
    pub cost: f64,
    /// False only when no feasible solution was ever found; the returned
    /// solution is then the all-lightest fallback.
    pub feasible: bool,
    pub estimated_confidence: Option<f64>,
    /// Evaluator invocations performed (the ET metric).
    pub eval_count: u64,
    /// Cost of the CP start solution.
    pub cp_cost: f64,
    /// Best feasible cost after CP and after each iteration.
    pub best_cost_history: Vec<f64>,
    pub archives: SolutionArchive,
    /// V3's candidate list.
    pub shortlist: Option<Vec<ArchiveEntry>>,
    pub sfe_fell_back: bool,
}

/// Run DDALS on an instance. Deterministic given `params.seed`.
pub fn ddals(instance: &Instance, params: &DdalsParams) -> DdalsResult {
    assert!(params.max_iter >= 1, "max_iter must be at least 1");
    assert!(params.lambda >= 0.0, "lambda must be nonnegative");
    let table = build_surrogates(instance, params.lambda);
    let evaluator = Evaluator::new(instance, params.evaluator, derive_seed(params.seed, 0));
    let mut ctx = SearchCtx {
        instance,
        table: &table,
        evaluator: &evaluator,
        archives: SolutionArchive::new(),
        eval_count: 0,
        rng: chacha(derive_seed(params.seed, 1)),
        backfill_seed: derive_seed(params.seed, 2),
    };

    let (cp_sol, cp_feasible) = if params.cp_random_init {
        random_init(&mut ctx)
    } else {
        constructive_procedure(&mut ctx)
    };
    let cp_cost = ctx.cost(&cp_sol);
    if !cp_feasible {
        return DdalsResult {
            solution: cp_sol,
            cost: cp_cost,
            feasible: false,
            estimated_confidence: None,
            eval_count: ctx.eval_count,
            cp_cost,
            best_cost_history: Vec::new(),
            archives: ctx.archives,
            shortlist: None,
            sfe_fell_back: true,
        };
    }

    let mut current = cp_sol.clone();
    let mut best = cp_sol;
    let mut best_cost = cp_cost;
    let mut history = vec![best_cost];
    for _ in 0..params.max_iter {
        if params.use_lss {
            loop {
                match local_swap_search(&mut ctx, &current) {
                    LssOutcome::Improved(sol) => {
                        current = sol;
                        if params.lss_single_pass {
                            break;
                        }
                    }
                    LssOutcome::NoImprovement => break,
                }
            }
        }
        let cost = ctx.cost(&current);
        if cost < best_cost {
            best = current.clone();
            best_cost = cost;
        }
        history.push(best_cost);
        if params.use_degrade {
            let (perturbed, _) = degrade(&mut ctx, &current);
            current = perturbed;
        }
    }

    if params.use_fss {
        best = further_swap_search(&mut ctx, &best);
        best_cost = ctx.cost(&best);
    }

    let selection = sfe::sfe_select(
        &ctx.archives,
        &best,
        best_cost,
        params.sfe_variant,
        instance.confidence_level,
    );
    DdalsResult {
        solution: selection.solution,
        cost: selection.cost,
        feasible: true,
        estimated_confidence: selection.confidence,
        eval_count: ctx.eval_count,
        cp_cost,
        best_cost_history: history,
        archives: ctx.archives,
        shortlist: selection.shortlist,
        sfe_fell_back: selection.fell_back,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::DEFAULT_BRUTE_FORCE_LIMIT;
    use crate::instance::{load_instance, Class, Item};

    fn exact() -> EvaluatorKind {
        EvaluatorKind::ExactHeap
    }

    fn brute() -> EvaluatorKind {
        EvaluatorKind::BruteForce { limit: DEFAULT_BRUTE_FORCE_LIMIT }
    }

    /// Deterministic-weight instance where only picks [1,1] fit.
    fn unique_feasible() -> Instance {
        load_instance(
            br#"{"m": 2, "W": 3.5, "P0": 0.9, "L": 1,
                 "classes": [
                    [{"cost": 1.0, "samples": [5.0]}, {"cost": 4.0, "samples": [2.0]}],
                    [{"cost": 1.0, "samples": [4.0]}, {"cost": 3.0, "samples": [1.0]}]
                 ]}"#,
        )
        .unwrap()
    }

    #[test]
    fn unique_feasible_solution_is_found_for_any_seed() {
        let inst = unique_feasible();
        for seed in 0..6 {
            let result = ddals(&inst, &DdalsParams::new(exact(), seed));
            assert!(result.feasible);
            assert_eq!(result.solution, Solution::new(vec![1, 1]), "seed {seed}");
            assert_eq!(result.cost, 7.0);
        }
    }

    #[test]
    fn runs_are_deterministic_given_seed() {
        let inst = crate::generator::tests_support::small_lab_instance(11);
        let params = DdalsParams::new(exact(), 424_242);
        let a = ddals(&inst, &params);
        let b = ddals(&inst, &params);
        assert_eq!(a.solution, b.solution);
        assert_eq!(a.cost, b.cost);
        assert_eq!(a.eval_count, b.eval_count);
        assert_eq!(a.best_cost_history, b.best_cost_history);
    }

    #[test]
    fn best_cost_history_never_increases() {
        for seed in 0..4 {
            let inst = crate::generator::tests_support::small_lab_instance(seed);
            let result = ddals(&inst, &DdalsParams::new(exact(), seed));
            assert!(result.feasible);
            assert!(result.best_cost_history.windows(2).all(|w| w[1] <= w[0]), "seed {seed}");
        }
    }

    #[test]
    fn original_output_never_costs_more_than_cp() {
        for seed in 0..4 {
            let inst = crate::generator::tests_support::small_lab_instance(seed + 100);
            let result = ddals(&inst, &DdalsParams::new(brute(), seed));
            assert!(result.feasible);
            assert!(result.cost <= result.cp_cost + 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn infeasible_run_is_flagged_not_panicked() {
        // Capacity below every possible sum; constructed directly since the
        // loader rejects capacities outside the non-triviality band.
        let inst = Instance {
            num_classes: 1,
            classes: vec![Class {
                items: vec![Item::new(1.0, vec![5.0, 5.0]), Item::new(2.0, vec![4.0, 4.0])],
            }],
            capacity: 3.0,
            confidence_level: 0.9,
            sample_count: 2,
        };
        let result = ddals(&inst, &DdalsParams::new(exact(), 3));
        assert!(!result.feasible);
        assert!(result.archives.is_empty());
        assert_eq!(result.solution, Solution::new(vec![1]));
    }

    #[test]
    fn returned_feasible_solution_reevaluates_feasible() {
        for seed in 0..4 {
            let inst = crate::generator::tests_support::small_lab_instance(seed + 40);
            let params = DdalsParams {
                evaluator: EvaluatorKind::AcceleratedMc { draws: 20_000 },
                ..DdalsParams::new(exact(), seed)
            };
            let result = ddals(&inst, &params);
            assert!(result.feasible);
            let evaluator = Evaluator::new(&inst, params.evaluator, derive_seed(params.seed, 0));
            assert!(evaluator.evaluate(&result.solution).is_feasible(), "seed {seed}");
        }
    }
}
