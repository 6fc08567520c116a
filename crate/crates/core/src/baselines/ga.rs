//! Genetic algorithm over pick vectors: elitist survival, uniform per-class
//! crossover, per-gene mutation to a random same-class item. Infeasible
//! offspring are never repaired; they rank below every feasible individual.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{rank_key, BaselineResult};
use crate::eval::{EvalOutcome, Evaluator, EvaluatorKind};
use crate::instance::{Instance, Solution};
use crate::rng::{chacha, derive_seed};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaParams {
    pub population: usize,
    /// Number of dominant individuals surviving each generation.
    pub elite: usize,
    pub crossover_p: f64,
    /// Per-gene mutation probability; `None` means `1/m`.
    pub mutation_p: Option<f64>,
    pub eval_budget: u64,
    pub seed: u64,
}

impl GaParams {
    pub fn new(eval_budget: u64, seed: u64) -> Self {
        Self { population: 10, elite: 6, crossover_p: 0.1, mutation_p: None, eval_budget, seed }
    }
}

#[derive(Clone)]
struct Individual {
    solution: Solution,
    cost: f64,
    outcome: EvalOutcome,
}

pub fn genetic_algorithm(
    instance: &Instance,
    params: &GaParams,
    evaluator: EvaluatorKind,
) -> BaselineResult {
    assert!(params.population > 0 && params.elite <= params.population);
    assert!((0.0..=1.0).contains(&params.crossover_p));
    assert!(params.eval_budget > 0, "eval budget must be positive");
    let sizes = instance.class_sizes();
    let mut rng = chacha(derive_seed(params.seed, 1));
    let initial: Vec<Solution> = (0..params.population)
        .map(|_| Solution::new(sizes.iter().map(|&n| rng.random_range(0..n)).collect()))
        .collect();
    run(instance, params, evaluator, initial, &mut rng)
}

/// GA loop starting from a given population; separated so tests can pin the
/// initial individuals.
pub(crate) fn run(
    instance: &Instance,
    params: &GaParams,
    evaluator: EvaluatorKind,
    initial: Vec<Solution>,
    rng: &mut ChaCha8Rng,
) -> BaselineResult {
    let eval = Evaluator::new(instance, evaluator, derive_seed(params.seed, 0));
    let mutation_p = params.mutation_p.unwrap_or(1.0 / instance.num_classes as f64);
    assert!((0.0..=1.0).contains(&mutation_p));
    let sizes = instance.class_sizes();
    let mut evals = 0u64;
    let mut best: Option<Individual> = None;
    let mut assess = |solution: Solution, evals: &mut u64, best: &mut Option<Individual>| {
        *evals += 1;
        let outcome = eval.evaluate(&solution);
        let cost = instance.total_cost(&solution).expect("valid solution");
        let ind = Individual { solution, cost, outcome };
        let better = match best {
            None => true,
            Some(b) => rank_key(&ind.outcome, ind.cost) < rank_key(&b.outcome, b.cost),
        };
        if better {
            *best = Some(ind.clone());
        }
        ind
    };

    let mut pop: Vec<Individual> =
        initial.into_iter().map(|s| assess(s, &mut evals, &mut best)).collect();
    while evals < params.eval_budget {
        pop.sort_by(|a, b| {
            rank_key(&a.outcome, a.cost)
                .partial_cmp(&rank_key(&b.outcome, b.cost))
                .expect("rank keys are finite")
                .then_with(|| a.solution.cmp(&b.solution))
        });
        pop.truncate(params.elite.max(1));
        let parents = pop.clone();
        while pop.len() < params.population {
            let pa = &parents[rng.random_range(0..parents.len())];
            let pb = &parents[rng.random_range(0..parents.len())];
            let mut child = pa.solution.clone();
            if rng.random::<f64>() < params.crossover_p {
                for class in 0..sizes.len() {
                    if rng.random::<f64>() < 0.5 {
                        child.picks[class] = pb.solution.picks[class];
                    }
                }
            }
            for (class, &n) in sizes.iter().enumerate() {
                if rng.random::<f64>() < mutation_p {
                    child.picks[class] = rng.random_range(0..n);
                }
            }
            pop.push(assess(child, &mut evals, &mut best));
        }
    }

    let best = best.expect("at least one individual evaluated");
    BaselineResult {
        cost: best.cost,
        feasible: best.outcome.is_feasible(),
        estimated_confidence: best.outcome.estimated_confidence,
        solution: best.solution,
        eval_count: evals,
    }
}
