//! The four search operators: constructive procedure (CP), local swap
//! search (LSS), degrade, and further swap search (FSS).

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::archive::SolutionArchive;
use super::surrogate::SurrogateTable;
use crate::eval::{monte_carlo_confidence, EvalOutcome, Evaluator};
use crate::instance::{Instance, Solution};
use crate::rng::solution_seed;

const BACKFILL_DRAWS: u64 = 100_000;

/// Shared run state: every evaluator call goes through [`SearchCtx::eval`],
/// which counts it and offers feasible results to both archives.
pub(crate) struct SearchCtx<'a> {
    pub instance: &'a Instance,
    pub table: &'a SurrogateTable,
    pub evaluator: &'a Evaluator<'a>,
    pub archives: SolutionArchive,
    pub eval_count: u64,
    pub rng: ChaCha8Rng,
    pub backfill_seed: u64,
}

impl SearchCtx<'_> {
    pub fn eval(&mut self, solution: &Solution) -> EvalOutcome {
        self.eval_count += 1;
        let outcome = self.evaluator.evaluate(solution);
        if outcome.is_feasible() {
            let cost = self.cost(solution);
            let confidence = match outcome.estimated_confidence {
                Some(c) => c,
                // Verdict-only outcome: backfill with a bounded estimate.
                None => monte_carlo_confidence(
                    self.instance,
                    solution,
                    BACKFILL_DRAWS,
                    solution_seed(self.backfill_seed, &solution.picks),
                )
                .expect("positive draw count")
                .estimated_confidence
                .expect("monte carlo always estimates"),
            };
            self.archives.offer(solution.clone(), cost, confidence);
        }
        outcome
    }

    pub fn cost(&self, solution: &Solution) -> f64 {
        self.instance.total_cost(solution).expect("valid solution")
    }
}

/// Greedy construction: start from the per-class maximum-utility picks and,
/// while infeasible, replace the pick in the class holding the largest
/// surrogate weight with its next-lighter item. An exhausted class falls
/// back to the all-lightest picks, which may still be infeasible (flagged).
pub(crate) fn constructive_procedure(ctx: &mut SearchCtx) -> (Solution, bool) {
    let mut sol = ctx.table.max_utility_picks();
    let mut outcome = ctx.eval(&sol);
    while !outcome.is_feasible() {
        let heaviest = (0..ctx.instance.num_classes)
            .max_by(|&a, &b| {
                ctx.table
                    .weight(a, sol.picks[a])
                    .total_cmp(&ctx.table.weight(b, sol.picks[b]))
                    .then(b.cmp(&a))
            })
            .expect("at least one class");
        match ctx.table.next_lighter(heaviest, sol.picks[heaviest]) {
            Some(lighter) => {
                sol.picks[heaviest] = lighter;
                outcome = ctx.eval(&sol);
            }
            None => {
                sol = ctx.table.lightest_picks();
                let outcome = ctx.eval(&sol);
                return (sol, outcome.is_feasible());
            }
        }
    }
    (sol, true)
}

/// Random construction used by the r-CP ablation variant: uniform picks,
/// then repeated feasibility-aware regeneration that re-draws each class
/// among items no heavier than its current pick.
pub(crate) fn random_init(ctx: &mut SearchCtx) -> (Solution, bool) {
    let sizes: Vec<usize> = ctx.instance.class_sizes();
    let mut sol = Solution::new(
        sizes.iter().map(|&n| ctx.rng.random_range(0..n)).collect(),
    );
    let mut outcome = ctx.eval(&sol);
    let mut attempts = sizes.iter().sum::<usize>();
    while !outcome.is_feasible() && attempts > 0 {
        for class in 0..sol.picks.len() {
            let lighter = ctx.table.lighter_items(class, sol.picks[class]);
            if !lighter.is_empty() {
                sol.picks[class] = lighter[ctx.rng.random_range(0..lighter.len())];
            }
        }
        outcome = ctx.eval(&sol);
        attempts -= 1;
    }
    if !outcome.is_feasible() {
        sol = ctx.table.lightest_picks();
        outcome = ctx.eval(&sol);
    }
    let feasible = outcome.is_feasible();
    (sol, feasible)
}

pub(crate) enum LssOutcome {
    Improved(Solution),
    NoImprovement,
}

/// Try every same-class item cheaper than the current pick; among the swaps
/// whose result is feasible, apply the one with the lowest total cost.
pub(crate) fn local_swap_search(ctx: &mut SearchCtx, current: &Solution) -> LssOutcome {
    let mut best: Option<(f64, Solution)> = None;
    for class in 0..ctx.instance.num_classes {
        let picked = current.picks[class];
        let picked_cost = ctx.instance.classes[class].items[picked].cost;
        for item in 0..ctx.instance.classes[class].len() {
            if item == picked || ctx.instance.classes[class].items[item].cost >= picked_cost {
                continue;
            }
            let mut candidate = current.clone();
            candidate.picks[class] = item;
            if ctx.eval(&candidate).is_feasible() {
                let cost = ctx.cost(&candidate);
                if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                    best = Some((cost, candidate));
                }
            }
        }
    }
    match best {
        Some((_, sol)) => LssOutcome::Improved(sol),
        None => LssOutcome::NoImprovement,
    }
}

/// Random perturbation: replace a random item in a random class; on an
/// infeasible result retry with random strictly-lighter items, moving on to
/// other classes until some perturbation is feasible. Returns the input
/// unchanged (flag false) only when every class exhausts.
pub(crate) fn degrade(ctx: &mut SearchCtx, current: &Solution) -> (Solution, bool) {
    let mut class_order: Vec<usize> = (0..ctx.instance.num_classes).collect();
    class_order.shuffle(&mut ctx.rng);
    for class in class_order {
        let n = ctx.instance.classes[class].len();
        if n <= 1 {
            continue;
        }
        let original = current.picks[class];
        let others: Vec<usize> = (0..n).filter(|&j| j != original).collect();
        let first = others[ctx.rng.random_range(0..others.len())];
        let mut candidate = current.clone();
        candidate.picks[class] = first;
        if ctx.eval(&candidate).is_feasible() {
            return (candidate, true);
        }
        let mut lighter: Vec<usize> = ctx
            .table
            .lighter_items(class, original)
            .into_iter()
            .filter(|&j| j != first)
            .collect();
        lighter.shuffle(&mut ctx.rng);
        for item in lighter {
            candidate.picks[class] = item;
            if ctx.eval(&candidate).is_feasible() {
                return (candidate, true);
            }
        }
    }
    (current.clone(), false)
}

/// Deep search over all class pairs and item pairs. Any feasible pair swap
/// with strictly smaller cost replaces the incumbent and restarts the scan,
/// so the result is locally optimal for the feasible 2-class neighborhood.
///
/// Cost comparisons are free; the evaluator runs only on strictly cheaper
/// candidates.
pub(crate) fn further_swap_search(ctx: &mut SearchCtx, best: &Solution) -> Solution {
    let m = ctx.instance.num_classes;
    let mut incumbent = best.clone();
    let mut incumbent_cost = ctx.cost(&incumbent);
    'rescan: loop {
        for c0 in 0..m {
            for c1 in c0 + 1..m {
                for j0 in 0..ctx.instance.classes[c0].len() {
                    for j1 in 0..ctx.instance.classes[c1].len() {
                        if j0 == incumbent.picks[c0] && j1 == incumbent.picks[c1] {
                            continue;
                        }
                        let mut candidate = incumbent.clone();
                        candidate.picks[c0] = j0;
                        candidate.picks[c1] = j1;
                        let cost = ctx.cost(&candidate);
                        if cost < incumbent_cost && ctx.eval(&candidate).is_feasible() {
                            incumbent = candidate;
                            incumbent_cost = cost;
                            continue 'rescan;
                        }
                    }
                }
            }
        }
        return incumbent;
    }
}
