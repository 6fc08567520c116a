//! Monte Carlo confidence estimation by empirical bootstrap: each draw sums
//! one uniformly resampled value from every picked item's samples.
//!
//! Draws are counted in fixed-size blocks, each with its own seed derived
//! from `(seed, block index)`, so the estimate is bit-identical whether the
//! blocks run sequentially or in parallel.

use rand::Rng;
use rayon::prelude::*;

use super::{fast_screen, EvalError, EvalMethod, EvalOutcome, EvalWork, IndexTuple, ScreenResult, Verdict};
use super::screen::build_screen_tuples;
use crate::instance::{Instance, Solution};
use crate::rng::{chacha, derive_seed};

const BLOCK: u64 = 1 << 16;

/// Estimated confidence from `draws` bootstrap resamples; the verdict is
/// `estimate >= P0`. Deterministic given the seed.
pub fn monte_carlo_confidence(
    instance: &Instance,
    solution: &Solution,
    draws: u64,
    seed: u64,
) -> Result<EvalOutcome, EvalError> {
    if draws == 0 {
        return Err(EvalError::ZeroDraws);
    }
    instance.validate_solution(solution).expect("valid solution");
    let rows: Vec<&[f64]> = (0..instance.num_classes)
        .map(|c| instance.picked_item(solution, c).samples.as_slice())
        .collect();
    let l = instance.sample_count;
    let w = instance.capacity;
    let blocks = draws.div_ceil(BLOCK);
    let hits: u64 = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let n = BLOCK.min(draws - b * BLOCK);
            let mut rng = chacha(derive_seed(seed, b));
            let mut hits = 0u64;
            for _ in 0..n {
                let mut sum = 0.0;
                for row in &rows {
                    sum += row[rng.random_range(0..l)];
                }
                if sum <= w {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let estimate = hits as f64 / draws as f64;
    Ok(EvalOutcome {
        verdict: if estimate >= instance.confidence_level {
            Verdict::Feasible
        } else {
            Verdict::Infeasible
        },
        estimated_confidence: Some(estimate),
        method: EvalMethod::MonteCarlo,
        work: EvalWork { heap_pops: 0, draws, screen_checks: 0 },
    })
}

/// Monte Carlo preceded by fast screening: screened solutions are rejected
/// with zero simulation draws, anything else delegates to
/// [`monte_carlo_confidence`] with the same seed.
pub fn accelerated_mc(
    instance: &Instance,
    solution: &Solution,
    draws: u64,
    seed: u64,
) -> Result<EvalOutcome, EvalError> {
    let tuples = build_screen_tuples(
        instance.num_classes,
        instance.sample_count,
        instance.confidence_level,
    );
    accelerated_mc_with_tuples(instance, solution, draws, seed, &tuples)
}

/// [`accelerated_mc`] with a prebuilt screening list, for callers that
/// evaluate many solutions of one instance.
pub fn accelerated_mc_with_tuples(
    instance: &Instance,
    solution: &Solution,
    draws: u64,
    seed: u64,
    tuples: &[IndexTuple],
) -> Result<EvalOutcome, EvalError> {
    if draws == 0 {
        return Err(EvalError::ZeroDraws);
    }
    let checks = tuples.len() as u64;
    if fast_screen(instance, solution, tuples) == ScreenResult::ScreenedInfeasible {
        return Ok(EvalOutcome {
            verdict: Verdict::Infeasible,
            estimated_confidence: None,
            method: EvalMethod::AcceleratedMc,
            work: EvalWork { heap_pops: 0, draws: 0, screen_checks: checks },
        });
    }
    let mut outcome = monte_carlo_confidence(instance, solution, draws, seed)?;
    outcome.method = EvalMethod::AcceleratedMc;
    outcome.work.screen_checks = checks;
    Ok(outcome)
}
