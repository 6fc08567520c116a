//! Brute-force enumeration over all `L^m` sample combinations. This is the
//! reference oracle the other evaluators are checked against; it refuses
//! instances beyond an explicit guard limit.

use super::{feasible_by_violations, EvalError, EvalMethod, EvalOutcome, EvalWork, Verdict};
use crate::instance::{Instance, Solution};

pub const DEFAULT_BRUTE_FORCE_LIMIT: u64 = 10_000_000;

/// Exact fraction of sample combinations whose total is `<= W`.
pub fn brute_force_confidence(instance: &Instance, solution: &Solution) -> Result<f64, EvalError> {
    brute_force_confidence_with_limit(instance, solution, DEFAULT_BRUTE_FORCE_LIMIT)
}

pub fn brute_force_confidence_with_limit(
    instance: &Instance,
    solution: &Solution,
    limit: u64,
) -> Result<f64, EvalError> {
    let (satisfied, total) = count_satisfied(instance, solution, limit)?;
    Ok(satisfied as f64 / total as f64)
}

/// Full outcome with the verdict derived from the strict violation rule,
/// so it agrees with [`super::exact_feasibility`] bit for bit.
pub fn brute_force_outcome(
    instance: &Instance,
    solution: &Solution,
    limit: u64,
) -> Result<EvalOutcome, EvalError> {
    let (satisfied, total) = count_satisfied(instance, solution, limit)?;
    let violations = total - satisfied;
    let feasible = feasible_by_violations(
        violations as f64,
        instance.confidence_level,
        total as f64,
    );
    Ok(EvalOutcome {
        verdict: if feasible { Verdict::Feasible } else { Verdict::Infeasible },
        estimated_confidence: Some(satisfied as f64 / total as f64),
        method: EvalMethod::BruteForce,
        work: EvalWork { heap_pops: 0, draws: 0, screen_checks: 0 },
    })
}

fn count_satisfied(
    instance: &Instance,
    solution: &Solution,
    limit: u64,
) -> Result<(u64, u64), EvalError> {
    instance.validate_solution(solution).expect("valid solution");
    let m = instance.num_classes;
    let l = instance.sample_count;
    let total = (l as u128).checked_pow(m as u32).filter(|t| *t <= limit as u128);
    let Some(total) = total else {
        return Err(EvalError::GuardExceeded {
            combinations: instance.combination_count(),
            limit,
        });
    };
    let total = total as u64;
    // Sums use the descending-sorted samples in class order, the same
    // expression the heap evaluator computes, so the two routes produce
    // bit-identical values.
    let rows: Vec<&[f64]> = (0..m)
        .map(|c| instance.picked_item(solution, c).samples_desc.as_slice())
        .collect();
    let w = instance.capacity;
    let mut idx = vec![0usize; m];
    let mut satisfied = 0u64;
    loop {
        let mut sum = 0.0;
        for (c, row) in rows.iter().enumerate() {
            sum += row[idx[c]];
        }
        if sum <= w {
            satisfied += 1;
        }
        // Odometer increment.
        let mut c = 0;
        loop {
            if c == m {
                return Ok((satisfied, total));
            }
            idx[c] += 1;
            if idx[c] < l {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}
