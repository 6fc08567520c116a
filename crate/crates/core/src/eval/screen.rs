//! Fast screening of infeasible solutions.
//!
//! A screen tuple `(l_1,…,l_m)` with `Π(l_i+1) > (1-P0)·L^m` certifies
//! infeasibility whenever the picked items' descending samples at those
//! positions sum past the capacity: the sorted order guarantees at least
//! `Π(l_i+1)` combinations with sums at least as large, which exceeds the
//! violation budget. The comparison is strict (`> W`) because sums tying
//! exactly with the capacity satisfy the constraint and must never be
//! counted as violations. The tuples are built once per instance from the
//! prime factorization of the budget's ceiling, preferring balanced splits.

use super::violation_budget;
use crate::instance::{Instance, Solution};

/// Per-class sample positions, each in `[0, L)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexTuple {
    pub indices: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScreenResult {
    ScreenedInfeasible,
    Undecided,
}

/// Maximum number of screen tuples kept per instance.
pub const SCREEN_TUPLE_CAP: usize = 64;

fn product(values: &[u64]) -> f64 {
    values.iter().map(|&v| v as f64).product()
}

/// Build the screening list for an `(m, L, P0)` shape. Every returned tuple
/// satisfies `Π(indices[i]+1) > (1-P0)·L^m` and all indices are below `L`.
pub fn build_screen_tuples(m: usize, l: usize, p0: f64) -> Vec<IndexTuple> {
    let total = (l as f64).powi(m as i32);
    let k = violation_budget(p0, total);
    let mut tuples: Vec<IndexTuple> = Vec::new();

    // Balanced tuple: smallest c with c^m > K gives index c-1 everywhere.
    let mut c = (k.max(0.0).powf(1.0 / m as f64).ceil().max(1.0) as u64).min(l as u64);
    while c < l as u64 && product(&vec![c; m]) <= k {
        c += 1;
    }
    tuples.push(IndexTuple { indices: vec![c as u32 - 1; m] });

    // Distribute the factorization of ceil(K) across the m positions.
    let n = k.max(1.0).ceil();
    if n <= u64::MAX as f64 {
        let mut splits = Vec::new();
        enumerate_factor_splits(n as u64, m, l as u64, &mut Vec::new(), &mut splits, SCREEN_TUPLE_CAP);
        'split: for mut split in splits {
            // Products equal to ceil(K) may not strictly exceed K; bump the
            // smallest coordinate until they do.
            while product(&split) <= k {
                let Some((pos, _)) = split
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v < l as u64)
                    .min_by_key(|(_, &v)| v)
                else {
                    continue 'split;
                };
                split[pos] += 1;
            }
            let tuple = IndexTuple { indices: split.iter().map(|&v| v as u32 - 1).collect() };
            if !tuples.contains(&tuple) && tuples.len() < SCREEN_TUPLE_CAP {
                tuples.push(tuple);
            }
        }
    }
    tuples
}

/// Ordered splits of `n` into `m` factors, each within `[1, l]`, explored
/// nearest-balanced first up to `cap` results.
fn enumerate_factor_splits(
    n: u64,
    m: usize,
    l: u64,
    prefix: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    if m == 1 {
        if n <= l {
            let mut split = prefix.clone();
            split.push(n);
            out.push(split);
        }
        return;
    }
    let log_target = (n as f64).ln() / m as f64;
    let mut divisors: Vec<u64> = (1..=n.min(l)).filter(|d| n % d == 0).collect();
    divisors.sort_by(|a, b| {
        let da = ((*a as f64).ln() - log_target).abs();
        let db = ((*b as f64).ln() - log_target).abs();
        da.partial_cmp(&db).unwrap().then(a.cmp(b))
    });
    for d in divisors {
        if out.len() >= cap {
            return;
        }
        prefix.push(d);
        enumerate_factor_splits(n / d, m - 1, l, prefix, out, cap);
        prefix.pop();
    }
}

/// Check the picked items' descending samples against every screen tuple.
/// Returns `ScreenedInfeasible` iff some tuple's sum strictly exceeds the
/// capacity, which certifies more violating combinations than the budget
/// tolerates.
pub fn fast_screen(
    instance: &Instance,
    solution: &Solution,
    tuples: &[IndexTuple],
) -> ScreenResult {
    let w = instance.capacity;
    let mut screened = false;
    for tuple in tuples {
        let mut sum = 0.0;
        for (class, &pos) in tuple.indices.iter().enumerate() {
            sum += instance.picked_item(solution, class).samples_desc[pos as usize];
        }
        if sum > w {
            screened = true;
        }
    }
    if screened {
        ScreenResult::ScreenedInfeasible
    } else {
        ScreenResult::Undecided
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::load_instance;

    fn budget(m: usize, l: usize, p0: f64) -> f64 {
        violation_budget(p0, (l as f64).powi(m as i32))
    }

    #[test]
    fn includes_balanced_tuple() {
        // K = 10; the balanced tuple has (l_i+1) = (4,4) since 16 > 10.
        let tuples = build_screen_tuples(2, 10, 0.90);
        assert!(tuples.contains(&IndexTuple { indices: vec![3, 3] }), "{tuples:?}");
    }

    #[test]
    fn single_class_carries_whole_budget() {
        // P0 = 0.75 keeps K exactly representable: K = 4, so l_1+1 = 5.
        let tuples = build_screen_tuples(1, 16, 0.75);
        assert_eq!(tuples[0].indices.len(), 1);
        assert_eq!(tuples[0].indices[0], 4);
    }

    #[test]
    fn every_tuple_exceeds_the_budget() {
        for (m, l, p0) in [(1, 20, 0.8), (2, 10, 0.9), (3, 30, 0.99), (4, 30, 0.99), (5, 7, 0.95)] {
            let k = budget(m, l, p0);
            for t in build_screen_tuples(m, l, p0) {
                assert_eq!(t.indices.len(), m);
                let product: f64 = t.indices.iter().map(|&i| (i + 1) as f64).product();
                assert!(product > k, "m={m} l={l} p0={p0} tuple={t:?} product={product} k={k}");
                assert!(t.indices.iter().all(|&i| (i as usize) < l));
            }
        }
    }

    #[test]
    fn tuple_lists_stay_capped_even_for_large_budgets() {
        let tuples = build_screen_tuples(10, 500, 0.99);
        assert!(tuples.len() <= SCREEN_TUPLE_CAP);
        assert!(!tuples.is_empty());
        let k = budget(10, 500, 0.99);
        for t in &tuples {
            let product: f64 = t.indices.iter().map(|&i| (i + 1) as f64).product();
            assert!(product > k);
        }
    }

    #[test]
    fn screens_when_capacity_below_minima() {
        // Capacity strictly below the 3.0 sum of per-item minima: every
        // tuple's sum exceeds it. Constructed directly since the loader
        // rejects capacities outside the non-triviality band.
        let mut inst = load_instance(
            br#"{"m": 2, "W": 3.0, "P0": 0.9, "L": 2,
                 "classes": [[{"cost": 1.0, "samples": [4.0, 2.0]}],
                             [{"cost": 1.0, "samples": [3.0, 1.0]}]]}"#,
        )
        .unwrap();
        inst.capacity = 2.9;
        let tuples = build_screen_tuples(2, 2, 0.9);
        let sol = Solution::new(vec![0, 0]);
        assert_eq!(fast_screen(&inst, &sol, &tuples), ScreenResult::ScreenedInfeasible);
    }

    #[test]
    fn capacity_tie_with_screen_sum_does_not_screen() {
        // All combinations sum to exactly W, so the solution satisfies the
        // constraint with certainty and must stay undecided.
        let inst = load_instance(
            br#"{"m": 1, "W": 2.0, "P0": 0.9, "L": 1,
                 "classes": [[{"cost": 1.0, "samples": [2.0]}]]}"#,
        )
        .unwrap();
        let tuples = build_screen_tuples(1, 1, 0.9);
        assert_eq!(
            fast_screen(&inst, &Solution::new(vec![0]), &tuples),
            ScreenResult::Undecided
        );
    }

    #[test]
    fn undecided_when_capacity_above_maxima() {
        let mut inst = load_instance(
            br#"{"m": 2, "W": 7.0, "P0": 0.9, "L": 2,
                 "classes": [[{"cost": 1.0, "samples": [4.0, 2.0]}],
                             [{"cost": 1.0, "samples": [3.0, 1.0]}]]}"#,
        )
        .unwrap();
        inst.capacity = 7.5;
        let tuples = build_screen_tuples(2, 2, 0.9);
        let sol = Solution::new(vec![0, 0]);
        assert_eq!(fast_screen(&inst, &sol, &tuples), ScreenResult::Undecided);
    }
}
