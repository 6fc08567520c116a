//! Solution feasibility enhancement: post-hoc selection among the archived
//! solutions, trading cost for confidence.

use super::archive::{ArchiveEntry, SolutionArchive, ARCHIVE_CAPACITY};
use crate::instance::Solution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SfeVariant {
    /// Output the FSS optimum unchanged.
    #[default]
    Original,
    /// Cheapest archived solution with confidence at least `1 - (1-P0)/2`.
    V1,
    /// Rank-sum scoring across both lists.
    V2,
    /// Shortlist the ten cheapest; unattended runs auto-pick the most
    /// confident of them.
    V3,
}

#[derive(Debug, Clone)]
pub struct SfeSelection {
    pub solution: Solution,
    pub cost: f64,
    pub confidence: Option<f64>,
    /// Set when the variant could not apply and fell back to the FSS output.
    pub fell_back: bool,
    /// V3's candidate list, in cost order.
    pub shortlist: Option<Vec<ArchiveEntry>>,
}

/// Confidence threshold V1 requires, generalizing the worked 0.995 example
/// at P0 = 0.99.
pub fn v1_threshold(p0: f64) -> f64 {
    1.0 - (1.0 - p0) / 2.0
}

pub fn sfe_select(
    archives: &SolutionArchive,
    best: &Solution,
    best_cost: f64,
    variant: SfeVariant,
    p0: f64,
) -> SfeSelection {
    let fallback = |fell_back: bool| SfeSelection {
        solution: best.clone(),
        cost: best_cost,
        confidence: archives.lookup(best).map(|e| e.confidence),
        fell_back,
        shortlist: None,
    };
    if archives.is_empty() && variant != SfeVariant::Original {
        return fallback(true);
    }
    match variant {
        SfeVariant::Original => fallback(false),
        SfeVariant::V1 => {
            let threshold = v1_threshold(p0);
            let pick = archives
                .union()
                .into_iter()
                .filter(|e| e.confidence >= threshold)
                .min_by(|a, b| a.cost.total_cmp(&b.cost).then_with(|| a.solution.cmp(&b.solution)));
            match pick {
                Some(e) => SfeSelection {
                    solution: e.solution.clone(),
                    cost: e.cost,
                    confidence: Some(e.confidence),
                    fell_back: false,
                    shortlist: None,
                },
                None => fallback(true),
            }
        }
        SfeVariant::V2 => {
            let scored = archives.union().into_iter().max_by(|a, b| {
                let sa = rank_sum_score(archives, &a.solution);
                let sb = rank_sum_score(archives, &b.solution);
                sa.cmp(&sb)
                    .then(b.cost.total_cmp(&a.cost))
                    .then_with(|| b.solution.cmp(&a.solution))
            });
            match scored {
                Some(e) => SfeSelection {
                    solution: e.solution.clone(),
                    cost: e.cost,
                    confidence: Some(e.confidence),
                    fell_back: false,
                    shortlist: None,
                },
                None => fallback(true),
            }
        }
        SfeVariant::V3 => {
            let shortlist: Vec<ArchiveEntry> =
                archives.cost_list().iter().take(10).cloned().collect();
            if shortlist.is_empty() {
                return fallback(true);
            }
            let chosen = shortlist
                .iter()
                .max_by(|a, b| {
                    a.confidence
                        .total_cmp(&b.confidence)
                        .then(b.cost.total_cmp(&a.cost))
                        .then_with(|| b.solution.cmp(&a.solution))
                })
                .expect("non-empty shortlist")
                .clone();
            SfeSelection {
                solution: chosen.solution,
                cost: chosen.cost,
                confidence: Some(chosen.confidence),
                fell_back: false,
                shortlist: Some(shortlist),
            }
        }
    }
}

/// Score = (31 - rank in cost list) + (31 - rank in MC list); absent from a
/// list contributes zero.
pub fn rank_sum_score(archives: &SolutionArchive, solution: &Solution) -> usize {
    let base = ARCHIVE_CAPACITY + 1;
    archives.rank_in_cost_list(solution).map_or(0, |r| base - r)
        + archives.rank_in_mc_list(solution).map_or(0, |r| base - r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(picks: &[usize]) -> Solution {
        Solution::new(picks.to_vec())
    }

    #[test]
    fn v1_threshold_matches_worked_example() {
        assert_eq!(v1_threshold(0.99), 0.995);
        assert_eq!(v1_threshold(0.9), 0.95);
    }

    #[test]
    fn v1_picks_cheapest_confident_solution() {
        let mut a = SolutionArchive::new();
        a.offer(sol(&[0]), 1.0, 0.990); // cheap but below threshold
        a.offer(sol(&[1]), 3.0, 0.997);
        a.offer(sol(&[2]), 2.0, 0.996);
        let out = sfe_select(&a, &sol(&[0]), 1.0, SfeVariant::V1, 0.99);
        assert_eq!(out.solution, sol(&[2]));
        assert!(!out.fell_back);
    }

    #[test]
    fn v1_falls_back_when_nothing_qualifies() {
        let mut a = SolutionArchive::new();
        a.offer(sol(&[0]), 1.0, 0.99);
        let out = sfe_select(&a, &sol(&[0]), 1.0, SfeVariant::V1, 0.99);
        assert_eq!(out.solution, sol(&[0]));
        assert!(out.fell_back);
    }

    #[test]
    fn double_top_rank_scores_sixty() {
        let mut a = SolutionArchive::new();
        a.offer(sol(&[0]), 1.0, 0.999);
        a.offer(sol(&[1]), 2.0, 0.990);
        assert_eq!(rank_sum_score(&a, &sol(&[0])), 60);
        let out = sfe_select(&a, &sol(&[1]), 2.0, SfeVariant::V2, 0.99);
        assert_eq!(out.solution, sol(&[0]));
    }

    #[test]
    fn singleton_archives_return_best_for_every_variant() {
        let mut a = SolutionArchive::new();
        a.offer(sol(&[4]), 7.0, 0.999);
        for variant in [SfeVariant::Original, SfeVariant::V1, SfeVariant::V2, SfeVariant::V3] {
            let out = sfe_select(&a, &sol(&[4]), 7.0, variant, 0.99);
            assert_eq!(out.solution, sol(&[4]), "{variant:?}");
        }
    }

    #[test]
    fn v3_shortlists_cheapest_and_picks_most_confident() {
        let mut a = SolutionArchive::new();
        for i in 0..15usize {
            a.offer(sol(&[i]), i as f64, 0.99 + 0.0001 * (i % 3) as f64);
        }
        let out = sfe_select(&a, &sol(&[0]), 0.0, SfeVariant::V3, 0.99);
        let shortlist = out.shortlist.as_ref().unwrap();
        assert_eq!(shortlist.len(), 10);
        assert!(shortlist.windows(2).all(|w| w[0].cost <= w[1].cost));
        // Highest confidence within the ten cheapest, ties to lower cost.
        assert_eq!(out.solution, sol(&[2]));
    }

    #[test]
    fn empty_archives_fall_back_flagged() {
        let a = SolutionArchive::new();
        let out = sfe_select(&a, &sol(&[1]), 5.0, SfeVariant::V2, 0.99);
        assert_eq!(out.solution, sol(&[1]));
        assert!(out.fell_back);
    }
}
