//! Feasible-solution archives maintained during a search run.
//!
//! Two bounded lists back the solution-feasibility-enhancement step: the
//! Cost List keeps the lowest-cost feasible solutions seen, the MC List the
//! highest-confidence ones. Both are capped at 30 distinct solutions.

use crate::instance::Solution;

pub const ARCHIVE_CAPACITY: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub solution: Solution,
    pub cost: f64,
    pub confidence: f64,
}

#[derive(Debug, Clone, Default)]
pub struct SolutionArchive {
    cost_list: Vec<ArchiveEntry>,
    mc_list: Vec<ArchiveEntry>,
}

impl SolutionArchive {
    pub fn new() -> Self {
        Self::default()
    }

    /// Offer one feasible evaluation result to both lists.
    pub fn offer(&mut self, solution: Solution, cost: f64, confidence: f64) {
        let entry = ArchiveEntry { solution, cost, confidence };
        insert_bounded(&mut self.cost_list, entry.clone(), |a, b| {
            a.cost.total_cmp(&b.cost).then_with(|| a.solution.cmp(&b.solution))
        });
        insert_bounded(&mut self.mc_list, entry, |a, b| {
            b.confidence
                .total_cmp(&a.confidence)
                .then(a.cost.total_cmp(&b.cost))
                .then_with(|| a.solution.cmp(&b.solution))
        });
    }

    pub fn cost_list(&self) -> &[ArchiveEntry] {
        &self.cost_list
    }

    pub fn mc_list(&self) -> &[ArchiveEntry] {
        &self.mc_list
    }

    pub fn is_empty(&self) -> bool {
        self.cost_list.is_empty() && self.mc_list.is_empty()
    }

    /// Distinct solutions present in either list, cost-list entries first.
    pub fn union(&self) -> Vec<&ArchiveEntry> {
        let mut seen: Vec<&Solution> = Vec::new();
        let mut out = Vec::new();
        for e in self.cost_list.iter().chain(self.mc_list.iter()) {
            if !seen.contains(&&e.solution) {
                seen.push(&e.solution);
                out.push(e);
            }
        }
        out
    }

    /// 1-based rank of a solution in a list, `None` if absent.
    pub fn rank_in_cost_list(&self, solution: &Solution) -> Option<usize> {
        self.cost_list.iter().position(|e| &e.solution == solution).map(|p| p + 1)
    }

    pub fn rank_in_mc_list(&self, solution: &Solution) -> Option<usize> {
        self.mc_list.iter().position(|e| &e.solution == solution).map(|p| p + 1)
    }

    pub fn lookup(&self, solution: &Solution) -> Option<&ArchiveEntry> {
        self.cost_list
            .iter()
            .chain(self.mc_list.iter())
            .find(|e| &e.solution == solution)
    }
}

fn insert_bounded(
    list: &mut Vec<ArchiveEntry>,
    entry: ArchiveEntry,
    cmp: impl Fn(&ArchiveEntry, &ArchiveEntry) -> std::cmp::Ordering,
) {
    if list.iter().any(|e| e.solution == entry.solution) {
        return;
    }
    let pos = list.partition_point(|e| cmp(e, &entry) != std::cmp::Ordering::Greater);
    list.insert(pos, entry);
    list.truncate(ARCHIVE_CAPACITY);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sol(picks: &[usize]) -> Solution {
        Solution::new(picks.to_vec())
    }

    #[test]
    fn keeps_lists_sorted_and_bounded() {
        let mut a = SolutionArchive::new();
        for i in 0..50usize {
            a.offer(sol(&[i]), 100.0 - i as f64, i as f64 / 100.0);
        }
        assert_eq!(a.cost_list().len(), ARCHIVE_CAPACITY);
        assert_eq!(a.mc_list().len(), ARCHIVE_CAPACITY);
        assert!(a.cost_list().windows(2).all(|w| w[0].cost <= w[1].cost));
        assert!(a.mc_list().windows(2).all(|w| w[0].confidence >= w[1].confidence));
        // Cheapest offer survives, most confident offer survives.
        assert_eq!(a.cost_list()[0].cost, 51.0);
        assert_eq!(a.mc_list()[0].confidence, 0.49);
    }

    #[test]
    fn deduplicates_by_solution() {
        let mut a = SolutionArchive::new();
        a.offer(sol(&[1, 2]), 5.0, 0.99);
        a.offer(sol(&[1, 2]), 5.0, 0.99);
        assert_eq!(a.cost_list().len(), 1);
        assert_eq!(a.mc_list().len(), 1);
        assert_eq!(a.union().len(), 1);
    }

    #[test]
    fn ranks_are_one_based() {
        let mut a = SolutionArchive::new();
        a.offer(sol(&[0]), 2.0, 0.90);
        a.offer(sol(&[1]), 1.0, 0.95);
        assert_eq!(a.rank_in_cost_list(&sol(&[1])), Some(1));
        assert_eq!(a.rank_in_cost_list(&sol(&[0])), Some(2));
        assert_eq!(a.rank_in_mc_list(&sol(&[1])), Some(1));
        assert_eq!(a.rank_in_cost_list(&sol(&[9])), None);
    }
}
