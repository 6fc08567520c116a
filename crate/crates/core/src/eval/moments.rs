//! Per-item sample statistics used by the surrogate weights, the
//! concentration bounds and the Gaussian-quantile test.

use crate::instance::{Instance, Solution};

/// Summary statistics of one item's weight samples. Variance uses the
/// population convention (divisor `L`), which makes it the exact variance
/// of the empirical bootstrap distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSummary {
    pub mean: f64,
    pub variance: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
    /// Raw moments E[X^k] for k = 1..=order.
    pub raw_moments: Vec<f64>,
}

pub const DEFAULT_MOMENT_ORDER: usize = 4;

impl MomentSummary {
    pub fn from_samples(samples: &[f64], order: usize) -> Self {
        assert!(!samples.is_empty(), "moments need at least one sample");
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let variance = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / n;
        let std_dev = variance.sqrt();
        let min = samples.iter().copied().fold(f64::INFINITY, f64::min);
        let max = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let raw_moments = (1..=order)
            .map(|k| samples.iter().map(|s| s.powi(k as i32)).sum::<f64>() / n)
            .collect();
        Self { mean, variance, std_dev, min, max, raw_moments }
    }

    /// Width of the sample range `[min, max]`.
    pub fn range(&self) -> f64 {
        self.max - self.min
    }
}

/// Moments of every item of an instance, computed once.
#[derive(Debug, Clone)]
pub struct MomentTable {
    per_item: Vec<Vec<MomentSummary>>,
}

impl MomentTable {
    pub fn new(instance: &Instance) -> Self {
        let per_item = instance
            .classes
            .iter()
            .map(|c| {
                c.items
                    .iter()
                    .map(|i| MomentSummary::from_samples(&i.samples, DEFAULT_MOMENT_ORDER))
                    .collect()
            })
            .collect();
        Self { per_item }
    }

    pub fn item(&self, class: usize, item: usize) -> &MomentSummary {
        &self.per_item[class][item]
    }

    /// Moments of the items picked by a solution, in class order.
    pub fn picked<'a>(&'a self, solution: &Solution) -> Vec<&'a MomentSummary> {
        solution
            .picks
            .iter()
            .enumerate()
            .map(|(class, &pick)| &self.per_item[class][pick])
            .collect()
    }
}
