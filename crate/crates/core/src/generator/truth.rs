//! The generator-side truth model: the real item distributions, used only
//! to compute real confidence levels. Never embedded in instance files.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::dist::DistributionSpec;
use super::BenchmarkFamily;
use crate::instance::Solution;
use crate::rng::{chacha, derive_seed};

/// Renormalized attempt probabilities (the paper's 0.9/0.09/0.009/0.001
/// over at most four transmissions).
pub const ATTEMPT_WEIGHTS: [f64; 4] = [0.9, 0.09, 0.009, 0.001];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthItem {
    pub dist: DistributionSpec,
    /// APP only: multiplier squashing the base draw into (0, 10], applied
    /// before the retransmission shift.
    pub scale: Option<f64>,
}

impl TruthItem {
    /// One true delay draw: scaled base delay plus 10 ms per extra attempt.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let raw = self.dist.sample(rng);
        match self.scale {
            None => raw,
            Some(scale) => {
                let base = (raw * scale).min(10.0);
                base + 10.0 * (draw_attempt(rng) - 1) as f64
            }
        }
    }
}

/// Attempt number in 1..=4 with the renormalized weights.
pub fn draw_attempt(rng: &mut ChaCha8Rng) -> u32 {
    let total: f64 = ATTEMPT_WEIGHTS.iter().sum();
    let u: f64 = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, w) in ATTEMPT_WEIGHTS.iter().enumerate() {
        acc += w;
        if u < acc {
            return i as u32 + 1;
        }
    }
    ATTEMPT_WEIGHTS.len() as u32
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruthModel {
    pub family: BenchmarkFamily,
    pub capacity: f64,
    pub confidence_level: f64,
    pub items: Vec<Vec<TruthItem>>,
    pub master_seed: u64,
}

const BLOCK: u64 = 1 << 16;

impl TruthModel {
    /// One i.i.d. draw from item `(class, item)`'s true distribution.
    pub fn sample_true_delay(&self, class: usize, item: usize, rng: &mut ChaCha8Rng) -> f64 {
        self.items[class][item].sample(rng)
    }

    /// Real confidence level: the fraction of `draws` independent totals of
    /// true delays that fit within the capacity. Deterministic given the
    /// seed regardless of thread schedule.
    pub fn real_confidence(&self, solution: &Solution, draws: u64, seed: u64) -> f64 {
        assert!(draws > 0, "draws must be positive");
        let picked: Vec<&TruthItem> = solution
            .picks
            .iter()
            .enumerate()
            .map(|(class, &pick)| &self.items[class][pick])
            .collect();
        let w = self.capacity;
        let blocks = draws.div_ceil(BLOCK);
        let hits: u64 = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let n = BLOCK.min(draws - b * BLOCK);
                let mut rng = chacha(derive_seed(seed, b));
                let mut hits = 0u64;
                for _ in 0..n {
                    let total: f64 = picked.iter().map(|item| item.sample(&mut rng)).sum();
                    if total <= w {
                        hits += 1;
                    }
                }
                hits
            })
            .sum();
        hits as f64 / draws as f64
    }

    pub fn to_json(&self) -> Vec<u8> {
        serde_json::to_vec_pretty(self).expect("truth model serializes")
    }

    pub fn from_json(bytes: &[u8]) -> Result<Self, serde_json::Error> {
        serde_json::from_slice(bytes)
    }
}
