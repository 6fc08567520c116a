//! Shared fixtures for the benchmark targets.

use ddccmckp::generator::{generate, BenchmarkFamily, BenchmarkSpec};
use ddccmckp::instance::{Instance, Solution};

pub fn lab_instance(m: usize, n: usize, l: usize, t_max: f64, seed: u64) -> Instance {
    let spec = BenchmarkSpec {
        family: BenchmarkFamily::Lab,
        name: "bench".into(),
        m,
        n,
        l,
        t_max,
        p0: 0.99,
    };
    generate(&spec, seed).expect("bench instance generates").instance
}

pub fn mid_band_solution(instance: &Instance) -> Solution {
    // Deterministic middle-of-the-road picks.
    Solution::new(instance.classes.iter().map(|c| c.len() / 2).collect())
}
