//! Item weight distributions with parameters solved to hit target moments.
//!
//! Five families: uniform, truncated normal (at zero), fatigue-life
//! (Birnbaum-Saunders), bimodal (equal mixture of two truncated normals
//! with means symmetric about the target), and gamma. Where the family
//! permits, parameters match the target mean and variance to 1e-6.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Uniform,
    TruncatedNormal,
    FatigueLife,
    Bimodal,
    Gamma,
}

pub const FAMILIES: [Family; 5] = [
    Family::Uniform,
    Family::TruncatedNormal,
    Family::FatigueLife,
    Family::Bimodal,
    Family::Gamma,
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FamilyParams {
    Uniform { lo: f64, hi: f64 },
    /// Pre-truncation location and scale; support is `[0, inf)`.
    TruncatedNormal { mu0: f64, sigma0: f64 },
    FatigueLife { alpha: f64, beta: f64 },
    /// Two truncated-normal components, each solved exactly, mixed 50/50.
    Bimodal { lower: (f64, f64), upper: (f64, f64) },
    Gamma { shape: f64, scale: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    pub family: Family,
    pub target_mean: f64,
    pub target_variance: f64,
    pub params: FamilyParams,
}

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("targets must be positive, got mean {mean}, variance {variance}")]
    NonPositiveTargets { mean: f64, variance: f64 },
    #[error("{family:?} cannot realize mean {mean} with variance {variance} on nonnegative support")]
    Unachievable { family: Family, mean: f64, variance: f64 },
}

const MOMENT_TOLERANCE: f64 = 1e-6;

impl DistributionSpec {
    pub fn solve(family: Family, mean: f64, variance: f64) -> Result<Self, SolveError> {
        if !(mean > 0.0 && variance > 0.0) {
            return Err(SolveError::NonPositiveTargets { mean, variance });
        }
        let unachievable = || SolveError::Unachievable { family, mean, variance };
        let params = match family {
            Family::Uniform => {
                let half = (3.0 * variance).sqrt();
                if mean - half < 0.0 {
                    return Err(unachievable());
                }
                FamilyParams::Uniform { lo: mean - half, hi: mean + half }
            }
            Family::TruncatedNormal => {
                let (mu0, sigma0) = solve_truncated_normal(mean, variance).ok_or_else(unachievable)?;
                FamilyParams::TruncatedNormal { mu0, sigma0 }
            }
            Family::FatigueLife => {
                let r = variance / (mean * mean);
                if r >= 5.0 {
                    return Err(unachievable());
                }
                let t = 2.0 * (r - 1.0 + (3.0 * r + 1.0).sqrt()) / (5.0 - r);
                if t <= 0.0 {
                    return Err(unachievable());
                }
                FamilyParams::FatigueLife { alpha: t.sqrt(), beta: mean / (1.0 + t / 2.0) }
            }
            Family::Bimodal => {
                let d = (variance / 2.0).sqrt();
                let s2 = variance / 2.0;
                if mean - d <= 0.0 {
                    return Err(unachievable());
                }
                let lower = solve_truncated_normal(mean - d, s2).ok_or_else(unachievable)?;
                let upper = solve_truncated_normal(mean + d, s2).ok_or_else(unachievable)?;
                FamilyParams::Bimodal { lower, upper }
            }
            Family::Gamma => FamilyParams::Gamma {
                shape: mean * mean / variance,
                scale: variance / mean,
            },
        };
        let spec = Self { family, target_mean: mean, target_variance: variance, params };
        if (spec.analytic_mean() - mean).abs() > MOMENT_TOLERANCE
            || (spec.analytic_variance() - variance).abs() > MOMENT_TOLERANCE
        {
            return Err(unachievable());
        }
        Ok(spec)
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match &self.params {
            FamilyParams::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            FamilyParams::TruncatedNormal { mu0, sigma0 } => sample_truncated_normal(*mu0, *sigma0, rng),
            FamilyParams::FatigueLife { alpha, beta } => {
                let z: f64 = StandardNormal.sample(rng);
                let t = alpha * z / 2.0;
                beta * (t + (t * t + 1.0).sqrt()).powi(2)
            }
            FamilyParams::Bimodal { lower, upper } => {
                let (mu0, sigma0) = if rng.random::<f64>() < 0.5 { *lower } else { *upper };
                sample_truncated_normal(mu0, sigma0, rng)
            }
            FamilyParams::Gamma { shape, scale } => {
                Gamma::new(*shape, *scale).expect("valid gamma parameters").sample(rng)
            }
        }
    }

    /// Exact mean of the realized distribution, from its parameters.
    pub fn analytic_mean(&self) -> f64 {
        match &self.params {
            FamilyParams::Uniform { lo, hi } => (lo + hi) / 2.0,
            FamilyParams::TruncatedNormal { mu0, sigma0 } => truncated_normal_moments(*mu0, *sigma0).0,
            FamilyParams::FatigueLife { alpha, beta } => beta * (1.0 + alpha * alpha / 2.0),
            FamilyParams::Bimodal { lower, upper } => {
                let lo = truncated_normal_moments(lower.0, lower.1).0;
                let hi = truncated_normal_moments(upper.0, upper.1).0;
                (lo + hi) / 2.0
            }
            FamilyParams::Gamma { shape, scale } => shape * scale,
        }
    }

    /// Exact variance of the realized distribution.
    pub fn analytic_variance(&self) -> f64 {
        match &self.params {
            FamilyParams::Uniform { lo, hi } => (hi - lo) * (hi - lo) / 12.0,
            FamilyParams::TruncatedNormal { mu0, sigma0 } => truncated_normal_moments(*mu0, *sigma0).1,
            FamilyParams::FatigueLife { alpha, beta } => {
                let a2 = alpha * alpha;
                a2 * beta * beta * (1.0 + 5.0 * a2 / 4.0)
            }
            FamilyParams::Bimodal { lower, upper } => {
                let (m_lo, v_lo) = truncated_normal_moments(lower.0, lower.1);
                let (m_hi, v_hi) = truncated_normal_moments(upper.0, upper.1);
                (v_lo + v_hi) / 2.0 + (m_hi - m_lo) * (m_hi - m_lo) / 4.0
            }
            FamilyParams::Gamma { shape, scale } => shape * scale * scale,
        }
    }
}

fn std_normal_pdf(x: f64) -> f64 {
    (-(x * x) / 2.0).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Upper tail `P(Z > a)` of the standard normal.
fn std_normal_tail(a: f64) -> f64 {
    0.5 * erfc(a / std::f64::consts::SQRT_2)
}

/// Mean and variance of `N(mu0, sigma0)` truncated to `[0, inf)`.
fn truncated_normal_moments(mu0: f64, sigma0: f64) -> (f64, f64) {
    let a = -mu0 / sigma0;
    let m1 = std_normal_pdf(a) / std_normal_tail(a);
    let mean = mu0 + sigma0 * m1;
    let var = sigma0 * sigma0 * (1.0 + a * m1 - m1 * m1);
    (mean, var)
}

/// Solve pre-truncation `(mu0, sigma0)` so the `[0, inf)`-truncated normal
/// hits the target moments. The squared coefficient of variation of a
/// truncated normal is an increasing function of the standardized bound
/// `a = -mu0/sigma0`, so a bisection on `a` suffices; targets outside the
/// achievable band yield `None`.
fn solve_truncated_normal(mean: f64, variance: f64) -> Option<(f64, f64)> {
    let target_ratio = variance / (mean * mean);
    let ratio_at = |a: f64| {
        let m1 = std_normal_pdf(a) / std_normal_tail(a);
        (1.0 + a * m1 - m1 * m1) / ((m1 - a) * (m1 - a))
    };
    let (mut lo, mut hi) = (-60.0f64, 26.0f64);
    if target_ratio <= ratio_at(lo) || target_ratio >= ratio_at(hi) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if ratio_at(mid) < target_ratio {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let a = 0.5 * (lo + hi);
    let m1 = std_normal_pdf(a) / std_normal_tail(a);
    let sigma0 = mean / (m1 - a);
    let mu0 = -a * sigma0;
    let (got_mean, got_var) = truncated_normal_moments(mu0, sigma0);
    if (got_mean - mean).abs() > MOMENT_TOLERANCE || (got_var - variance).abs() > MOMENT_TOLERANCE {
        return None;
    }
    Some((mu0, sigma0))
}

fn sample_truncated_normal(mu0: f64, sigma0: f64, rng: &mut ChaCha8Rng) -> f64 {
    let a = -mu0 / sigma0;
    let z = if a <= 0.0 {
        // Acceptance probability at least 1/2.
        loop {
            let z: f64 = StandardNormal.sample(rng);
            if z >= a {
                break z;
            }
        }
    } else {
        // Robert's exponential-proposal rejection for a > 0.
        let lambda = (a + (a * a + 4.0).sqrt()) / 2.0;
        loop {
            let u: f64 = rng.random();
            let z = a - u.ln() / lambda;
            let accept = (-(z - lambda) * (z - lambda) / 2.0).exp();
            if rng.random::<f64>() <= accept {
                break z;
            }
        }
    };
    mu0 + sigma0 * z
}
