//! Concentration-inequality lower bounds on the confidence level, and the
//! Hoeffding-derived sample-size requirement.
//!
//! Both bounds hold for any independent sum whose per-term ranges, means and
//! variances match the inputs. Fed with sample moments (population variance,
//! sample min/max) they lower-bound the bootstrap-exact confidence.

use super::{EvalError, MomentSummary};

/// Bernstein lower bound on `P(S <= W)` with slack `α = W - Σμ`:
/// `1 - exp(-(α²/2) / (V + Cα/3))`, `V` the summed variances and `C` the
/// largest per-item range. Returns 0 for `α < 0`.
pub fn bernstein_lower_bound(moments: &[&MomentSummary], w: f64) -> f64 {
    let alpha = w - moments.iter().map(|m| m.mean).sum::<f64>();
    let v = moments.iter().map(|m| m.variance).sum::<f64>();
    let c = moments.iter().map(|m| m.range()).fold(0.0, f64::max);
    bernstein_raw(alpha, v, c)
}

pub(crate) fn bernstein_raw(alpha: f64, v: f64, c: f64) -> f64 {
    if alpha < 0.0 {
        return 0.0;
    }
    let denom = v + c * alpha / 3.0;
    if denom == 0.0 {
        // Degenerate deterministic sum: certain once alpha is positive.
        return if alpha > 0.0 { 1.0 } else { 0.0 };
    }
    1.0 - (-(alpha * alpha / 2.0) / denom).exp()
}

/// Classical Hoeffding lower bound `1 - exp(-2α² / Σ(b_j - a_j)²)`.
/// Returns 0 for `α < 0`.
pub fn hoeffding_lower_bound(moments: &[&MomentSummary], w: f64) -> f64 {
    let alpha = w - moments.iter().map(|m| m.mean).sum::<f64>();
    let sq_ranges = moments.iter().map(|m| m.range() * m.range()).sum::<f64>();
    hoeffding_raw(alpha, sq_ranges)
}

pub(crate) fn hoeffding_raw(alpha: f64, sq_ranges: f64) -> f64 {
    if alpha < 0.0 {
        return 0.0;
    }
    if sq_ranges == 0.0 {
        return if alpha > 0.0 { 1.0 } else { 0.0 };
    }
    1.0 - (-2.0 * alpha * alpha / sq_ranges).exp()
}

/// Samples needed so the empirical confidence misses the truth by more than
/// `epsilon` with probability at most 1/2: `ceil(ln 2 / (2 ε²))`.
pub fn required_sample_size(epsilon: f64) -> Result<u64, EvalError> {
    if !(epsilon > 0.0) {
        return Err(EvalError::NonPositiveEpsilon(epsilon));
    }
    Ok((std::f64::consts::LN_2 / (2.0 * epsilon * epsilon)).ceil() as u64)
}
