//! Moment-based feasibility under a normality assumption, and the standard
//! normal quantile it needs.

use statrs::function::erf::erfc;

use super::{MomentSummary, Verdict};

/// Standard normal CDF.
pub fn norm_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

/// Standard normal quantile.
///
/// Acklam's rational approximation (relative error below 1.2e-9) with one
/// Halley refinement, giving absolute error well under the documented 1e-8
/// tolerance.
pub fn inv_norm_cdf(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }

    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.383577518672690e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let mut x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -((((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0))
    };

    // Halley refinement; skipped where exp(x²/2) would overflow.
    if x * x < 1400.0 {
        let e = norm_cdf(x) - p;
        let u = e * (2.0 * std::f64::consts::PI).sqrt() * (x * x / 2.0).exp();
        x -= u / (1.0 + x * u / 2.0);
    }
    x
}

/// Feasible iff `Σμ + Φ⁻¹(P0)·sqrt(Σσ²) <= W` over the picked items.
pub fn gaussian_feasibility(moments: &[&MomentSummary], w: f64, p0: f64) -> Verdict {
    let mean: f64 = moments.iter().map(|m| m.mean).sum();
    let var: f64 = moments.iter().map(|m| m.variance).sum();
    if mean + inv_norm_cdf(p0) * var.sqrt() <= w {
        Verdict::Feasible
    } else {
        Verdict::Infeasible
    }
}

/// The normality model's own confidence estimate `Φ((W - Σμ)/sqrt(Σσ²))`.
pub fn gaussian_confidence(moments: &[&MomentSummary], w: f64) -> f64 {
    let mean: f64 = moments.iter().map(|m| m.mean).sum();
    let var: f64 = moments.iter().map(|m| m.variance).sum();
    if var == 0.0 {
        return if mean <= w { 1.0 } else { 0.0 };
    }
    norm_cdf((w - mean) / var.sqrt())
}
