//! Renyi entropies and the purity envelope `g_alpha`.
//!
//! `g_alpha(c)` is the least Renyi-`alpha` entropy among probability vectors
//! with `sum p_i^2 = c`; the minimizer puts `k = floor(1/c)` equal large
//! weights and one remainder. Composed with the qubit spectrum map
//! [`qubit_f`], it turns `1 -> 2` norm bounds into entropy bounds.

use thiserror::Error;

use crate::linalg::DensityMatrix;

#[derive(Debug, Error)]
pub enum EntropyError {
    #[error("alpha must lie in {range} (got {alpha})")]
    AlphaOutOfRange { alpha: f64, range: &'static str },
    #[error("purity must lie in (0, 1] (got {purity})")]
    PurityOutOfRange { purity: f64 },
    #[error("argument must lie in [{lo}, {hi}] (got {value})")]
    ArgumentOutOfRange { value: f64, lo: f64, hi: f64 },
    #[error("curve grid is empty or not increasing")]
    BadGrid,
}

/// Eigenvalues below this are treated as zero when counting rank.
pub const RANK_TOL: f64 = 1e-10;

/// Renyi entropy of a probability vector, in bits.
///
/// `alpha = 0` counts support, `alpha = 1` is Shannon, `alpha = inf` is
/// min-entropy. Negative entries are clipped to zero; the vector is assumed
/// normalized.
pub fn renyi_entropy_spectrum(probs: &[f64], alpha: f64) -> Result<f64, EntropyError> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(EntropyError::AlphaOutOfRange { alpha, range: "[0, inf]" });
    }
    let clipped = probs.iter().map(|&p| p.max(0.0));
    if alpha == 0.0 {
        let rank = clipped.filter(|&p| p > RANK_TOL).count().max(1);
        return Ok((rank as f64).log2());
    }
    if alpha.is_infinite() {
        let max = clipped.fold(0.0f64, f64::max);
        return Ok(-max.log2());
    }
    if (alpha - 1.0).abs() < 1e-12 {
        let h: f64 = clipped.map(|p| if p > 0.0 { -p * p.log2() } else { 0.0 }).sum();
        return Ok(h);
    }
    let power: f64 = clipped.map(|p| p.powf(alpha)).sum();
    Ok(power.log2() / (1.0 - alpha))
}

/// Renyi entropy of a density matrix, in bits.
pub fn renyi_entropy(rho: &DensityMatrix, alpha: f64) -> Result<f64, EntropyError> {
    renyi_entropy_spectrum(&rho.spectrum(), alpha)
}

/// Larger eigenvalue of a qubit state with 2-norm `x = sqrt(Tr rho^2)`.
///
/// Defined for `x in [1/sqrt 2, 1]`; the spectrum is `(f, 1 - f)`.
pub fn qubit_f(x: f64) -> Result<f64, EntropyError> {
    let lo = std::f64::consts::FRAC_1_SQRT_2;
    if !(lo - 1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(EntropyError::ArgumentOutOfRange { value: x, lo, hi: 1.0 });
    }
    let radicand = (2.0 * x * x - 1.0).max(0.0);
    Ok((1.0 + radicand.sqrt()).min(2.0) / 2.0)
}

/// Renyi entropy of the two-point distribution `(x, 1 - x)`, in bits.
pub fn binary_renyi(x: f64, alpha: f64) -> Result<f64, EntropyError> {
    if !(-1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(EntropyError::ArgumentOutOfRange { value: x, lo: 0.0, hi: 1.0 });
    }
    let x = x.clamp(0.0, 1.0);
    renyi_entropy_spectrum(&[x, 1.0 - x], alpha)
}

/// Value and minimizing distribution of the purity envelope.
#[derive(Debug, Clone)]
pub struct GValue {
    /// `g_alpha(c)` in bits.
    pub value: f64,
    /// The minimizing distribution: `k` equal weights plus one remainder.
    pub distribution: Vec<f64>,
}

/// Least Renyi-`alpha` entropy over distributions with `sum p_i^2 = c`.
///
/// Valid for `alpha in [1, 2]` and `c in (0, 1]`. The minimizer has
/// `k = floor(1/c)` weights `(1 + d) / (1 + k)` and one weight
/// `(1 - k d) / (1 + k)` with `d = sqrt(c - (1 - c)/k)`; its Renyi entropy
/// is the returned value, which reduces to `-log2 c` at `alpha = 2` and to
/// the binary entropy form for `c >= 1/2`.
pub fn g_alpha(c: f64, alpha: f64) -> Result<GValue, EntropyError> {
    if alpha.is_nan() || !(1.0..=2.0).contains(&alpha) {
        return Err(EntropyError::AlphaOutOfRange { alpha, range: "[1, 2]" });
    }
    if c.is_nan() || c <= 0.0 || c > 1.0 + 1e-12 {
        return Err(EntropyError::PurityOutOfRange { purity: c });
    }
    let c = c.min(1.0);
    let k = (1.0 / c).floor() as usize;
    let kf = k as f64;
    let radicand = c - (1.0 - c) / kf;
    debug_assert!(radicand > -1e-12, "k = floor(1/c) keeps the radicand nonnegative");
    let d = radicand.max(0.0).sqrt();
    let mut distribution = vec![(1.0 + d) / (1.0 + kf); k];
    distribution.push((1.0 - kf * d) / (1.0 + kf));
    // The minimizer has purity exactly c, so its Renyi entropy dominates
    // -log2 c for alpha <= 2; the clamp keeps that order at float level.
    let value = renyi_entropy_spectrum(&distribution, alpha)?.max(-c.log2());
    let value = if value == 0.0 { 0.0 } else { value };
    Ok(GValue { value, distribution })
}

/// One row of the envelope curve.
#[derive(Debug, Clone, Copy)]
pub struct GCurvePoint {
    pub c: f64,
    pub g: f64,
    /// The trivial lower envelope `-log2 c`, touched exactly at `c = 1/k`.
    pub neg_log2_c: f64,
}

/// Evaluates the envelope on a uniform purity grid, endpoints included.
pub fn g_curve(from: f64, to: f64, steps: usize, alpha: f64) -> Result<Vec<GCurvePoint>, EntropyError> {
    if steps < 2 || !(from.is_finite() && to.is_finite()) || from <= 0.0 || to <= from {
        return Err(EntropyError::BadGrid);
    }
    let unsign_zero = |x: f64| if x == 0.0 { 0.0 } else { x };
    let mut rows = Vec::with_capacity(steps);
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let c = from + t * (to - from);
        let g = unsign_zero(g_alpha(c, alpha)?.value);
        rows.push(GCurvePoint { c, g, neg_log2_c: unsign_zero(-c.log2()) });
    }
    Ok(rows)
}
