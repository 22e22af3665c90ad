use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GmsError;
use crate::sim::StateVector;

/// Amplitude statistics of a state with respect to a marked set, over the
/// whole `2^q`-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeStats {
    pub n_total: u64,
    pub r: u64,
    pub k0_mean: Complex64,
    pub l0_mean: Complex64,
    /// `(1/(N-r)) Σ |l_i - l̄|²`.
    pub sigma2: f64,
    /// `1 - (N-r)·σ²`.
    pub p_max: f64,
    pub marked_mass: f64,
    pub unmarked_sum_sq: f64,
    pub unmarked_sum: Complex64,
}

pub fn amplitude_stats(psi: &StateVector, marked: impl Fn(usize) -> bool) -> AmplitudeStats {
    let amps = psi.amplitudes();
    let (mut r, mut k_sum, mut l_sum, mut l_sq, mut k_sq) = (0u64, Complex64::default(), Complex64::default(), 0.0, 0.0);
    for (i, a) in amps.iter().enumerate() {
        if marked(i) {
            r += 1;
            k_sum += a;
            k_sq += a.norm_sqr();
        } else {
            l_sum += a;
            l_sq += a.norm_sqr();
        }
    }
    let n_total = amps.len() as u64;
    let unmarked = (n_total - r) as f64;
    let l0_mean = if unmarked > 0.0 { l_sum / unmarked } else { Complex64::default() };
    let k0_mean = if r > 0 { k_sum / r as f64 } else { Complex64::default() };
    let sigma2 = if unmarked > 0.0 {
        amps.iter().enumerate().filter(|(i, _)| !marked(*i)).map(|(_, a)| (a - l0_mean).norm_sqr()).sum::<f64>() / unmarked
    } else {
        0.0
    };
    AmplitudeStats {
        n_total,
        r,
        k0_mean,
        l0_mean,
        sigma2,
        p_max: 1.0 - unmarked * sigma2,
        marked_mass: k_sq,
        unmarked_sum_sq: l_sq,
        unmarked_sum: l_sum,
    }
}

/// First three terms of the iteration-count series
/// `T = -½ k̄/l̄ + (π/4)√(N/r) - (π/24)√(r/N)`.
pub fn optimal_iterations(k0_mean: Complex64, l0_mean: Complex64, n: f64, r: f64) -> Result<f64, GmsError> {
    if l0_mean.norm() < 1e-300 {
        return Err(GmsError::DegenerateUnmarkedMean);
    }
    if r < 1.0 || n <= r {
        return Err(GmsError::Config(format!("need 1 <= r < N, got r = {r}, N = {n}")));
    }
    use std::f64::consts::PI;
    Ok(-0.5 * (k0_mean / l0_mean).re + PI / 4.0 * (n / r).sqrt() - PI / 24.0 * (r / n).sqrt())
}

/// The closed-form estimate built from the derivation's intermediate sums:
/// `1 - Σ|l_i|² = r / (2^m·2^{2(n-1)l})` plus `(Σ l_i)² / (N - r) = 2^m / (N - r)`.
pub fn p_max_estimate(m: usize, n: usize, l: usize, r: f64, big_n: f64) -> f64 {
    let (m, n, l) = (m as i32, n as i32, l as i32);
    r / (2f64.powi(m) * 2f64.powi(2 * (n - 1) * l)) + 2f64.powi(m) / (big_n - r)
}
