//! Special functions, complex linear algebra and deterministic sampling.

mod linalg;
mod rng;
mod special;

pub use linalg::{gram_eigenvalues, hermitian_eigenvalues, log_det_capacity, ChannelMatrix};
pub use rng::{sample_channel, sample_side_info_gain, RngStream};
pub use special::{exp_integral_e1, exp_integral_e1_scaled, lambert_w0, SpecialError};

/// Capacity in bits per channel use from precomputed Gram eigenvalues:
/// `sum_i log2(1 + (rho / m_t) lambda_i)`.
pub fn capacity_from_eigenvalues(eigs: &[f64], rho: f64, m_t: usize) -> f64 {
    let scale = rho / m_t as f64;
    eigs.iter().map(|&l| (1.0 + scale * l).log2()).sum()
}
