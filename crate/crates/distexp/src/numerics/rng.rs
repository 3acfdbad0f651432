//! Deterministic counter-based random streams for reproducible simulation.
//!
//! Every Monte Carlo trial owns its own substream, addressed by
//! `(seed, stream index)`. The same address reproduces the same draw
//! sequence regardless of thread count or scheduling.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ChannelMatrix;

/// A deterministic substream of a seeded generator family.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut key = [0u8; 32];
        let mut s = seed ^ 0x9e37_79b9_7f4a_7c15;
        for chunk in key.chunks_exact_mut(8) {
            s = splitmix64(s);
            chunk.copy_from_slice(&s.to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(index);
        Self { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`.
    pub fn uniform_pos(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    /// Two independent standard normals via Box-Muller.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.uniform_pos();
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }

    /// Circularly-symmetric complex Gaussian with `E|h|^2 = 1`.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let (x, y) = self.normal_pair();
        Complex64::new(x, y) * std::f64::consts::FRAC_1_SQRT_2
    }

    /// Unit-mean exponential draw.
    pub fn exponential(&mut self) -> f64 {
        -self.uniform_pos().ln()
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Draws an `m_r x m_t` channel matrix with i.i.d. CN(0, 1) entries.
pub fn sample_channel(m_t: usize, m_r: usize, stream: &mut RngStream) -> ChannelMatrix {
    let mut data = Vec::with_capacity(m_r * m_t);
    for _ in 0..m_r * m_t {
        data.push(stream.complex_gaussian());
    }
    ChannelMatrix::new(m_r, m_t, data)
}

/// Draws the side-information fading gain, Exp(1).
pub fn sample_side_info_gain(stream: &mut RngStream) -> f64 {
    stream.exponential()
}
