//! Diversity-multiplexing tradeoff of the block Rayleigh-fading MIMO channel
//! and the successive-decoding diversity gain used by the layered schemes.

use crate::model::SystemConfig;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DmtError {
    #[error("segment index {k} out of range [0, {max}]")]
    SegmentOutOfRange { k: usize, max: usize },
    #[error("power exponents must satisfy 0 <= xi_next <= xi_prev <= 1 (got {prev}, {next})")]
    InvalidPowerSplit { prev: f64, next: f64 },
    #[error("rate {rate} exceeds the feasible maximum {max} for this power split")]
    InfeasibleRate { rate: f64, max: f64 },
}

/// One linear segment of the DMT curve: on `k <= r <= k+1` the curve is
/// `d*(r) = phi - upsilon * (r - k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DmtSegment {
    pub k: usize,
    pub phi: f64,
    pub upsilon: f64,
}

/// Segment constants `phi_k = (M^sup - k)(M^star - k)` and
/// `upsilon_k = M^sup + M^star - 2k - 1`.
pub fn phi_upsilon(cfg: &SystemConfig, k: usize) -> Result<DmtSegment, DmtError> {
    let m_star = cfg.m_star();
    if k >= m_star {
        return Err(DmtError::SegmentOutOfRange { k, max: m_star - 1 });
    }
    Ok(DmtSegment {
        k,
        phi: phi_at(cfg, k),
        upsilon: upsilon_at(cfg, k),
    })
}

/// `phi_k` without the range check; valid for `k <= M_star`
/// (`phi_{M_star} = 0` closes the telescoping chain).
pub(crate) fn phi_at(cfg: &SystemConfig, k: usize) -> f64 {
    ((cfg.m_sup() - k) * (cfg.m_star() - k)) as f64
}

pub(crate) fn upsilon_at(cfg: &SystemConfig, k: usize) -> f64 {
    (cfg.m_sup() + cfg.m_star()) as f64 - 2.0 * k as f64 - 1.0
}

/// The piecewise-linear DMT curve `d*(r)`, zero for `r >= M_star`.
///
/// Panics on negative `r`; the curve is total on `r >= 0`.
pub fn dmt(cfg: &SystemConfig, r: f64) -> f64 {
    assert!(r >= 0.0, "multiplexing gain must be nonnegative");
    let m_star = cfg.m_star();
    if r >= m_star as f64 {
        return 0.0;
    }
    let k = (r.floor() as usize).min(m_star - 1);
    phi_at(cfg, k) - upsilon_at(cfg, k) * (r - k as f64)
}

/// Successive-decoding diversity gain of a layer transmitted between power
/// exponents `xi_prev >= xi_next`.
///
/// Decomposes `r = k (xi_prev - xi_next) + delta` with integer `k` and
/// `0 <= delta < xi_prev - xi_next` and returns `phi_k xi_prev - upsilon_k
/// delta`. When `r` is an exact multiple of the width, `delta = 0` is used.
/// A zero-width layer is feasible only at `r = 0` and yields the full
/// diversity `phi_0 xi_prev`.
pub fn d_sd(cfg: &SystemConfig, r: f64, xi_prev: f64, xi_next: f64) -> Result<f64, DmtError> {
    if !(0.0..=1.0).contains(&xi_prev) || !(0.0..=1.0).contains(&xi_next) || xi_next > xi_prev {
        return Err(DmtError::InvalidPowerSplit {
            prev: xi_prev,
            next: xi_next,
        });
    }
    let m_star = cfg.m_star();
    let width = xi_prev - xi_next;
    let max_rate = m_star as f64 * width;
    if !(r >= 0.0) || r > max_rate + 1e-12 {
        return Err(DmtError::InfeasibleRate { rate: r, max: max_rate });
    }
    if width == 0.0 {
        return Ok(phi_at(cfg, 0) * xi_prev);
    }
    let mut k = (r / width).floor() as usize;
    let mut delta = r - k as f64 * width;
    if k >= m_star {
        // only reachable at r = m_star * width up to roundoff
        k = m_star;
        delta = 0.0;
    }
    Ok(phi_at(cfg, k) * xi_prev - upsilon_at(cfg, k) * delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg(mt: usize, mr: usize) -> SystemConfig {
        SystemConfig::new(mt, mr, 1.0, 0.0).unwrap()
    }

    #[test]
    fn segment_constants() {
        let c = cfg(2, 2);
        let s0 = phi_upsilon(&c, 0).unwrap();
        assert_eq!((s0.phi, s0.upsilon), (4.0, 3.0));
        let s1 = phi_upsilon(&c, 1).unwrap();
        assert_eq!((s1.phi, s1.upsilon), (1.0, 1.0));
        let miso = cfg(4, 1);
        let s = phi_upsilon(&miso, 0).unwrap();
        assert_eq!((s.phi, s.upsilon), (4.0, 4.0));
        assert!(phi_upsilon(&c, 2).is_err());
    }

    #[test]
    fn telescoping_identity_up_to_8x8() {
        for mt in 1..=8 {
            for mr in 1..=8 {
                let c = cfg(mt, mr);
                for k in 0..c.m_star() {
                    let next = phi_at(&c, k + 1);
                    assert_relative_eq!(next, phi_at(&c, k) - upsilon_at(&c, k));
                }
            }
        }
    }

    #[test]
    fn dmt_curve_values() {
        let c = cfg(2, 2);
        assert_relative_eq!(dmt(&c, 0.0), 4.0);
        assert_relative_eq!(dmt(&c, 1.0), 1.0);
        assert_relative_eq!(dmt(&c, 0.5), 2.5);
        assert_relative_eq!(dmt(&c, 2.0), 0.0);
        assert_relative_eq!(dmt(&c, 5.0), 0.0);
    }

    #[test]
    fn dmt_is_nonincreasing_and_starts_at_product() {
        for (mt, mr) in [(1usize, 1usize), (2, 3), (4, 4), (1, 6)] {
            let c = cfg(mt, mr);
            assert_relative_eq!(dmt(&c, 0.0), (mt * mr) as f64);
            let mut prev = f64::INFINITY;
            let mut r = 0.0;
            while r <= c.m_star() as f64 + 0.5 {
                let d = dmt(&c, r);
                assert!(d <= prev + 1e-12);
                prev = d;
                r += 0.01;
            }
        }
    }

    #[test]
    fn successive_decoding_examples() {
        let c = cfg(2, 2);
        assert_relative_eq!(d_sd(&c, 0.5, 1.0, 0.5).unwrap(), 1.0);
        assert_relative_eq!(d_sd(&c, 0.0, 1.0, 0.0).unwrap(), 4.0);
        assert_relative_eq!(d_sd(&c, 0.25, 1.0, 0.5).unwrap(), 3.25);
        assert!(d_sd(&c, 1.5, 1.0, 0.5).is_err());
        // zero-width layer carrying zero rate
        assert_relative_eq!(d_sd(&c, 0.0, 0.7, 0.7).unwrap(), 4.0 * 0.7);
    }

    #[test]
    fn full_power_layer_recovers_dmt() {
        for (mt, mr) in [(1usize, 1usize), (2, 2), (3, 2), (4, 1)] {
            let c = cfg(mt, mr);
            let mut r = 0.0;
            while r <= c.m_star() as f64 {
                assert_relative_eq!(
                    d_sd(&c, r, 1.0, 0.0).unwrap(),
                    dmt(&c, r),
                    epsilon = 1e-12
                );
                r += 0.03;
            }
        }
    }
}
