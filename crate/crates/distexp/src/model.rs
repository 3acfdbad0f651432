//! System configuration and the shared high-SNR change-of-variables types.
//!
//! A [`SystemConfig`] bundles the four parameters that every formula in this
//! crate consumes: the antenna counts of the MIMO link, the bandwidth ratio
//! `b` (channel uses per source sample) and the side-information quality
//! exponent `nu` (the side-information SNR scales as `rho^nu`).

use thiserror::Error;

/// Validation errors for system parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("antenna counts must be at least 1 (got {mt}x{mr})")]
    AntennaCount { mt: usize, mr: usize },
    #[error("bandwidth ratio must be positive and finite (got {0})")]
    BandwidthRatio(f64),
    #[error("side information quality must be nonnegative and finite (got {0})")]
    SideInfoQuality(f64),
    #[error("SNR must be positive and finite (got {0})")]
    Snr(f64),
}

/// Antenna geometry, bandwidth ratio and side-information quality.
///
/// Regime boundaries downstream are half-open `[lo, hi)` in `b`: a boundary
/// value of `b` belongs to the regime whose interval starts there. Boundary
/// comparisons are exact floating-point comparisons, so tests probe interior
/// points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemConfig {
    m_t: usize,
    m_r: usize,
    b: f64,
    nu: f64,
}

impl SystemConfig {
    /// Validates and builds a configuration.
    pub fn new(m_t: usize, m_r: usize, b: f64, nu: f64) -> Result<Self, ConfigError> {
        if m_t == 0 || m_r == 0 {
            return Err(ConfigError::AntennaCount { mt: m_t, mr: m_r });
        }
        if !(b > 0.0) || !b.is_finite() {
            return Err(ConfigError::BandwidthRatio(b));
        }
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(ConfigError::SideInfoQuality(nu));
        }
        Ok(Self { m_t, m_r, b, nu })
    }

    pub fn m_t(&self) -> usize {
        self.m_t
    }

    pub fn m_r(&self) -> usize {
        self.m_r
    }

    /// min(M_t, M_r), the number of spatial degrees of freedom.
    pub fn m_star(&self) -> usize {
        self.m_t.min(self.m_r)
    }

    /// max(M_t, M_r).
    pub fn m_sup(&self) -> usize {
        self.m_t.max(self.m_r)
    }

    /// Bandwidth ratio: channel uses per source sample.
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Side-information quality exponent.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Same antennas and `nu`, different bandwidth ratio.
    pub fn with_b(&self, b: f64) -> Result<Self, ConfigError> {
        Self::new(self.m_t, self.m_r, b, self.nu)
    }

    /// Same antennas and `b`, different side-information quality.
    pub fn with_nu(&self, nu: f64) -> Result<Self, ConfigError> {
        Self::new(self.m_t, self.m_r, self.b, nu)
    }
}

impl std::fmt::Display for SystemConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}x{} b={} nu={}",
            self.m_t, self.m_r, self.b, self.nu
        )
    }
}

/// A point in the high-SNR change of variables: channel eigenvalue exponents
/// `alpha` (eigenvalue `lambda_i = rho^{-alpha_i}`, sorted `alpha_1 >= ... >=
/// alpha_{M*} `) and the side-information exponent `beta` (`gamma =
/// rho^{-beta}`).
#[derive(Debug, Clone, PartialEq)]
pub struct HighSnrPoint {
    pub alpha: Vec<f64>,
    pub beta: f64,
}

impl HighSnrPoint {
    /// True iff the point lies in the region of finite probability exponent:
    /// nonincreasing nonnegative `alpha` and `beta >= 0`.
    pub fn is_feasible(&self) -> bool {
        if !(self.beta >= 0.0) {
            return false;
        }
        let mut prev = f64::INFINITY;
        for &a in &self.alpha {
            if !(a >= 0.0) || a > prev {
                return false;
            }
            prev = a;
        }
        true
    }
}

/// Finite-SNR operating point on linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteSnrConfig {
    pub rho: f64,
    pub rho_s: f64,
}

impl FiniteSnrConfig {
    pub fn new(rho: f64, rho_s: f64) -> Result<Self, ConfigError> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(ConfigError::Snr(rho));
        }
        if !(rho_s > 0.0) || !rho_s.is_finite() {
            return Err(ConfigError::Snr(rho_s));
        }
        Ok(Self { rho, rho_s })
    }

    /// Builds the operating point at channel SNR `rho` with the convention
    /// `rho_s = rho^nu`.
    pub fn from_exponent(cfg: &SystemConfig, rho: f64) -> Result<Self, ConfigError> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(ConfigError::Snr(rho));
        }
        Self::new(rho, rho.powf(cfg.nu()))
    }

    pub fn from_db(cfg: &SystemConfig, rho_db: f64) -> Result<Self, ConfigError> {
        Self::from_exponent(cfg, 10f64.powf(rho_db / 10.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn siso_config() {
        let cfg = SystemConfig::new(1, 1, 2.0, 1.0).unwrap();
        assert_eq!(cfg.m_star(), 1);
        assert_eq!(cfg.m_sup(), 1);
    }

    #[test]
    fn asymmetric_config() {
        let cfg = SystemConfig::new(3, 2, 2.0, 0.5).unwrap();
        assert_eq!(cfg.m_star(), 2);
        assert_eq!(cfg.m_sup(), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            SystemConfig::new(2, 2, 0.0, 0.5),
            Err(ConfigError::BandwidthRatio(_))
        ));
        assert!(matches!(
            SystemConfig::new(0, 2, 1.0, 0.5),
            Err(ConfigError::AntennaCount { .. })
        ));
        assert!(matches!(
            SystemConfig::new(2, 2, 1.0, -0.1),
            Err(ConfigError::SideInfoQuality(_))
        ));
    }

    #[test]
    fn min_max_product_identity() {
        for mt in 1..=8 {
            for mr in 1..=8 {
                let cfg = SystemConfig::new(mt, mr, 1.0, 0.0).unwrap();
                assert_eq!(cfg.m_star() * cfg.m_sup(), mt * mr);
            }
        }
    }

    #[test]
    fn high_snr_point_feasibility() {
        let good = HighSnrPoint {
            alpha: vec![0.9, 0.4, 0.0],
            beta: 0.0,
        };
        assert!(good.is_feasible());
        let unordered = HighSnrPoint {
            alpha: vec![0.2, 0.5],
            beta: 0.0,
        };
        assert!(!unordered.is_feasible());
        let negative = HighSnrPoint {
            alpha: vec![0.5, -0.1],
            beta: 0.0,
        };
        assert!(!negative.is_feasible());
    }

    #[test]
    fn finite_snr_from_exponent() {
        let cfg = SystemConfig::new(2, 2, 2.0, 0.5).unwrap();
        let fin = FiniteSnrConfig::from_exponent(&cfg, 10_000.0).unwrap();
        assert!((fin.rho_s - 100.0).abs() < 1e-9);
    }
}
