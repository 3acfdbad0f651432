//! Closed-form distortion exponents: the partially- and fully-informed upper
//! bounds, single-layer list decoding (LD), hybrid digital-analog (HDA-S and
//! HDA-LD), progressive layering (LS-LD), broadcast layering (BS-LD) with
//! finite and infinite layers, and the regimes where the optimum is known.
//!
//! All functions consume a [`SystemConfig`] carrying `(M_t, M_r, b, nu)` and
//! return the exponent together with the regime that produced it and, where
//! meaningful, the optimizing rate or power split.

use crate::dmt::{dmt, phi_at, upsilon_at};
use crate::model::SystemConfig;
use crate::numerics::lambert_w0;

/// Which piece of a piecewise result applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Side information alone dominates; transmission does not help.
    SideInfoOnly,
    /// Low bandwidth ratio: the exponent is `b * M_star`.
    LowBandwidth,
    /// A segment of the DMT curve evaluated at `nu / b`.
    DmtSegment { k: usize },
    /// The no-side-information saturation `sum_i min(b, 2i-1+M_sup-M_star)`.
    MimoSum,
    /// Segment `k` of a scheme's own regime partition in `b`.
    Segment { k: usize },
    /// Segment `k` of the progressive-layering partition.
    LsSegment { k: usize },
    /// The single-layer scheme wins the combined broadcast result.
    SingleLayerWins,
    /// The infinite-layer broadcast scheme wins the combined result.
    InfiniteLayerWins,
    /// The MISO/SIMO optimal curve.
    MisoSimo,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::SideInfoOnly => write!(f, "side-info"),
            Regime::LowBandwidth => write!(f, "low-b"),
            Regime::DmtSegment { k } => write!(f, "dmt(k={k})"),
            Regime::MimoSum => write!(f, "mimo-sum"),
            Regime::Segment { k } => write!(f, "segment(k={k})"),
            Regime::LsSegment { k } => write!(f, "ls-segment(k={k})"),
            Regime::SingleLayerWins => write!(f, "single-layer"),
            Regime::InfiniteLayerWins => write!(f, "infinite-layers"),
            Regime::MisoSimo => write!(f, "miso-simo"),
        }
    }
}

/// The argument that achieved an exponent, when the scheme has one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Optimizer {
    /// Optimal multiplexing gain `r*`.
    MultiplexingGain(f64),
    /// Optimal fraction `kappa*` of layers reserved for the side-information
    /// floor in progressive layering.
    LayerFraction(f64),
    /// Leading power exponents of the equal-exponent broadcast allocation.
    PowerSplit { xi_first: f64, xi_gap: f64 },
}

/// A distortion exponent with its regime and optimizer.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentResult {
    pub value: f64,
    pub regime: Regime,
    pub optimizer: Option<Optimizer>,
}

impl ExponentResult {
    fn new(value: f64, regime: Regime) -> Self {
        Self {
            value,
            regime,
            optimizer: None,
        }
    }

    fn with_optimizer(mut self, opt: Optimizer) -> Self {
        self.optimizer = Some(opt);
        self
    }
}

/// Saturation exponent without receiver side information:
/// `sum_{i=1}^{M_star} min(b, 2i - 1 + M_sup - M_star)`.
pub fn delta_mimo(cfg: &SystemConfig) -> f64 {
    let a = (cfg.m_sup() - cfg.m_star()) as f64;
    (1..=cfg.m_star())
        .map(|i| cfg.b().min(2.0 * i as f64 - 1.0 + a))
        .sum()
}

/// Fully informed encoder upper bound: `nu + delta_mimo`.
pub fn delta_informed(cfg: &SystemConfig) -> f64 {
    cfg.nu() + delta_mimo(cfg)
}

/// Partially informed encoder upper bound.
///
/// Solves the underlying variational problem exactly: the objective
/// `max(nu, b * sum_i (1 - alpha_i)) + S_A(alpha)` over nonincreasing
/// `alpha` in `[0, 1]^{M_star}` is minimized by a vector of the form
/// `(1, .., 1, t, 0, .., 0)`, so the minimum is attained at one of finitely
/// many candidates (each block length `j`, with `t` at an endpoint or at the
/// kink where the two branches of the max meet).
pub fn delta_upper(cfg: &SystemConfig) -> ExponentResult {
    let m_star = cfg.m_star() as f64;
    let b = cfg.b();
    let nu = cfg.nu();

    let mut best = f64::INFINITY;
    for j in 1..=cfg.m_star() {
        let head: f64 = (1..j).map(|i| weight(cfg, i)).sum();
        let w_j = weight(cfg, j);
        let t_kink = m_star - (j as f64 - 1.0) - nu / b;
        let mut candidates = [0.0, 1.0, t_kink.clamp(0.0, 1.0)];
        candidates.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for &t in &candidates {
            let s = m_star - (j as f64 - 1.0) - t;
            let value = nu.max(b * s) + head + w_j * t;
            if value < best {
                best = value;
            }
        }
    }

    let regime = if b < nu / m_star {
        Regime::SideInfoOnly
    } else if (best - delta_mimo(cfg)).abs() <= 1e-12 && nu < b * m_star {
        if b < (cfg.m_sup() - cfg.m_star()) as f64 + 1.0 {
            Regime::LowBandwidth
        } else {
            Regime::MimoSum
        }
    } else {
        let r = nu / b;
        let k = (r.floor() as usize).min(cfg.m_star().saturating_sub(1));
        Regime::DmtSegment { k }
    };
    ExponentResult::new(best, regime)
}

/// `2i - 1 + M_sup - M_star`, the probability-exponent weight of the i-th
/// largest eigenvalue exponent (1-based).
fn weight(cfg: &SystemConfig, i: usize) -> f64 {
    2.0 * i as f64 - 1.0 + (cfg.m_sup() - cfg.m_star()) as f64
}

/// Finds `k` in `0..M_star` with
/// `b in [ (phi_{k+1} + shift) / (k+1), (phi_k + shift) / k )`,
/// the common regime partition of LD and BS-LD (with `shift = nu`).
fn rate_regime_k(cfg: &SystemConfig, shift: f64) -> Option<usize> {
    for k in 0..cfg.m_star() {
        let lower = (phi_at(cfg, k + 1) + shift) / (k as f64 + 1.0);
        if cfg.b() >= lower {
            return Some(k);
        }
    }
    None
}

/// Single-layer list decoding, with the optimal multiplexing gain.
pub fn delta_ld(cfg: &SystemConfig) -> ExponentResult {
    let nu = cfg.nu();
    let b = cfg.b();
    if b * cfg.m_star() as f64 <= nu {
        return ExponentResult::new(nu, Regime::SideInfoOnly);
    }
    let k = rate_regime_k(cfg, nu).expect("b M_star > nu guarantees a regime");
    let phi = phi_at(cfg, k);
    let ups = upsilon_at(cfg, k);
    let r_star = (phi + k as f64 * ups + nu) / (ups + b);
    let value = b * r_star;
    if value <= nu {
        ExponentResult::new(nu, Regime::Segment { k })
    } else {
        ExponentResult::new(value, Regime::Segment { k })
            .with_optimizer(Optimizer::MultiplexingGain(r_star))
    }
}

/// The optimal LD multiplexing gain, when transmission beats the
/// side-information floor.
pub fn r_star_ld(cfg: &SystemConfig) -> Option<f64> {
    match delta_ld(cfg).optimizer {
        Some(Optimizer::MultiplexingGain(r)) => Some(r),
        _ => None,
    }
}

/// Hybrid digital-analog transmission: superposed HDA for `b <= 1/M_star`
/// (side information ignored), HDA with list decoding above.
pub fn delta_hda(cfg: &SystemConfig) -> ExponentResult {
    let m_star = cfg.m_star() as f64;
    let b = cfg.b();
    let nu = cfg.nu();
    if b * m_star <= 1.0 {
        return ExponentResult::new(b * m_star, Regime::LowBandwidth);
    }
    if b < nu / m_star {
        return ExponentResult::new(nu, Regime::SideInfoOnly);
    }
    let k = hda_regime_k(cfg).expect("b >= nu/M_star guarantees a regime");
    let phi = phi_at(cfg, k);
    let ups = upsilon_at(cfg, k);
    let value = 1.0 + (b * m_star - 1.0) * (phi + k as f64 * ups - 1.0 + nu)
        / (b * m_star - 1.0 + m_star * ups);
    if value <= nu {
        ExponentResult::new(nu, Regime::Segment { k })
    } else {
        let r_star = (b - 1.0 / m_star) * (phi + k as f64 * ups - 1.0 + nu)
            / (b - 1.0 / m_star + ups);
        ExponentResult::new(value, Regime::Segment { k })
            .with_optimizer(Optimizer::MultiplexingGain(r_star))
    }
}

fn hda_regime_k(cfg: &SystemConfig) -> Option<usize> {
    let m_star = cfg.m_star() as f64;
    for k in 0..cfg.m_star() {
        let lower = (phi_at(cfg, k + 1) - 1.0 + cfg.nu()) / (k as f64 + 1.0) + 1.0 / m_star;
        if cfg.b() >= lower {
            return Some(k);
        }
    }
    None
}

/// The HDA-LD quantization-rate exponent `r*_h`, when defined.
pub fn r_star_hda(cfg: &SystemConfig) -> Option<f64> {
    match delta_hda(cfg).optimizer {
        Some(Optimizer::MultiplexingGain(r)) => Some(r),
        _ => None,
    }
}

/// The staircase constants of the progressive-layering solution:
/// per-segment slope magnitudes `phi_k = M_sup - M_star + 2k - 1`, intercepts
/// `M_k = M_star - k + 1`, and the cumulative climb budgets `c_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LsClimbConstants {
    /// `phi_k` for `k = 1..=M_star` (index 0 holds `phi_1`).
    pub phi: Vec<f64>,
    /// `M_k` for `k = 1..=M_star`.
    pub m: Vec<f64>,
    /// `c_0 = 0`, `c_i = c_{i-1} + phi_i ln(M_i / (M_i - 1))` for
    /// `i < M_star`, and `c_{M_star} = +inf`.
    pub c: Vec<f64>,
}

pub fn ls_constants(cfg: &SystemConfig) -> LsClimbConstants {
    let m_star = cfg.m_star();
    let a = (cfg.m_sup() - m_star) as f64;
    let phi: Vec<f64> = (1..=m_star).map(|k| a + 2.0 * k as f64 - 1.0).collect();
    let m: Vec<f64> = (1..=m_star).map(|k| (m_star - k + 1) as f64).collect();
    let mut c = vec![0.0];
    for i in 1..m_star {
        let prev = c[i - 1];
        c.push(prev + phi[i - 1] * (m[i - 1] / (m[i - 1] - 1.0)).ln());
    }
    c.push(f64::INFINITY);
    LsClimbConstants { phi, m, c }
}

/// Progressive multi-layer transmission in the limit of infinitely many
/// layers, with the optimal reserved-layer fraction `kappa*`.
pub fn delta_ls(cfg: &SystemConfig) -> ExponentResult {
    let nu = cfg.nu();
    let b = cfg.b();
    let m_star = cfg.m_star() as f64;
    if b <= nu / m_star {
        return ExponentResult::new(nu, Regime::SideInfoOnly);
    }
    let consts = ls_constants(cfg);
    // interval for segment k is (c_{k-1} + nu/M_k, c_k + nu/(M_k - 1)];
    // the right end is +inf at k = M_star.
    let mut seg = cfg.m_star();
    for k in 1..=cfg.m_star() {
        let hi = if k == cfg.m_star() {
            f64::INFINITY
        } else {
            consts.c[k] + nu / (consts.m[k - 1] - 1.0)
        };
        if b <= hi {
            seg = k;
            break;
        }
    }
    let k = seg;
    let phi = consts.phi[k - 1];
    let m_k = consts.m[k - 1];
    let c_prev = consts.c[k - 1];
    let kappa = {
        let exponent = (b - c_prev) / phi;
        let arg_ln = exponent + (nu / (m_k * phi)).ln();
        let w = if nu == 0.0 {
            0.0
        } else if arg_ln > 700.0 {
            // asymptotic W(e^x) = x - ln x + ...; Newton on w + ln w = x
            let mut w = arg_ln - arg_ln.ln();
            for _ in 0..50 {
                let f = w + w.ln() - arg_ln;
                w -= f / (1.0 + 1.0 / w);
            }
            w
        } else {
            lambert_w0(exponent.exp() * nu / (m_k * phi)).expect("nonnegative argument")
        };
        (phi / b) * w
    };
    let head: f64 = consts.phi[..k - 1].iter().sum();
    let value = nu + head + m_k * phi * (1.0 - (-(b * (1.0 - kappa) - c_prev) / phi).exp());
    ExponentResult::new(value, Regime::LsSegment { k })
        .with_optimizer(Optimizer::LayerFraction(kappa))
}

/// Geometric power-ratio constants of the equal-exponent broadcast
/// allocation in segment `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BsLayerConstants {
    pub eta: f64,
    pub gamma: f64,
}

pub(crate) fn bs_layer_constants(cfg: &SystemConfig, k: usize, layers: usize) -> BsLayerConstants {
    let eta = (cfg.b() * (k as f64 + 1.0) - phi_at(cfg, k + 1)) / upsilon_at(cfg, k);
    let gamma = if layers == 1 {
        0.0
    } else if eta == 1.0 {
        (layers - 1) as f64
    } else {
        (1.0 - eta.powi(layers as i32 - 1)) / (1.0 - eta)
    };
    BsLayerConstants { eta, gamma }
}

/// Broadcast layering with `layers` superposed layers at the fixed
/// multiplexing gains `(k+1)(xi_{l-1} - xi_l)`.
pub fn delta_bs_finite(cfg: &SystemConfig, layers: usize) -> ExponentResult {
    assert!(layers >= 1, "at least one layer");
    let nu = cfg.nu();
    let b = cfg.b();
    if b * cfg.m_star() as f64 <= nu {
        return ExponentResult::new(nu, Regime::SideInfoOnly);
    }
    let k = rate_regime_k(cfg, nu).expect("b M_star > nu guarantees a regime");
    let phi = phi_at(cfg, k);
    let ups = upsilon_at(cfg, k);
    let big_b = b * (k as f64 + 1.0);
    let BsLayerConstants { eta, gamma } = bs_layer_constants(cfg, k, layers);

    let (value, xi_first, xi_gap) = if !gamma.is_finite() || gamma > 1e14 {
        // infinite-layer limit of the same expressions
        let value = phi + nu * (big_b - phi) / (big_b - phi_at(cfg, k + 1));
        let xi_first = (ups * eta - nu) / (big_b - phi_at(cfg, k + 1));
        (value, xi_first, 0.0)
    } else {
        let den = (ups + big_b) * (ups + big_b * gamma) - big_b * phi * gamma;
        let value = nu + phi - ups * (ups * (nu + phi) + nu * big_b * gamma) / den;
        let slack = ups + big_b - phi - nu; // = ups * eta - nu, >= 0 in regime
        let xi_first = (ups + big_b * gamma) * slack / den;
        let xi_gap = phi * slack / den;
        (value, xi_first, xi_gap)
    };
    ExponentResult::new(value, Regime::Segment { k })
        .with_optimizer(Optimizer::PowerSplit { xi_first, xi_gap })
}

/// Broadcast layering in the limit of infinitely many layers.
pub fn delta_bs_infinite(cfg: &SystemConfig) -> ExponentResult {
    let nu = cfg.nu();
    let b = cfg.b();
    if b * cfg.m_star() as f64 <= nu {
        return ExponentResult::new(nu, Regime::SideInfoOnly);
    }
    let k = rate_regime_k(cfg, nu).expect("b M_star > nu guarantees a regime");
    let big_b = b * (k as f64 + 1.0);
    let phi = phi_at(cfg, k);
    let value = if big_b < phi {
        nu.max(big_b)
    } else {
        phi + nu * (big_b - phi) / (big_b - phi_at(cfg, k + 1))
    };
    ExponentResult::new(value, Regime::Segment { k })
}

/// Best broadcast result: infinite layering or falling back to a single
/// layer, whichever exponent is larger.
pub fn delta_bs_combined(cfg: &SystemConfig) -> ExponentResult {
    let inf = delta_bs_infinite(cfg);
    let ld = delta_ld(cfg);
    if ld.value > inf.value {
        ExponentResult {
            value: ld.value,
            regime: Regime::SingleLayerWins,
            optimizer: ld.optimizer,
        }
    } else {
        ExponentResult {
            value: inf.value,
            regime: Regime::InfiniteLayerWins,
            optimizer: None,
        }
    }
}

/// The optimal distortion exponent where it is known: the side-information
/// and low-bandwidth regimes for any antenna geometry, and the whole curve
/// for MISO/SIMO. Returns `None` where the optimum is open.
pub fn delta_optimal(cfg: &SystemConfig) -> Option<ExponentResult> {
    let nu = cfg.nu();
    let b = cfg.b();
    let m_star = cfg.m_star() as f64;
    let m_sup = cfg.m_sup() as f64;
    if b <= nu / m_star {
        return Some(ExponentResult::new(nu, Regime::SideInfoOnly));
    }
    if cfg.m_star() == 1 {
        let value = if b <= m_sup.max(nu) {
            nu.max(b)
        } else {
            m_sup + nu * (1.0 - m_sup / b)
        };
        return Some(ExponentResult::new(value, Regime::MisoSimo));
    }
    if b <= (m_sup - m_star + 1.0) / m_star {
        return Some(ExponentResult::new(b * m_star, Regime::LowBandwidth));
    }
    None
}
