//! Exponential integral E1 and the principal Lambert W branch.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("E1 is defined for x > 0 (got {0})")]
    E1Domain(f64),
    #[error("lambert W0 is defined for z >= -1/e (got {0})")]
    LambertDomain(f64),
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Exponential integral `E1(x) = int_x^inf e^{-t}/t dt` for `x > 0`.
///
/// Power series for `x <= 1`, continued fraction for `x > 1`; relative
/// accuracy around 1e-14 over the usable range. Underflows to zero for
/// very large `x`; use [`exp_integral_e1_scaled`] there.
pub fn exp_integral_e1(x: f64) -> Result<f64, SpecialError> {
    if !(x > 0.0) {
        return Err(SpecialError::E1Domain(x));
    }
    if x <= 1.0 {
        Ok(e1_series(x))
    } else {
        Ok((-x).exp() * e1_cf_scaled(x))
    }
}

/// Scaled exponential integral `e^x E1(x)`, stable for large `x`.
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64, SpecialError> {
    if !(x > 0.0) {
        return Err(SpecialError::E1Domain(x));
    }
    if x <= 1.0 {
        Ok(x.exp() * e1_series(x))
    } else {
        Ok(e1_cf_scaled(x))
    }
}

/// Convergent series around the logarithmic singularity:
/// `E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k * k!)`.
fn e1_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = 1.0; // (-x)^k / k!
    for k in 1..=60 {
        pow *= -x / k as f64;
        let term = pow / k as f64;
        sum += term;
        if term.abs() <= 1e-17 * (sum.abs() + 1e-300) {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// Modified Lentz evaluation of
/// `e^x E1(x) = 1 / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))`.
fn e1_cf_scaled(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x + 1.0;
    if f == 0.0 {
        f = TINY;
    }
    let mut c = f;
    let mut d = 0.0;
    for j in 1..400 {
        let a = -((j * j) as f64);
        let b = x + 1.0 + 2.0 * j as f64;
        d = b + a * d;
        if d == 0.0 {
            d = TINY;
        }
        c = b + a / c;
        if c == 0.0 {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}

/// Principal branch of the Lambert W function: the solution of
/// `w e^w = z` with `w >= -1`, for `z >= -1/e`.
///
/// Halley iteration from a piecewise initial guess; the residual
/// `|W e^W - z|` is driven to machine precision.
pub fn lambert_w0(z: f64) -> Result<f64, SpecialError> {
    let branch_point = -(-1f64).exp(); // -1/e
    if z.is_nan() || z < branch_point - 1e-12 {
        return Err(SpecialError::LambertDomain(z));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let z = z.max(branch_point);
    if z == branch_point {
        return Ok(-1.0);
    }

    let mut w = initial_guess(z);
    let mut best_w = w;
    let mut best_res = f64::INFINITY;
    for _ in 0..80 {
        let ew = w.exp();
        let f = w.mul_add(ew, -z);
        let fa = f.abs();
        if fa < best_res {
            best_res = fa;
            best_w = w;
        }
        if fa <= 1e-16 * (z.abs() + 1.0) {
            break;
        }
        // Halley step for f(w) = w e^w - z
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if denom == 0.0 || !denom.is_finite() {
            break;
        }
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-17 * (1.0 + w.abs()) {
            let ew = w.exp();
            let fa = w.mul_add(ew, -z).abs();
            if fa < best_res {
                best_res = fa;
                best_w = w;
            }
            break;
        }
    }
    Ok(best_w)
}

fn initial_guess(z: f64) -> f64 {
    let e = std::f64::consts::E;
    if z < -0.25 {
        // series around the branch point
        let p = (2.0 * (e * z + 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if z < e {
        // w e^w = z with small |w|: one log refinement of w = z
        let l = (1.0 + z).ln();
        l * (1.0 - l.ln_1p() / (1.0 + l))
    } else {
        // asymptotic expansion for large arguments
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}
