//! Scalar information measures, all in bits.

use crate::error::{Error, Result};

/// `[x]^+ = max(x, 0)`.
pub fn pos_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

/// Gaussian capacity `0.5 * log2(1 + x)` at signal-to-noise ratio `x`.
pub fn gauss_cap(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain {
            what: "gauss_cap",
            value: x,
        });
    }
    Ok(half_log2_1p(x))
}

/// Binary entropy with `0 log 0 = 0`.
pub fn bin_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            what: "bin_entropy",
            value: x,
        });
    }
    Ok(xlog2x(x) + xlog2x(1.0 - x))
}

/// `-x log2 x` with the continuity convention at 0; masses below 1e-300
/// count as zero.
pub(crate) fn xlog2x(x: f64) -> f64 {
    if x < 1e-300 {
        0.0
    } else {
        -x * libm::log2(x)
    }
}

/// `0.5 * log2(1 + x)` without the domain check.
pub(crate) fn half_log2_1p(x: f64) -> f64 {
    0.5 * libm::log1p(x) / core::f64::consts::LN_2
}
