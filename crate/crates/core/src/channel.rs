//! Channel parameter types and the raw-to-standard Gaussian transformation.
//!
//! The raw Gaussian model has receivers
//!
//! ```text
//! Y_1 = X~_1 + sqrt(hM_2) X~_2 + N~_1
//! Y_2 = sqrt(hM_1) X~_1 + X~_2 + N~_2
//! Z   = sqrt(hW_1) X~_1 + sqrt(hW_2) X~_2 + N~_W
//! ```
//!
//! Rescaling the codewords so each user reaches the other receiver with unit
//! gain and unit noise gives the standard form used everywhere else.

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Gaussian two-way wire-tap channel as physically parameterized.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct RawGtwChannel {
    pub gain_main_1: f64,
    pub gain_main_2: f64,
    pub gain_tap_1: f64,
    pub gain_tap_2: f64,
    pub noise_var_1: f64,
    pub noise_var_2: f64,
    pub noise_var_tap: f64,
    pub pmax_1: f64,
    pub pmax_2: f64,
}

/// Standardized Gaussian two-way wire-tap channel.
///
/// `alpha_k` is the gain of user k's own signal at its receiver. Each
/// receiver subtracts its own codeword, so no rate expression uses it.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct StandardGtwChannel {
    pub pmax_1: f64,
    pub pmax_2: f64,
    pub h_1: f64,
    pub h_2: f64,
    #[cfg_attr(feature = "serde", serde(default = "unit_gain"))]
    pub alpha_1: f64,
    #[cfg_attr(feature = "serde", serde(default = "unit_gain"))]
    pub alpha_2: f64,
}

#[cfg(feature = "serde")]
fn unit_gain() -> f64 {
    1.0
}

/// Binary additive two-way wire-tap channel: crossover probabilities at
/// receiver 1, receiver 2 and the eavesdropper.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(deny_unknown_fields))]
pub struct BatwChannel {
    pub eps_1: f64,
    pub eps_2: f64,
    pub eps_w: f64,
}

fn positive(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

fn non_negative(field: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            value,
            reason: "must be finite and non-negative",
        })
    }
}

impl RawGtwChannel {
    pub fn validate(&self) -> Result<()> {
        positive("gain_main_1", self.gain_main_1)?;
        positive("gain_main_2", self.gain_main_2)?;
        non_negative("gain_tap_1", self.gain_tap_1)?;
        non_negative("gain_tap_2", self.gain_tap_2)?;
        positive("noise_var_1", self.noise_var_1)?;
        positive("noise_var_2", self.noise_var_2)?;
        positive("noise_var_tap", self.noise_var_tap)?;
        non_negative("pmax_1", self.pmax_1)?;
        non_negative("pmax_2", self.pmax_2)
    }
}

impl StandardGtwChannel {
    /// A standard channel with unit self-gains.
    pub fn new(pmax_1: f64, pmax_2: f64, h_1: f64, h_2: f64) -> Result<Self> {
        let ch = StandardGtwChannel {
            pmax_1,
            pmax_2,
            h_1,
            h_2,
            alpha_1: 1.0,
            alpha_2: 1.0,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("pmax_1", self.pmax_1)?;
        non_negative("pmax_2", self.pmax_2)?;
        non_negative("h_1", self.h_1)?;
        non_negative("h_2", self.h_2)?;
        positive("alpha_1", self.alpha_1)?;
        positive("alpha_2", self.alpha_2)
    }

    /// The same channel with the user labels exchanged.
    pub fn swapped(&self) -> Self {
        StandardGtwChannel {
            pmax_1: self.pmax_2,
            pmax_2: self.pmax_1,
            h_1: self.h_2,
            h_2: self.h_1,
            alpha_1: self.alpha_2,
            alpha_2: self.alpha_1,
        }
    }
}

/// Maps a raw Gaussian channel onto its standard form.
pub fn standardize(raw: &RawGtwChannel) -> Result<StandardGtwChannel> {
    raw.validate()?;
    let RawGtwChannel {
        gain_main_1: m1,
        gain_main_2: m2,
        gain_tap_1: w1,
        gain_tap_2: w2,
        noise_var_1: s1,
        noise_var_2: s2,
        noise_var_tap: sw,
        pmax_1,
        pmax_2,
    } = *raw;
    let ch = StandardGtwChannel {
        pmax_1: m1 / s2 * pmax_1,
        pmax_2: m2 / s1 * pmax_2,
        h_1: w1 * s2 / (m1 * sw),
        h_2: w2 * s1 / (m2 * sw),
        alpha_1: s2 / (m1 * s1),
        alpha_2: s1 / (m2 * s2),
    };
    // Overflow of extreme but finite inputs lands here.
    ch.validate()?;
    Ok(ch)
}

impl BatwChannel {
    pub fn new(eps_1: f64, eps_2: f64, eps_w: f64) -> Result<Self> {
        validate_batw(BatwChannel {
            eps_1,
            eps_2,
            eps_w,
        })
    }
}

fn receiver_crossover(field: &'static str, value: f64) -> Result<()> {
    if (0.0..0.5).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            value,
            reason: "receiver crossover probability must lie in [0, 0.5)",
        })
    }
}

/// Checks the crossover probabilities; `eps_w = 0.5` is admitted.
pub fn validate_batw(ch: BatwChannel) -> Result<BatwChannel> {
    receiver_crossover("eps_1", ch.eps_1)?;
    receiver_crossover("eps_2", ch.eps_2)?;
    if !(0.0..=0.5).contains(&ch.eps_w) {
        return Err(Error::InvalidParameter {
            field: "eps_w",
            value: ch.eps_w,
            reason: "eavesdropper crossover probability must lie in [0, 0.5]",
        });
    }
    Ok(ch)
}
