//! Power allocation for the Gaussian channel: secrecy sum-rate maximization,
//! cooperative jamming, and an exhaustive lattice oracle.
//!
//! Maximizing the sum-rate is the same as minimizing
//! `rho(P) = (1 + h_1 P_1 + h_2 P_2) / ((1 + P_1)(1 + P_2))`. With
//! `Phi_j(P) = (1 + h_1 P_1 + h_2 P_2) / (1 + P_j)` the partial derivative is
//! `(h_j - Phi_j) / ((1 + P_1)(1 + P_2))`, so a user transmits at full power
//! exactly when it is not single-user decodable by the eavesdropper.

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::channel::{validate_batw, BatwChannel, StandardGtwChannel};
use crate::error::{Error, Result};
use crate::measures::{bin_entropy, half_log2_1p, pos_part};
use crate::region::{lattice, rho, sum_rate_unchecked, PowerPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum User {
    One,
    Two,
}

/// Which branch of the closed-form rules produced an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum CaseLabel {
    BothMax,
    User1MaxUser2Zero,
    User2MaxUser1Zero,
    BothZero,
    JamBothMax,
    JamBothZero,
    /// A lattice point that is not a corner of the power box (oracle only).
    Interior,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::BothMax => "BothMax",
            CaseLabel::User1MaxUser2Zero => "User1MaxUser2Zero",
            CaseLabel::User2MaxUser1Zero => "User2MaxUser1Zero",
            CaseLabel::BothZero => "BothZero",
            CaseLabel::JamBothMax => "JamBothMax",
            CaseLabel::JamBothZero => "JamBothZero",
            CaseLabel::Interior => "Interior",
        }
    }

    /// Labels a sum-rate allocation by the box corner it sits on.
    fn of_corner(ch: &StandardGtwChannel, p: PowerPoint) -> CaseLabel {
        let full_1 = p.p_1 == ch.pmax_1 && ch.pmax_1 > 0.0;
        let full_2 = p.p_2 == ch.pmax_2 && ch.pmax_2 > 0.0;
        match (full_1, full_2, p.p_1 == 0.0, p.p_2 == 0.0) {
            (true, true, _, _) => CaseLabel::BothMax,
            (true, false, _, true) => CaseLabel::User1MaxUser2Zero,
            (false, true, true, _) => CaseLabel::User2MaxUser1Zero,
            (_, _, true, true) => CaseLabel::BothZero,
            _ => CaseLabel::Interior,
        }
    }

    fn swapped(self) -> CaseLabel {
        match self {
            CaseLabel::User1MaxUser2Zero => CaseLabel::User2MaxUser1Zero,
            CaseLabel::User2MaxUser1Zero => CaseLabel::User1MaxUser2Zero,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct PowerAllocation {
    pub p: PowerPoint,
    pub case_label: CaseLabel,
    /// Clamped rate at `p` in bits per channel use.
    pub objective_value: f64,
}

/// `Phi_j(P) = (1 + h_1 P_1 + h_2 P_2) / (1 + P_j)`.
pub fn phi(ch: &StandardGtwChannel, p: PowerPoint, j: User) -> f64 {
    let num = 1.0 + ch.h_1 * p.p_1 + ch.h_2 * p.p_2;
    match j {
        User::One => num / (1.0 + p.p_1),
        User::Two => num / (1.0 + p.p_2),
    }
}

/// Partial derivative of `rho` with respect to `P_j`.
pub fn rho_dot(ch: &StandardGtwChannel, p: PowerPoint, j: User) -> f64 {
    let h_j = match j {
        User::One => ch.h_1,
        User::Two => ch.h_2,
    };
    (h_j - phi(ch, p, j)) / ((1.0 + p.p_1) * (1.0 + p.p_2))
}

/// `phi_2(P_2) = (1 + h_2 P_2) / (1 + P_2)`.
pub fn phi2(ch: &StandardGtwChannel, p_2: f64) -> f64 {
    (1.0 + ch.h_2 * p_2) / (1.0 + p_2)
}

/// Closed-form rule for `h_1 <= h_2`, returned in the same labelling.
fn ordered_rule(ch: &StandardGtwChannel) -> (PowerPoint, CaseLabel) {
    let (h_1, h_2) = (ch.h_1, ch.h_2);
    if h_1 <= 1.0 + h_2 * ch.pmax_2 && h_2 < 1.0 + h_1 * ch.pmax_1 {
        (PowerPoint::max_of(ch), CaseLabel::BothMax)
    } else if h_1 < 1.0 && h_2 >= 1.0 + h_1 * ch.pmax_1 {
        (
            PowerPoint::new(ch.pmax_1, 0.0),
            CaseLabel::User1MaxUser2Zero,
        )
    } else {
        (PowerPoint::ZERO, CaseLabel::BothZero)
    }
}

fn allocation(ch: &StandardGtwChannel, p: PowerPoint, case_label: CaseLabel) -> PowerAllocation {
    PowerAllocation {
        p,
        case_label,
        objective_value: pos_part(sum_rate_unchecked(ch, p)),
    }
}

/// The stationary-point case rule on its own: full power for a user unless
/// the eavesdropper can decode it treating the other user as noise.
///
/// When both eavesdropper gains exceed one this can pick full power for
/// both users although the sum-rate there is negative; [`optimal_power`]
/// handles that case.
pub fn theorem_allocation(ch: &StandardGtwChannel) -> PowerAllocation {
    if ch.h_1 > ch.h_2 {
        let sw = ch.swapped();
        let (p, label) = ordered_rule(&sw);
        allocation(ch, p.swapped(), label.swapped())
    } else {
        let (p, label) = ordered_rule(ch);
        allocation(ch, p, label)
    }
}

/// Secrecy sum-rate maximizing power allocation.
///
/// `rho` is linear-fractional in each power separately, so the optimum is a
/// corner of the box. The case rule picks the right corner among those
/// with `rho <= 1`; if its pick has `rho > 1` both users stay silent.
pub fn optimal_power(ch: &StandardGtwChannel) -> PowerAllocation {
    let pick = theorem_allocation(ch);
    if rho(ch, pick.p) > 1.0 {
        allocation(ch, PowerPoint::ZERO, CaseLabel::BothZero)
    } else {
        pick
    }
}

/// Exhaustive minimization of `rho` over a `grid x grid` lattice covering
/// the power box, endpoints included. Ties go to the smaller `p_1`, then the
/// smaller `p_2`.
pub fn optimal_power_oracle(ch: &StandardGtwChannel, grid: usize) -> Result<PowerAllocation> {
    if grid < 2 {
        return Err(Error::InvalidParameter {
            field: "grid",
            value: grid as f64,
            reason: "oracle lattice needs at least 2 points per axis",
        });
    }
    let mut best = PowerPoint::ZERO;
    let mut best_rho = rho(ch, best);
    for i in 0..grid {
        let p_1 = lattice(ch.pmax_1, i, grid);
        for j in 0..grid {
            let p = PowerPoint::new(p_1, lattice(ch.pmax_2, j, grid));
            let r = rho(ch, p);
            if r < best_rho {
                best_rho = r;
                best = p;
            }
        }
    }
    Ok(allocation(ch, best, CaseLabel::of_corner(ch, best)))
}

/// Upper bound on how far the lattice optimum can fall below the true
/// optimum: the sum-rate changes by at most `(1 + h_k) / (2 ln 2)` per unit
/// of `P_k`, and the lattice spacing is `pmax_k / (grid - 1)`.
pub fn oracle_gap_bound(ch: &StandardGtwChannel, grid: usize) -> f64 {
    let steps = (grid.max(2) - 1) as f64;
    let slope = |h: f64| (1.0 + h) / (2.0 * core::f64::consts::LN_2);
    ch.pmax_1 / steps * slope(ch.h_1) + ch.pmax_2 / steps * slope(ch.h_2)
}

pub(crate) fn jamming_rate_unchecked(ch: &StandardGtwChannel, p: PowerPoint) -> f64 {
    half_log2_1p(p.p_1) - half_log2_1p(ch.h_1 * p.p_1 / (1.0 + ch.h_2 * p.p_2))
}

/// User 1's secrecy rate while user 2 transmits Gaussian noise at `p_2`:
/// `g(P_1) - g(h_1 P_1 / (1 + h_2 P_2))`, unclamped.
pub fn jamming_rate(ch: &StandardGtwChannel, p: PowerPoint) -> Result<f64> {
    p.check_in(ch)?;
    Ok(jamming_rate_unchecked(ch, p))
}

/// Cooperative jamming allocation: both at full power if jamming can push
/// user 1 below single-user decodability, otherwise silence.
pub fn optimal_jamming(ch: &StandardGtwChannel) -> PowerAllocation {
    if ch.h_1 < 1.0 + ch.h_2 * ch.pmax_2 {
        let p = PowerPoint::max_of(ch);
        PowerAllocation {
            p,
            case_label: CaseLabel::JamBothMax,
            objective_value: pos_part(jamming_rate_unchecked(ch, p)),
        }
    } else {
        PowerAllocation {
            p: PowerPoint::ZERO,
            case_label: CaseLabel::JamBothZero,
            objective_value: 0.0,
        }
    }
}

/// Lattice maximization of the clamped jamming rate, with the same lattice
/// and tie-break order as [`optimal_power_oracle`].
pub fn optimal_jamming_oracle(ch: &StandardGtwChannel, grid: usize) -> Result<PowerAllocation> {
    if grid < 2 {
        return Err(Error::InvalidParameter {
            field: "grid",
            value: grid as f64,
            reason: "oracle lattice needs at least 2 points per axis",
        });
    }
    let mut best = PowerPoint::ZERO;
    let mut best_rate = 0.0;
    for i in 0..grid {
        let p_1 = lattice(ch.pmax_1, i, grid);
        for j in 0..grid {
            let p = PowerPoint::new(p_1, lattice(ch.pmax_2, j, grid));
            let r = pos_part(jamming_rate_unchecked(ch, p));
            if r > best_rate {
                best_rate = r;
                best = p;
            }
        }
    }
    let case_label = if best == PowerPoint::ZERO {
        CaseLabel::JamBothZero
    } else if best == PowerPoint::max_of(ch) {
        CaseLabel::JamBothMax
    } else {
        CaseLabel::Interior
    };
    Ok(PowerAllocation {
        p: best,
        case_label,
        objective_value: best_rate,
    })
}

/// Lattice resolution bound for [`optimal_jamming_oracle`]. The jamming rate
/// moves by at most `(1 + h_1) / (2 ln 2)` per unit of `P_1` and
/// `h_1 h_2 pmax_1 / (2 ln 2)` per unit of `P_2`.
pub fn jamming_oracle_gap_bound(ch: &StandardGtwChannel, grid: usize) -> f64 {
    let steps = (grid.max(2) - 1) as f64;
    let k = 2.0 * core::f64::consts::LN_2;
    ch.pmax_1 / steps * (1.0 + ch.h_1) / k + ch.pmax_2 / steps * ch.h_1 * ch.h_2 * ch.pmax_1 / k
}

/// Should user 2 jam or transmit? Reported only, never applied.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct JammingAdvice {
    pub sum_rate_objective: f64,
    /// User 1's rate under jamming; user 2 carries no rate.
    pub jamming_objective: f64,
    pub jamming_preferred: bool,
    /// `h_2 >= 1 + h_1 pmax_1`.
    pub user2_single_user_decodable: bool,
}

pub fn jamming_advice(ch: &StandardGtwChannel) -> JammingAdvice {
    let sum_rate_objective = optimal_power(ch).objective_value;
    let jamming_objective = optimal_jamming(ch).objective_value;
    JammingAdvice {
        sum_rate_objective,
        jamming_objective,
        jamming_preferred: jamming_objective > sum_rate_objective,
        user2_single_user_decodable: ch.h_2 >= 1.0 + ch.h_1 * ch.pmax_1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct BatwJamming {
    /// The user with the cleaner receiver, who sends while the other jams.
    pub sender: User,
    pub rate: f64,
    /// The sum bound of the plain binary region is zero.
    pub jamming_needed: bool,
}

/// Binary jamming: one user sends fair random bits, which turns the
/// eavesdropper's view into pure noise, while the partner strips them off.
pub fn batw_jamming(ch: &BatwChannel) -> Result<BatwJamming> {
    let ch = validate_batw(*ch)?;
    let h_1 = bin_entropy(ch.eps_1)?;
    let h_2 = bin_entropy(ch.eps_2)?;
    let h_w = bin_entropy(ch.eps_w)?;
    let (sender, eps) = if ch.eps_1 <= ch.eps_2 {
        (User::One, ch.eps_1)
    } else {
        (User::Two, ch.eps_2)
    };
    Ok(BatwJamming {
        sender,
        rate: 1.0 - bin_entropy(eps)?,
        jamming_needed: h_1 + h_2 >= 1.0 + h_w,
    })
}
