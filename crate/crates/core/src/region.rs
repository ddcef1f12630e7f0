//! Achievable secrecy-rate regions.
//!
//! For a fixed power allocation the Gaussian region is
//!
//! ```text
//! R_k <= g(P_k),   R_1 + R_2 <= [g(P_1) + g(P_2) - g(h_1 P_1 + h_2 P_2)]^+
//! ```
//!
//! and the binary region has the same shape with `C_k = 1 - h(eps_k)` and
//! sum bound `[1 + h(eps_w) - h(eps_1) - h(eps_2)]^+`. Time-sharing over all
//! allocations gives the convex closure computed by [`gtw_region_closure`].

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::channel::{validate_batw, BatwChannel, StandardGtwChannel};
use crate::error::{Error, Result};
use crate::hull::monotone_chain;
use crate::measures::{bin_entropy, half_log2_1p, pos_part};

/// A pair of secret rates in bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RatePair {
    pub r_1: f64,
    pub r_2: f64,
}

impl RatePair {
    pub const ORIGIN: RatePair = RatePair { r_1: 0.0, r_2: 0.0 };

    pub fn new(r_1: f64, r_2: f64) -> Self {
        RatePair { r_1, r_2 }
    }
}

/// Transmit powers in standardized SNR units.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct PowerPoint {
    pub p_1: f64,
    pub p_2: f64,
}

impl PowerPoint {
    pub const ZERO: PowerPoint = PowerPoint { p_1: 0.0, p_2: 0.0 };

    pub fn new(p_1: f64, p_2: f64) -> Self {
        PowerPoint { p_1, p_2 }
    }

    pub fn max_of(ch: &StandardGtwChannel) -> Self {
        PowerPoint::new(ch.pmax_1, ch.pmax_2)
    }

    /// Fails unless `0 <= p_k <= pmax_k` for both users.
    pub fn check_in(&self, ch: &StandardGtwChannel) -> Result<()> {
        let inside = |p: f64, pmax: f64| (0.0..=pmax).contains(&p);
        if inside(self.p_1, ch.pmax_1) && inside(self.p_2, ch.pmax_2) {
            Ok(())
        } else {
            Err(Error::PowerOutOfBox {
                p_1: self.p_1,
                p_2: self.p_2,
            })
        }
    }

    pub(crate) fn swapped(&self) -> Self {
        PowerPoint::new(self.p_2, self.p_1)
    }
}

/// Polygon classes a region can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionShape {
    Point,
    /// Only reachable when one individual bound is zero.
    Segment,
    Triangle,
    Quadrilateral,
    Rectangle,
    Pentagon,
    /// More than five vertices; only convex closures end up here.
    Polygon,
}

/// A convex polygon in the first quadrant containing the origin, stored as
/// its counterclockwise vertex list starting at `(0, 0)`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize))]
pub struct RegionPolytope {
    vertices: Vec<RatePair>,
}

impl RegionPolytope {
    /// The region `{R_1 <= c_1, R_2 <= c_2, R_1 + R_2 <= s}` in the first
    /// quadrant. Negative inputs are clamped to zero.
    pub fn from_bounds(c_1: f64, c_2: f64, s: f64) -> Self {
        let s = pos_part(s);
        let a = pos_part(c_1).min(s);
        let b = pos_part(c_2).min(s);
        let candidates = [
            RatePair::ORIGIN,
            RatePair::new(a, 0.0),
            RatePair::new(a, b.min(s - a)),
            RatePair::new(a.min(s - b), b),
            RatePair::new(0.0, b),
        ];
        RegionPolytope::hull_of(&candidates)
    }

    /// Convex hull of the given points together with the origin.
    pub fn hull_of(points: &[RatePair]) -> Self {
        let mut pts = Vec::with_capacity(points.len() + 1);
        pts.push(RatePair::ORIGIN);
        pts.extend_from_slice(points);
        RegionPolytope {
            vertices: monotone_chain(&pts),
        }
    }

    pub fn vertices(&self) -> &[RatePair] {
        &self.vertices
    }

    pub fn shape(&self) -> RegionShape {
        match self.vertices.len() {
            0 | 1 => RegionShape::Point,
            2 => RegionShape::Segment,
            3 => RegionShape::Triangle,
            4 => {
                let v = &self.vertices;
                let axis_aligned = v[1].r_2 == 0.0
                    && v[1].r_1 == v[2].r_1
                    && v[2].r_2 == v[3].r_2
                    && v[3].r_1 == 0.0;
                if axis_aligned {
                    RegionShape::Rectangle
                } else {
                    RegionShape::Quadrilateral
                }
            }
            5 => RegionShape::Pentagon,
            _ => RegionShape::Polygon,
        }
    }

    /// Every vertex of `other` lies in `self` within `tol`.
    pub fn contains_region(&self, other: &RegionPolytope, tol: f64) -> bool {
        other.vertices.iter().all(|&v| contains(self, v, tol))
    }
}

/// Whether `r` lies inside `region` or within `tol` of its boundary.
pub fn contains(region: &RegionPolytope, r: RatePair, tol: f64) -> bool {
    let v = region.vertices();
    match v.len() {
        0 => false,
        1 => libm::hypot(r.r_1 - v[0].r_1, r.r_2 - v[0].r_2) <= tol,
        2 => segment_distance(v[0], v[1], r) <= tol,
        n => (0..n).all(|i| {
            let a = v[i];
            let b = v[(i + 1) % n];
            let (ex, ey) = (b.r_1 - a.r_1, b.r_2 - a.r_2);
            let cross = ex * (r.r_2 - a.r_2) - ey * (r.r_1 - a.r_1);
            cross >= -tol * libm::hypot(ex, ey)
        }),
    }
}

fn segment_distance(a: RatePair, b: RatePair, r: RatePair) -> f64 {
    let (ex, ey) = (b.r_1 - a.r_1, b.r_2 - a.r_2);
    let len2 = ex * ex + ey * ey;
    let t = if len2 > 0.0 {
        (((r.r_1 - a.r_1) * ex + (r.r_2 - a.r_2) * ey) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    libm::hypot(r.r_1 - (a.r_1 + t * ex), r.r_2 - (a.r_2 + t * ey))
}

/// `rho(P) = (1 + h_1 P_1 + h_2 P_2) / ((1 + P_1)(1 + P_2))`.
///
/// Minimizing `rho` over the power box is equivalent to maximizing the
/// secrecy sum-rate, which equals `-0.5 log2 rho`.
pub fn rho(ch: &StandardGtwChannel, p: PowerPoint) -> f64 {
    (1.0 + ch.h_1 * p.p_1 + ch.h_2 * p.p_2) / ((1.0 + p.p_1) * (1.0 + p.p_2))
}

pub(crate) fn sum_rate_unchecked(ch: &StandardGtwChannel, p: PowerPoint) -> f64 {
    half_log2_1p(p.p_1) + half_log2_1p(p.p_2) - half_log2_1p(ch.h_1 * p.p_1 + ch.h_2 * p.p_2)
}

/// Unclamped secrecy sum-rate `g(P_1) + g(P_2) - g(h_1 P_1 + h_2 P_2)`.
pub fn sum_rate(ch: &StandardGtwChannel, p: PowerPoint) -> Result<f64> {
    p.check_in(ch)?;
    Ok(sum_rate_unchecked(ch, p))
}

pub(crate) fn region_at_power_unchecked(ch: &StandardGtwChannel, p: PowerPoint) -> RegionPolytope {
    RegionPolytope::from_bounds(
        half_log2_1p(p.p_1),
        half_log2_1p(p.p_2),
        sum_rate_unchecked(ch, p),
    )
}

/// Gaussian secrecy region for a fixed power allocation.
pub fn gtw_region_at_power(ch: &StandardGtwChannel, p: PowerPoint) -> Result<RegionPolytope> {
    p.check_in(ch)?;
    Ok(region_at_power_unchecked(ch, p))
}

/// Binary additive secrecy region.
pub fn batw_region(ch: &BatwChannel) -> Result<RegionPolytope> {
    let ch = validate_batw(*ch)?;
    let h_1 = bin_entropy(ch.eps_1)?;
    let h_2 = bin_entropy(ch.eps_2)?;
    let h_w = bin_entropy(ch.eps_w)?;
    Ok(RegionPolytope::from_bounds(
        1.0 - h_1,
        1.0 - h_2,
        1.0 + h_w - h_1 - h_2,
    ))
}

/// Lattice coordinate `i` of `grid` points spanning `[0, max]`, with both
/// endpoints exact.
pub(crate) fn lattice(max: f64, i: usize, grid: usize) -> f64 {
    if i + 1 == grid {
        max
    } else {
        max * i as f64 / (grid - 1) as f64
    }
}

/// Convex closure of the per-allocation regions over a `grid x grid`
/// uniform lattice on the power box.
pub fn gtw_region_closure(ch: &StandardGtwChannel, grid: usize) -> Result<RegionPolytope> {
    ch.validate()?;
    if grid < 2 {
        return Err(Error::InvalidParameter {
            field: "grid",
            value: grid as f64,
            reason: "closure lattice needs at least 2 points per axis",
        });
    }
    let mut cloud = Vec::with_capacity(grid * grid * 5);
    for i in 0..grid {
        let p_1 = lattice(ch.pmax_1, i, grid);
        for j in 0..grid {
            let p = PowerPoint::new(p_1, lattice(ch.pmax_2, j, grid));
            cloud.extend_from_slice(region_at_power_unchecked(ch, p).vertices());
        }
    }
    Ok(RegionPolytope::hull_of(&cloud))
}
