//! Andrew's monotone chain convex hull over rate pairs.
//!
//! Points are sorted lexicographically by `(r_1, r_2)`; the lower chain is
//! built left to right and the upper chain right to left. Collinear and
//! coincident points are dropped, so the output is the minimal vertex list,
//! counterclockwise, starting at the lexicographically smallest point.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::region::RatePair;

/// Points closer than this in both coordinates are merged.
pub const DEDUP_TOL: f64 = 1e-12;

/// Turns with a cross product at or below this are treated as straight.
const COLLINEAR_TOL: f64 = 1e-14;

fn cross(o: RatePair, a: RatePair, b: RatePair) -> f64 {
    (a.r_1 - o.r_1) * (b.r_2 - o.r_2) - (a.r_2 - o.r_2) * (b.r_1 - o.r_1)
}

fn lex(a: &RatePair, b: &RatePair) -> Ordering {
    a.r_1.total_cmp(&b.r_1).then(a.r_2.total_cmp(&b.r_2))
}

fn near(a: RatePair, b: RatePair) -> bool {
    (a.r_1 - b.r_1).abs() <= DEDUP_TOL && (a.r_2 - b.r_2).abs() <= DEDUP_TOL
}

pub fn monotone_chain(points: &[RatePair]) -> Vec<RatePair> {
    let mut pts: Vec<RatePair> = points.to_vec();
    pts.sort_unstable_by(lex);
    pts.dedup_by(|b, a| near(*a, *b));
    if pts.len() <= 2 {
        return pts;
    }

    let mut hull: Vec<RatePair> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= COLLINEAR_TOL
        {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= COLLINEAR_TOL
        {
            hull.pop();
        }
        hull.push(p);
    }
    // the first point closes the upper chain
    hull.pop();
    hull
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(r_1: f64, r_2: f64) -> RatePair {
        RatePair { r_1, r_2 }
    }

    #[test]
    fn square_grid() {
        let mut pts = Vec::new();
        for i in 0..10 {
            for j in 0..10 {
                pts.push(p(i as f64, j as f64));
            }
        }
        let hull = monotone_chain(&pts);
        assert_eq!(hull, vec![p(0., 0.), p(9., 0.), p(9., 9.), p(0., 9.)]);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(monotone_chain(&[p(0., 0.), p(0., 0.)]), vec![p(0., 0.)]);
        assert_eq!(
            monotone_chain(&[p(0., 0.), p(1., 1.), p(2., 2.), p(0.5, 0.5)]),
            vec![p(0., 0.), p(2., 2.)]
        );
        assert!(monotone_chain(&[]).is_empty());
    }

    #[test]
    fn drops_near_duplicates() {
        let hull = monotone_chain(&[p(0., 0.), p(1., 0.), p(1., 1e-13), p(0., 1.), p(1e-13, 1.)]);
        assert_eq!(hull.len(), 3);
    }
}
