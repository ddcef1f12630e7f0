use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twwt_core::*;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

/// `max * j / n` with the endpoint kept exact.
fn frac(max: f64, j: usize, n: usize) -> f64 {
    if j == n {
        max
    } else {
        max * j as f64 / n as f64
    }
}

fn raw_channel() -> impl Strategy<Value = RawGtwChannel> {
    (
        (0.01f64..10.0, 0.01f64..10.0, 0.0f64..10.0, 0.0f64..10.0),
        (0.01f64..10.0, 0.01f64..10.0, 0.01f64..10.0),
        (0.0f64..10.0, 0.0f64..10.0),
    )
        .prop_map(|((m1, m2, w1, w2), (s1, s2, sw), (p1, p2))| RawGtwChannel {
            gain_main_1: m1,
            gain_main_2: m2,
            gain_tap_1: w1,
            gain_tap_2: w2,
            noise_var_1: s1,
            noise_var_2: s2,
            noise_var_tap: sw,
            pmax_1: p1,
            pmax_2: p2,
        })
}

fn std_channel() -> impl Strategy<Value = StandardGtwChannel> {
    (0.0f64..10.0, 0.0f64..10.0, 0.0f64..10.0, 0.0f64..10.0)
        .prop_map(|(p1, p2, h1, h2)| StandardGtwChannel::new(p1, p2, h1, h2).unwrap())
}

fn channel_and_point() -> impl Strategy<Value = (StandardGtwChannel, PowerPoint)> {
    (std_channel(), 0.0f64..=1.0, 0.0f64..=1.0).prop_map(|(ch, a, b)| {
        let p = PowerPoint::new(a * ch.pmax_1, b * ch.pmax_2);
        (ch, p)
    })
}

proptest! {
    #[test]
    fn standardize_is_scale_consistent(raw in raw_channel(), c in 0.01f64..100.0) {
        let a = standardize(&raw).unwrap();
        let scaled = RawGtwChannel {
            gain_main_1: raw.gain_main_1 * c,
            gain_main_2: raw.gain_main_2 * c,
            gain_tap_1: raw.gain_tap_1 * c,
            gain_tap_2: raw.gain_tap_2 * c,
            noise_var_1: raw.noise_var_1 * c,
            noise_var_2: raw.noise_var_2 * c,
            noise_var_tap: raw.noise_var_tap * c,
            ..raw
        };
        let b = standardize(&scaled).unwrap();
        let rel = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs());
        prop_assert!(rel(a.pmax_1, b.pmax_1) && rel(a.pmax_2, b.pmax_2));
        prop_assert!(rel(a.h_1, b.h_1) && rel(a.h_2, b.h_2));
        prop_assert!(a.validate().is_ok());
    }

    #[test]
    fn region_vertices_satisfy_bounds((ch, p) in channel_and_point()) {
        let region = gtw_region_at_power(&ch, p).unwrap();
        let c_1 = gauss_cap(p.p_1).unwrap();
        let c_2 = gauss_cap(p.p_2).unwrap();
        let s = pos_part(sum_rate(&ch, p).unwrap());
        prop_assert_eq!(region.vertices()[0], RatePair::ORIGIN);
        for v in region.vertices() {
            prop_assert!(v.r_1 >= 0.0 && v.r_2 >= 0.0);
            prop_assert!(v.r_1 <= c_1 + 1e-9 && v.r_2 <= c_2 + 1e-9);
            prop_assert!(v.r_1 + v.r_2 <= s + 1e-9);
        }
    }

    #[test]
    fn stronger_eavesdropper_never_helps((ch, p) in channel_and_point(), dh1 in 0.0f64..5.0, dh2 in 0.0f64..5.0) {
        let worse = StandardGtwChannel { h_1: ch.h_1 + dh1, h_2: ch.h_2 + dh2, ..ch };
        let base = gtw_region_at_power(&ch, p).unwrap();
        let shrunk = gtw_region_at_power(&worse, p).unwrap();
        prop_assert!(base.contains_region(&shrunk, 1e-9));
    }

    #[test]
    fn cleaner_tap_never_helps(e1 in 0.0f64..0.49, e2 in 0.0f64..0.49, ew in 0.0f64..=0.5, d in 0.0f64..0.5) {
        let noisy = BatwChannel::new(e1, e2, ew).unwrap();
        let clean = BatwChannel::new(e1, e2, (ew - d).max(0.0)).unwrap();
        let big = batw_region(&noisy).unwrap();
        let small = batw_region(&clean).unwrap();
        prop_assert!(big.contains_region(&small, 1e-9));
    }

    #[test]
    fn equal_crossovers_sum_bound(e in 0.0f64..0.49) {
        let region = batw_region(&BatwChannel::new(e, e, e).unwrap()).unwrap();
        let expect = pos_part(1.0 - bin_entropy(e).unwrap());
        let max_sum = region.vertices().iter().map(|v| v.r_1 + v.r_2).fold(0.0, f64::max);
        prop_assert!((max_sum - expect).abs() < 1e-12);
    }

    #[test]
    fn jamming_identity((ch, p) in channel_and_point()) {
        let direct = jamming_rate(&ch, p).unwrap();
        let via_rho = -0.5 * (rho(&ch, p) / phi2(&ch, p.p_2)).log2();
        prop_assert!(close(direct, via_rho, 1e-12), "{} vs {}", direct, via_rho);
    }

    #[test]
    fn rho_dot_sign_matches_phi((ch, p) in channel_and_point()) {
        for (j, h) in [(User::One, ch.h_1), (User::Two, ch.h_2)] {
            let d = rho_dot(&ch, p, j);
            let gap = h - phi(&ch, p, j);
            prop_assert_eq!(d.signum() == gap.signum() || d == 0.0 && gap == 0.0, true);
        }
    }

    #[test]
    fn closure_refines_monotonically(ch in std_channel()) {
        let coarse = gtw_region_closure(&ch, 2).unwrap();
        let fine = gtw_region_closure(&ch, 24).unwrap();
        prop_assert!(fine.contains_region(&coarse, 1e-9));
        let corner = gtw_region_at_power(&ch, PowerPoint::max_of(&ch)).unwrap();
        prop_assert!(fine.contains_region(&corner, 1e-9));
    }
}

#[test]
fn sum_rate_matches_half_log_rho() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let ch = StandardGtwChannel::new(
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
        )
        .unwrap();
        let p = PowerPoint::new(
            ch.pmax_1 * rng.random::<f64>(),
            ch.pmax_2 * rng.random::<f64>(),
        );
        let direct = sum_rate(&ch, p).unwrap();
        let via_rho = -0.5 * rho(&ch, p).log2();
        assert!(close(direct, via_rho, 1e-12), "{direct} vs {via_rho}");
    }
}

#[test]
fn jamming_rate_grows_with_jammer_power() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let ch = StandardGtwChannel::new(
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(1.0..10.0),
            rng.random_range(0.0..10.0),
        )
        .unwrap();
        let p_1 = ch.pmax_1 * rng.random::<f64>();
        let mut last = f64::NEG_INFINITY;
        for j in 0..=50 {
            let p_2 = frac(ch.pmax_2, j, 50);
            let r = jamming_rate(&ch, PowerPoint::new(p_1, p_2)).unwrap();
            assert!(r >= last - 1e-15);
            last = r;
        }
    }
}

#[test]
fn closed_form_jamming_matches_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let ch = StandardGtwChannel::new(
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
        )
        .unwrap();
        let closed = optimal_jamming(&ch).objective_value;
        let mut best: f64 = 0.0;
        for i in 0..=60 {
            for j in 0..=60 {
                let p = PowerPoint::new(frac(ch.pmax_1, i, 60), frac(ch.pmax_2, j, 60));
                best = best.max(jamming_rate(&ch, p).unwrap());
            }
        }
        assert!(
            closed >= best - 1e-12,
            "{ch:?}: closed {closed} < grid {best}"
        );
    }
}

#[test]
fn jamming_versus_transmitting_at_full_power() {
    // At full power the sum-rate minus the jamming rate is
    // 0.5 log2((1 + P_2) / (1 + h_2 P_2)): jamming wins exactly when h_2 > 1,
    // whether or not user 2 is single-user decodable.
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut checked = 0;
    for _ in 0..2_000 {
        let ch = StandardGtwChannel::new(
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
        )
        .unwrap();
        let full = PowerPoint::max_of(&ch);
        let gap = sum_rate(&ch, full).unwrap() - jamming_rate(&ch, full).unwrap();
        let expect = 0.5 * ((1.0 + ch.pmax_2) / (1.0 + ch.h_2 * ch.pmax_2)).log2();
        assert!((gap - expect).abs() < 1e-12);
        let adv = jamming_advice(&ch);
        if optimal_power(&ch).case_label == CaseLabel::BothMax && adv.sum_rate_objective > 0.0 {
            checked += 1;
            assert_eq!(adv.jamming_preferred, ch.h_2 > 1.0, "{ch:?}: {adv:?}");
        }
    }
    assert!(checked > 50);
}

#[test]
fn symmetric_gain_sum_rate_tracks_half_power_capacity() {
    let ch = StandardGtwChannel::new(1e4, 1e4, 1.0, 1.0).unwrap();
    let ratio = sum_rate(&ch, PowerPoint::new(1e4, 1e4)).unwrap() / gauss_cap(5e3).unwrap();
    // mpmath: 0.99999413097986
    assert!((ratio - 0.999994130979863).abs() < 1e-9);
}
