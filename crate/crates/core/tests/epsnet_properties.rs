mod common;

use common::slow_is_epsnet;
use hcover::epsnet::{build_bbt, build_epsnet, loglog2, sample_first_level, secondary_net, NetConfig};
use hcover::exact::verify_epsnet;
use hcover::experiments::C_SIZE;
use hcover::generate::{clustered_points, staircase, uniform_points};
use hcover::{Error, Point};
use proptest::prelude::*;

#[test]
fn tree_shape_fixture() {
    let tree = build_bbt(&uniform_points(1000, 1), 20.0).unwrap();
    assert_eq!(tree.levels(), 6);
    assert_eq!(tree.leaves().count(), 32);
    for leaf in tree.leaves() {
        assert!((25..=50).contains(&leaf.len()));
        assert!((31..=32).contains(&leaf.len()));
    }
}

#[test]
fn tree_rejects_shared_x() {
    let pts = vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 2.0)];
    assert!(matches!(build_bbt(&pts, 1.0), Err(Error::DegenerateInput(_))));
}

#[test]
fn first_level_sample_fixture() {
    let r = sample_first_level(100, 10.0, 7);
    assert_eq!(r, vec![6, 17, 22, 23, 27, 37, 47, 59, 79, 80, 87]);
}

#[test]
fn first_level_sample_concentrates() {
    let seeds = 10_000u64;
    let total: usize = (0..seeds).map(|seed| sample_first_level(1000, 50.0, seed).len()).sum();
    let mean = total as f64 / seeds as f64;
    // Binomial(1000, 0.05): variance 47.5.
    assert!((mean - 50.0).abs() <= 5.0 * (47.5 / seeds as f64).sqrt(), "mean {mean}");
}

#[test]
fn secondary_net_fixture() {
    let pts = uniform_points(200, 3);
    let local: Vec<usize> = (0..200).collect();
    let (net, attempts) = secondary_net(&pts, &local, 8.0, &NetConfig::new(0.1, 3), 3).unwrap();
    assert_eq!(net.len(), 96);
    assert_eq!(attempts, 1);
    assert_eq!(net.iter().sum::<usize>(), 9187);
    assert!(verify_epsnet(&pts, 1.0 / 8.0, &net).unwrap().ok);
}

#[test]
fn secondary_net_small_cases() {
    let pts = uniform_points(10, 1);
    let cfg = NetConfig::new(0.1, 1);
    let (all, attempts) = secondary_net(&pts, &[1, 4, 7], 8.0, &cfg, 0).unwrap();
    assert_eq!((all, attempts), (vec![1, 4, 7], 0));
    let (one, _) = secondary_net(&pts, &(0..10).collect::<Vec<_>>(), 1.0, &cfg, 0).unwrap();
    assert_eq!(one.len(), 1);
}

#[test]
fn uniform_build_fixture() {
    let pts = uniform_points(2000, 11);
    let cfg = NetConfig::new(0.1, 11);
    let res = build_epsnet(&pts, &cfg).unwrap();
    assert_eq!(res.net.len(), 820);
    assert!(verify_epsnet(&pts, cfg.eps, &res.net).unwrap().ok);
    assert!(res.net.len() as f64 <= C_SIZE * cfg.r() * loglog2(cfg.r()));
}

#[test]
fn staircase_and_clusters_are_netted() {
    let cfg = NetConfig::new(0.1, 4);
    for pts in [staircase(1000), clustered_points(2000, 5, 4)] {
        let res = build_epsnet(&pts, &cfg).unwrap();
        assert!(verify_epsnet(&pts, cfg.eps, &res.net).unwrap().ok);
    }
}

#[test]
fn degenerate_input_is_rejected() {
    let mut pts = uniform_points(100, 2);
    pts[5].x = pts[9].x;
    assert!(matches!(build_epsnet(&pts, &NetConfig::new(0.2, 0)), Err(Error::DegenerateInput(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn build_invariants(n in 20usize..160, inv_eps in 2u32..10, seed in any::<u64>()) {
        let eps = 1.0 / inv_eps as f64;
        let cfg = NetConfig::new(eps, seed);
        let pts = uniform_points(n, seed);
        let Ok(res) = build_epsnet(&pts, &cfg) else {
            prop_assert!((n as f64) < 2.0 * cfg.r());
            return Ok(());
        };

        // The net is an ε-net, by both checkers.
        prop_assert!(verify_epsnet(&pts, eps, &res.net).unwrap().ok);
        prop_assert!(slow_is_epsnet(&pts, eps, &res.net));

        // Children split the parent's strip and points.
        for v in &res.tree.nodes {
            if let Some((a, b)) = v.children {
                let (ca, cb) = (&res.tree.nodes[a], &res.tree.nodes[b]);
                prop_assert_eq!(ca.range.0, v.range.0);
                prop_assert_eq!(ca.range.1, cb.range.0);
                prop_assert_eq!(cb.range.1, v.range.1);
                prop_assert_eq!(ca.strip.x_lo, v.strip.x_lo);
                prop_assert_eq!(ca.strip.x_hi, cb.strip.x_lo);
                prop_assert_eq!(cb.strip.x_hi, v.strip.x_hi);
                prop_assert_eq!(ca.level, v.level + 1);
            }
            for &i in res.tree.members(v) {
                prop_assert!(v.strip.x_lo < pts[i].x && pts[i].x < v.strip.x_hi);
            }
        }

        // Each sample point is seen once per level until its leaf.
        let in_r = |i: usize| res.first_level.binary_search(&i).is_ok();
        for (level, count) in res.samples_per_level().into_iter().enumerate() {
            let settled: usize = res.tree.leaves()
                .filter(|v| (v.level as usize) < level)
                .map(|v| res.tree.members(v).iter().filter(|&&i| in_r(i)).count())
                .sum();
            prop_assert_eq!(count + settled, res.first_level.len());
        }

        // Each anchored node carries 2 r_v + 1 rectangles defined by sample points.
        for v in res.tree.nodes.iter().filter(|v| v.entry.is_some()) {
            let r_v = res.tree.members(v).iter().filter(|&&i| in_r(i)).count();
            let here: Vec<_> = res.rects.iter().filter(|m| m.node == v.id).collect();
            prop_assert_eq!(here.len(), 2 * r_v + 1);
            for m in here {
                prop_assert!(m.defining.iter().all(|&i| in_r(i)));
                prop_assert!(res.first_level.iter().all(|&i| !m.rect.contains_interior(pts[i])));
                prop_assert_eq!(m.kept, !m.secondary.is_empty());
                prop_assert!(m.secondary.iter().all(|&i| m.rect.contains_interior(pts[i])));
            }
        }
        prop_assert!(res.tree.nodes[0].entry.is_none());
        prop_assert!(res.rects.iter().all(|m| m.node != 0));

        prop_assert_eq!(build_epsnet(&pts, &cfg).unwrap(), res);
    }
}
