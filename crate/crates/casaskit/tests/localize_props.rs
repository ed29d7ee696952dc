//! Seeded properties of the identity and inequality layer.

mod common;

use casaskit::localize::{
    ca_mth_bound, common_root_interval, derivative_root_interval, extremal_stats, gap_bounds,
    laguerre_interval, lemma7_bounds, lemma9_bounds, span_lower_bound, sz_nagy_residuals,
    Backend, NumericConfig,
};
use casaskit::polycore::{
    centroid_data, pairwise_square_sum, power_sums, root_multiset, GaussianRational,
    RootFindConfig,
};

fn cfgs() -> (RootFindConfig, NumericConfig) {
    (RootFindConfig::default(), NumericConfig::default())
}

#[test]
fn exact_residuals_vanish_on_seeded_corpus() {
    let mut rng = common::rng(0x11235);
    let (cfg, _) = cfgs();
    for i in 0..60 {
        let n = 2 + (i % 7);
        let (poly, _) = common::rational_rooted(&mut rng, n);
        for _ in 0..3 {
            let z = GaussianRational::from_rational(common::small_rational(&mut rng));
            for m in 0..=(n - 2) {
                let reports = sz_nagy_residuals(&poly, &z, m, Backend::Exact, &cfg).unwrap();
                for rep in &reports {
                    assert!(
                        rep.residual.as_ref().unwrap().is_exact_zero(),
                        "sample {} m={} z={} {:?}",
                        i,
                        m,
                        z,
                        rep
                    );
                }
            }
        }
    }
}

#[test]
fn numeric_backend_agrees_with_exact() {
    let mut rng = common::rng(0x31415);
    let (cfg, _) = cfgs();
    for i in 0..20 {
        let n = 2 + (i % 6);
        let (poly, _) = common::rational_rooted(&mut rng, n);
        let z = GaussianRational::from_rational(common::small_rational(&mut rng));
        for m in 0..=(n - 2) {
            let reports = sz_nagy_residuals(&poly, &z, m, Backend::Numeric, &cfg).unwrap();
            for rep in &reports {
                // exact residual is zero, so numeric magnitude is the error
                let mag = rep.residual.as_ref().unwrap().magnitude();
                let scale = 1.0 + z.abs_upper().powi(2) * (n as f64);
                assert!(
                    mag <= 1e-9 * scale * 100.0,
                    "sample {} m={}: |residual| = {:e}",
                    i,
                    m,
                    mag
                );
            }
        }
    }
}

#[test]
fn pairwise_sum_cross_checks_gap() {
    let mut rng = common::rng(0x92653);
    for i in 0..80 {
        let n = 2 + (i % 9);
        let (poly, _) = common::rational_rooted(&mut rng, n);
        let cd = centroid_data(&poly).unwrap();
        let ps = power_sums(&poly, 2);
        let lhs = &GaussianRational::from_i64((n * n * (n - 1)) as i64) * &cd.gap_squared;
        assert_eq!(lhs, pairwise_square_sum(&ps), "sample {}", i);
    }
}

#[test]
fn centroid_distance_monotonicity() {
    let mut rng = common::rng(0x58979);
    let (cfg, _) = cfgs();
    for i in 0..25 {
        let n = 3 + (i % 6);
        let (poly, _) = common::rational_rooted(&mut rng, n);
        let mut prev_d = f64::INFINITY;
        let mut prev_span = f64::INFINITY;
        for m in 1..n {
            let st = extremal_stats(&poly, m, &cfg).unwrap();
            let d = st.max_distance_m.unwrap();
            let s = st.span_m.unwrap();
            assert!(d <= prev_d + 1e-9, "sample {} m={}: distance grew", i, m);
            assert!(s <= prev_span + 1e-9, "sample {} m={}: span grew", i, m);
            prev_d = d;
            prev_span = s;
        }
        // the order-0 maximum dominates the whole derivative chain
        if let Some(d0) = extremal_stats(&poly, 1, &cfg).unwrap().max_distance {
            assert!(prev_d <= d0 + 1e-9);
        }
    }
}

#[test]
fn gap_and_interval_bounds_hold_on_seeded_corpus() {
    let mut rng = common::rng(0x23846);
    let (cfg, num) = cfgs();
    for i in 0..40 {
        let n = 3 + (i % 6);
        let (poly, _) = common::rational_rooted(&mut rng, n);
        let ms = root_multiset(&poly, &cfg).unwrap();
        if ms.k() < 2 {
            continue;
        }
        for m in 1..=(n - 2) {
            for rep in gap_bounds(&poly, m, &cfg, &num).unwrap() {
                assert!(rep.hypothesis_ok && rep.holds, "sample {} m={} {:?}", i, m, rep);
            }
        }
        for j in 0..ms.k() {
            let rj = ms.entries()[j].multiplicity;
            for m in 0..rj {
                let rep = laguerre_interval(&poly, j, m, &cfg, &num).unwrap();
                assert!(rep.holds, "sample {} root {} m={} {:?}", i, j, m, rep);
            }
        }
        for m in 0..=(n - 2) {
            let rep = derivative_root_interval(&poly, m, &cfg, &num).unwrap();
            assert!(rep.holds, "sample {} m={} {:?}", i, m, rep);
        }
    }
}

#[test]
fn centroid_root_bounds_hold_on_constructed_corpus() {
    let mut rng = common::rng(0x26433);
    let (cfg, num) = cfgs();
    let mut produced = 0;
    let mut attempts = 0;
    while produced < 40 && attempts < 4000 {
        attempts += 1;
        let n = 4 + (attempts % 5);
        let poly = match common::centroid_root_poly(&mut rng, n) {
            Some(p) => p,
            None => continue,
        };
        produced += 1;
        let ms = root_multiset(&poly, &cfg).unwrap();
        for s in 0..ms.k().saturating_sub(1) {
            let rep = common_root_interval(&poly, s, &cfg, &num).unwrap();
            assert!(rep.hypothesis_ok, "{:?}", rep);
            assert!(rep.holds, "{} s={} {:?}", poly, s, rep);
        }
    }
    assert!(produced >= 40, "generator yielded only {}", produced);
}

#[test]
fn shared_derivative_bound_holds_on_fixtures() {
    let (cfg, num) = cfgs();
    for (roots, m) in common::SHARED_DERIVATIVE_INSTANCES {
        let poly = common::int_poly(roots);
        let rep = ca_mth_bound(&poly, *m, &cfg, &num).unwrap();
        assert!(rep.hypothesis_ok, "{:?} m={} gated: {:?}", roots, m, rep);
        assert!(rep.holds, "{:?} m={} {:?}", roots, m, rep);
    }
}

#[test]
fn penultimate_fixtures_satisfy_distance_and_span_bounds() {
    let (cfg, num) = cfgs();
    for roots in common::PENULTIMATE_INSTANCES {
        let poly = common::int_poly(roots);
        for rep in lemma7_bounds(&poly, &cfg, &num).unwrap() {
            if rep.hypothesis_ok {
                assert!(rep.holds, "{:?} {:?}", roots, rep);
            }
        }
        let rep = span_lower_bound(&poly, &cfg, &num).unwrap();
        if rep.hypothesis_ok {
            assert!(rep.holds, "{:?} {:?}", roots, rep);
        }
        let n = poly.degree();
        for m in 1..=(n - 2) {
            for rep in lemma9_bounds(&poly, m, &cfg, &num).unwrap() {
                if rep.hypothesis_ok {
                    assert!(rep.holds, "{:?} m={} {:?}", roots, m, rep);
                }
            }
        }
    }
}

#[test]
fn common_root_interval_is_sharper_than_order_zero_interval() {
    // width comparison between the centroid-root interval and the
    // multiplicity interval: the former is never wider on qualifying data
    let mut rng = common::rng(0x83279);
    let (cfg, num) = cfgs();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 25 && attempts < 3000 {
        attempts += 1;
        let n = 4 + (attempts % 4);
        let poly = match common::centroid_root_poly(&mut rng, n) {
            Some(p) => p,
            None => continue,
        };
        let ms = root_multiset(&poly, &cfg).unwrap();
        let centroid = centroid_data(&poly).unwrap().centroid;
        for (j, entry) in ms.entries().iter().enumerate() {
            if entry.value.as_exact() == Some(&centroid) {
                continue;
            }
            // index among non-centroid roots, in the same sorted order
            let s = ms
                .entries()
                .iter()
                .take(j)
                .filter(|e| e.value.as_exact() != Some(&centroid))
                .count();
            let narrow = common_root_interval(&poly, s, &cfg, &num).unwrap();
            let wide = laguerre_interval(&poly, j, 0, &cfg, &num).unwrap();
            if narrow.hypothesis_ok {
                checked += 1;
                assert!(
                    narrow.rhs <= wide.rhs * (1.0 + 1e-12) + 1e-12,
                    "{}: narrow {} wide {}",
                    poly,
                    narrow.rhs,
                    wide.rhs
                );
            }
        }
    }
    assert!(checked >= 25, "only {} comparisons", checked);
}
