//! Seeded invariants for the exact polynomial layer.

mod common;

use casaskit::polycore::{
    format_polynomial, parse_polynomial, power_sums, root_multiset, squarefree_decompose,
    GaussianRational, Polynomial, RootFindConfig, RootValue,
};
use proptest::prelude::*;

#[test]
fn multiplicities_sum_and_product_reconstructs() {
    let mut rng = common::rng(0xA11CE);
    let cfg = RootFindConfig::default();
    for i in 0..200 {
        let n = 1 + (i % 10);
        let (poly, _) = common::rational_rooted(&mut rng, n);
        let ms = root_multiset(&poly, &cfg).unwrap();
        let total: usize = ms.entries().iter().map(|e| e.multiplicity).sum();
        assert_eq!(total, n);
        let mut product = Polynomial::one();
        for (factor, mult) in squarefree_decompose(&poly) {
            for _ in 0..mult {
                product = &product * &factor;
            }
        }
        assert_eq!(product, poly.monic(), "sample {}", i);
    }
}

#[test]
fn power_sums_match_explicit_root_sums() {
    let mut rng = common::rng(0xBEEF);
    for i in 0..200 {
        let n = 1 + (i % 10);
        let (poly, roots) = common::rational_rooted(&mut rng, n);
        let ps = power_sums(&poly, 4);
        for t in 0..=4usize {
            let mut explicit = GaussianRational::zero();
            for (root, mult) in &roots {
                let g = GaussianRational::from_rational(root.clone());
                let term = &g.pow(t as u32)
                    * &GaussianRational::from_i64(*mult as i64);
                explicit = &explicit + &term;
            }
            assert_eq!(ps.get(t), &explicit, "sample {} power {}", i, t);
        }
    }
}

#[test]
fn triviality_matches_single_root_entry() {
    let mut rng = common::rng(0xC0FFEE);
    let cfg = RootFindConfig::default();
    for i in 0..100 {
        let n = 2 + (i % 8);
        let poly = if i % 3 == 0 {
            common::trivial_poly(&mut rng, n)
        } else {
            common::rational_rooted(&mut rng, n).0
        };
        let ms = root_multiset(&poly, &cfg).unwrap();
        assert_eq!(
            poly.is_trivial(),
            ms.k() == 1 && ms.max_multiplicity() == n,
            "sample {}: {}",
            i,
            poly
        );
    }
}

#[test]
fn certified_roots_satisfy_the_stated_residual_bound() {
    // polynomials with irrational roots exercise the numeric path
    let cfg = RootFindConfig::default();
    let samples = [
        "x^2 - 2",
        "x^3 - 2*x + 1",
        "x^5 - 4*x^3 + 2*x - 1",
        "x^4 + x^3 - 7*x^2 - x + 5",
        "x^6 - 3*x^4 + 3*x^2 - 5",
        "x^7 - 10*x^5 + 9*x^3 - x + 3",
    ];
    for s in samples {
        let poly = parse_polynomial(s).unwrap();
        let ms = root_multiset(&poly, &cfg).unwrap();
        let lead = poly.leading().abs_upper();
        for (i, e) in ms.entries().iter().enumerate() {
            let value = poly.eval_complex(e.value.to_complex()).norm();
            let bound = ms.residual_bound(i, lead);
            assert!(
                value <= bound + 1e-12 * (1.0 + value + bound),
                "{}: |p(root {})| = {:e} above bound {:e}",
                s,
                i,
                value,
                bound
            );
        }
    }
}

#[test]
fn derivative_composes_additively() {
    let mut rng = common::rng(0xD00D);
    for i in 0..60 {
        let n = 3 + (i % 7);
        let (poly, _) = common::rational_rooted(&mut rng, n);
        for a in 0..3usize {
            for b in 0..3usize {
                if a + b > n {
                    continue;
                }
                let lhs = poly.derive(a).unwrap().derive(b).unwrap();
                let rhs = poly.derive(a + b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parse_format_roundtrip(coeffs in prop::collection::vec(-50i64..=50, 1..8)) {
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let poly = Polynomial::from_int_coeffs(&coeffs);
        prop_assume!(!poly.is_zero());
        let text = format_polynomial(&poly);
        let back = parse_polynomial(&text).unwrap();
        prop_assert_eq!(poly, back);
    }

    #[test]
    fn coefficient_list_roundtrip(
        res in prop::collection::vec(-20i64..=20, 1..6),
        ims in prop::collection::vec(-20i64..=20, 1..6),
    ) {
        let len = res.len().min(ims.len());
        let coeffs: Vec<GaussianRational> = (0..len)
            .map(|i| GaussianRational::from_pair(res[i], ims[i]))
            .collect();
        let poly = Polynomial::from_descending(coeffs);
        prop_assume!(!poly.is_zero());
        let text = format_polynomial(&poly);
        let back = parse_polynomial(&text).unwrap();
        prop_assert_eq!(poly, back);
    }
}
