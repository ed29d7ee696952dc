//! Seeded properties of the interpolation constructions.

mod common;

use casaskit::goncharov::{
    build_genetic, build_interpolation, build_recursion, derivative_at_node,
    derivative_genetic, scale_nodes, NodeSequence,
};
use casaskit::polycore::GaussianRational;

#[test]
fn homogeneous_scaling_of_nodes_scales_the_polynomial() {
    let mut rng = common::rng(0x5CA1E);
    for i in 0..40 {
        let n = 1 + (i % 6);
        let nodes = common::rational_nodes(&mut rng, n);
        let alpha = GaussianRational::from_rational(common::nonzero_small_rational(&mut rng));
        let seq = NodeSequence::exact(nodes);
        let scaled = scale_nodes(&seq, &alpha).unwrap();
        let g = build_recursion(&seq).unwrap().polynomial;
        let g_scaled = build_recursion(&scaled).unwrap().polynomial;
        // G(alpha x; alpha nodes) = alpha^n G(x; nodes): compare coefficient
        // maps exactly via the root-scaling operation
        let expected = g.scale_roots(&alpha).unwrap();
        assert_eq!(g_scaled, expected, "sample {}", i);
    }
}

#[test]
fn derivative_expansion_is_the_derivative_of_the_expansion() {
    let mut rng = common::rng(0xFEED);
    for i in 0..40 {
        let n = 1 + (i % 6);
        let nodes = common::rational_nodes(&mut rng, n);
        let seq = NodeSequence::exact(nodes);
        let g = build_genetic(&seq).unwrap().polynomial;
        for m in 0..n {
            let direct = g.derive(m).unwrap();
            let expanded = derivative_genetic(&seq, m).unwrap();
            assert_eq!(direct, expanded, "sample {} order {}", i, m);
        }
    }
}

#[test]
fn node_derivative_values_match_direct_evaluation() {
    let mut rng = common::rng(0xABCD);
    for i in 0..30 {
        let n = 2 + (i % 5);
        let nodes = common::rational_nodes(&mut rng, n);
        let seq = NodeSequence::exact(nodes.clone());
        let g = build_interpolation(&seq).unwrap().polynomial;
        for m in 0..n {
            for s in 1..=(n - m) {
                let direct = g.derive(s + m).unwrap().eval(&nodes[m]);
                let formula = derivative_at_node(&seq, m, s).unwrap();
                assert_eq!(direct, formula, "sample {} m={} s={}", i, m, s);
            }
        }
    }
}
