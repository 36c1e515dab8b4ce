mod common;

use dala_core::rational::{frac, q, Q};
use dala_core::weyl::{build_weyl_module, highest_h_line_dim, verify_cyclic_relations, WeylSpec};
use common::binomial;
use common::weyl_brute::Oracle;
use proptest::prelude::*;

const CONFIGS: &[(&[i64], &[u64])] = &[
    (&[1], &[1]),
    (&[1, 2], &[1, 1]),
    (&[1], &[2]),
    (&[1, 2, 3], &[1, 1, 1]),
    (&[2], &[3]),
    (&[1, -1], &[2, 1]),
];

#[test]
fn dimensions_match_oracle() {
    for &(points, weights) in CONFIGS {
        let pts: Vec<Q> = points.iter().map(|&a| q(a)).collect();
        let spec = WeylSpec::new(pts.clone(), weights.to_vec()).unwrap();
        let m = build_weyl_module(&spec).unwrap();
        let big_l = spec.total();
        assert_eq!(m.dimension(), Oracle::new(&pts, weights).dimension(), "{points:?} {weights:?}");
        assert_eq!(m.dimension(), 1 << big_l);
        // character of (C^2)^{⊗L}
        let expected: Vec<usize> = (0..=big_l).map(|k| binomial(big_l, k)).collect();
        assert_eq!(m.length_dims(), expected.as_slice());
        assert!(verify_cyclic_relations(&m).passed());
        assert_eq!(highest_h_line_dim(&m), 1);
    }
}

#[test]
fn generator_weight_is_total() {
    let spec = WeylSpec::new(vec![q(1), frac(1, 2)], vec![2, 1]).unwrap();
    let m = build_weyl_module(&spec).unwrap();
    let h0 = m.op(dala_core::weyl::Generator::H, 0).unwrap();
    assert_eq!(h0[0][0], q(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rescaling_points_preserves_dimension(
        a in 1i64..5, b in 1i64..5, wa in 1u64..3, c in prop::sample::select(vec![-3i64, -1, 2, 5]),
    ) {
        prop_assume!(a != b);
        let base = WeylSpec::new(vec![q(a), q(-b)], vec![wa, 1]).unwrap();
        let scaled = WeylSpec::new(vec![q(a * c), q(-b * c)], vec![wa, 1]).unwrap();
        let m1 = build_weyl_module(&base).unwrap();
        let m2 = build_weyl_module(&scaled).unwrap();
        prop_assert_eq!(m1.dimension(), m2.dimension());
        prop_assert_eq!(m1.length_dims(), m2.length_dims());
    }
}
