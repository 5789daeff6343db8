//! Randomized invariants for the parity combinatorics.

use proptest::prelude::*;

use collatz_rings::parity;

/// Arbitrary zero-dense vector over {0,...,q-1}: thin out a raw vector by
/// zeroing every entry that follows a nonzero one.
fn zero_dense(q: u64, max_len: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..q, 1..=max_len).prop_map(|mut v| {
        for i in 1..v.len() {
            if v[i - 1] != 0 {
                v[i] = 0;
            }
        }
        v
    })
}

proptest! {
    #[test]
    fn expand_then_condense_is_identity(v in zero_dense(4, 24)) {
        let expanded = parity::expand(&v);
        prop_assert!(parity::is_zero_dense(&expanded).unwrap());
        prop_assert_eq!(parity::condense(&expanded).unwrap(), v);
    }

    #[test]
    fn condense_then_expand_is_identity(v in zero_dense(4, 24)) {
        // make the window self-contained
        let mut v = v;
        if *v.last().unwrap() != 0 {
            v.push(0);
        }
        let condensed = parity::condense(&v).unwrap();
        prop_assert_eq!(parity::expand(&condensed), v);
    }

    #[test]
    fn minimal_rotation_is_a_rotation_and_minimal(v in prop::collection::vec(0u64..3, 1..16)) {
        let m = parity::minimal_rotation(&v);
        let n = v.len();
        let rotations: Vec<Vec<u64>> = (0..n)
            .map(|r| (0..n).map(|i| v[(i + r) % n]).collect())
            .collect();
        prop_assert!(rotations.contains(&m));
        prop_assert!(rotations.iter().all(|r| *r >= m));
    }

    #[test]
    fn primitive_period_divides_length(v in prop::collection::vec(0u64..3, 1..16)) {
        let d = parity::primitive_period(&v);
        prop_assert_eq!(v.len() % d, 0);
        let n = v.len();
        prop_assert!((0..n).all(|i| v[i] == v[(i + d) % n]));
    }
}
