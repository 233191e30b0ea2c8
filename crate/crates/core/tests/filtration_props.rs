use std::collections::BTreeMap;

use proptest::prelude::*;
use wss_core::filtration::{compare_shifted, monodromy_filtration, verify_monodromy_axioms, NilpotentOp};
use wss_core::ratlin::{rat, RatMatrix};

/// Block-diagonal nilpotent with Jordan blocks of the given sizes.
fn jordan(blocks: &[usize]) -> RatMatrix {
    let parts: Vec<RatMatrix> = blocks
        .iter()
        .map(|&k| {
            let mut m = RatMatrix::zeros(k, k);
            for i in 1..k {
                m[(i, i - 1)] = rat(1);
            }
            m
        })
        .collect();
    RatMatrix::block_diagonal(&parts)
}

/// A block of size `k` contributes one dimension to each of the graded
/// pieces `c + k - 1, c + k - 3, ..., c - k + 1`.
fn graded_oracle(blocks: &[usize], center: i64) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &k in blocks {
        let k = k as i64;
        for step in 0..k {
            *out.entry(center + k - 1 - 2 * step).or_insert(0) += 1;
        }
    }
    out
}

fn jordan_type() -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1usize..7, 1..6)
}

/// A product of `2n` elementary transvections `e_i += c e_j`.
fn invertible(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec((0..n, 0..n, -2i64..=2), 2 * n).prop_map(move |ops| {
        let mut t = RatMatrix::identity(n);
        for (i, j, c) in ops {
            if i != j {
                let mut e = RatMatrix::identity(n);
                e[(i, j)] = rat(c);
                t = &e * &t;
            }
        }
        t
    })
}

proptest! {
    #[test]
    fn graded_dims_match_jordan_type(blocks in jordan_type(), center in -3i64..=3) {
        let n = NilpotentOp::new(jordan(&blocks)).unwrap();
        let m = monodromy_filtration(&n, center);
        let oracle = graded_oracle(&blocks, center);
        for i in m.lowest() - 1..=m.highest() + 1 {
            prop_assert_eq!(m.graded_dim(i), oracle.get(&i).copied().unwrap_or(0), "index {}", i);
        }
        prop_assert!(verify_monodromy_axioms(&n, &m).unwrap().passes());
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn base_change(
        (blocks, t) in jordan_type().prop_flat_map(|b| {
            let d: usize = b.iter().sum();
            (Just(b), invertible(d))
        })
    ) {
        let j = jordan(&blocks);
        let conj = &(&t * &j) * &t.inverse().unwrap();
        let moved = monodromy_filtration(&NilpotentOp::new(conj.clone()).unwrap(), 0);
        let expected = monodromy_filtration(&NilpotentOp::new(j).unwrap(), 0).transformed(&t).unwrap();
        prop_assert!(compare_shifted(&moved, &expected, 0).unwrap());
        prop_assert!(verify_monodromy_axioms(&NilpotentOp::new(conj).unwrap(), &moved).unwrap().passes());
    }

    #[test]
    fn shifted_filtration_is_still_monodromy(blocks in jordan_type(), shift in -4i64..=4) {
        let n = NilpotentOp::new(jordan(&blocks)).unwrap();
        let m = monodromy_filtration(&n, 0);
        prop_assert_eq!(m.shifted(shift), monodromy_filtration(&n, shift));
    }
}
