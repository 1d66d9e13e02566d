mod common;

use fihom::linalg::{hnf, invariant_factors, snf, IntMatrix, Lattice, SparseIntMatrix};
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-range..=range, cols), rows).prop_map(move |rows| {
        IntMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(), cols)
    })
}

#[test]
fn sharpness_relation_matrix_has_a_two() {
    // the relation matrix of the sharpness example in degree 3
    let m = IntMatrix::from_i64(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
    assert_eq!(invariant_factors(&m), fihom::linalg::int_vec(&[1, 1, 2]));
}

#[test]
fn hermite_form_example() {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
    let h = hnf(&m);
    // determinant 624 on both sides, and (2,4,4) = r_1 + 2 r_2 - r_3
    assert_eq!(h.h, IntMatrix::from_i64(&[&[2, 0, 120], &[0, 2, 20], &[0, 0, 156]]));
    assert_eq!(h.pivots, vec![0, 1, 2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_matches_determinantal_divisors(m in matrix(4, 5, 6)) {
        prop_assert_eq!(invariant_factors(&m), common::invariant_factors(&common::to_i128(&m)));
    }

    #[test]
    fn snf_transforms_are_consistent(m in matrix(4, 4, 5)) {
        let s = snf(&m);
        prop_assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal());
        for w in s.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
    }

    #[test]
    fn hnf_is_canonical_and_spans_the_same_lattice(m in matrix(5, 4, 5)) {
        let h = hnf(&m);
        let hr = common::to_i128(&h.h);
        let mr = common::to_i128(&m);
        prop_assert!(common::is_canonical_hermite(&hr));
        prop_assert!(mr.iter().all(|r| common::in_echelon_lattice(&hr, r)));
        let r = hr.len();
        prop_assert_eq!(r, common::rank(&mr));
        if r > 0 {
            prop_assert_eq!(common::minors_gcd(&mr, r), common::minors_gcd(&hr, r));
        }
        let mut rows = h.u.mul(&m);
        let zero_tail = (r..rows.rows()).all(|i| rows.row(i).iter().all(|e| *e == BigInt::from(0)));
        prop_assert!(zero_tail);
        rows = rows.select_rows(&(0..r).collect::<Vec<_>>());
        prop_assert_eq!(rows, h.h.clone());
    }

    #[test]
    fn hnf_is_invariant_under_row_operations(m in matrix(4, 4, 4), a in 0usize..4, b in 0usize..4, k in -3i64..=3) {
        prop_assume!(a != b);
        let mut rows: Vec<Vec<BigInt>> = m.iter_rows().map(|r| r.to_vec()).collect();
        let add: Vec<BigInt> = rows[b].iter().map(|x| x * k).collect();
        for (x, y) in rows[a].iter_mut().zip(add) {
            *x += y;
        }
        rows.swap(0, 3);
        let m2 = IntMatrix::from_rows(rows, 4);
        prop_assert_eq!(hnf(&m).h, hnf(&m2).h);
    }

    #[test]
    fn sparse_and_dense_factors_agree(m in matrix(6, 5, 3)) {
        prop_assert_eq!(SparseIntMatrix::from_dense(&m).invariant_factors(), invariant_factors(&m));
    }

    #[test]
    fn intersection_is_largest_common_sublattice(a in matrix(2, 3, 4), b in matrix(2, 3, 4), x in prop::collection::vec(-6i64..=6, 3)) {
        let la = Lattice::span(&a);
        let lb = Lattice::span(&b);
        let cap = la.intersection(&lb).unwrap();
        let x: Vec<BigInt> = x.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(cap.contains(&x), la.contains(&x) && lb.contains(&x));
        prop_assert!(la.contains_lattice(&cap).unwrap() && lb.contains_lattice(&cap).unwrap());
        let sum = la.sum(&lb).unwrap();
        prop_assert!(sum.contains_lattice(&la).unwrap() && sum.contains_lattice(&lb).unwrap());
    }

    #[test]
    fn kernel_vectors_are_killed(m in matrix(5, 3, 4)) {
        let k = Lattice::kernel(&m);
        prop_assert_eq!(k.rank() + common::rank(&common::to_i128(&m)), 5);
        for r in k.basis().iter_rows() {
            prop_assert!(m.apply(r).iter().all(|e| *e == BigInt::from(0)));
        }
        prop_assert!(k.is_saturated());
    }
}
