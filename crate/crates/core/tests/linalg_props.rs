mod common;

use bracket_width::linalg::{is_zero_vector, rat};
use bracket_width::Matrix;
use common::matrix;
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| matrix(r, c, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_is_transpose_invariant(m in dims()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn rank_nullity(m in dims()) {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(is_zero_vector(&m.mul_vec(v)));
        }
        prop_assert_eq!(Matrix::from_columns(m.cols(), &kernel).rank(), kernel.len());
    }

    #[test]
    fn rref_is_idempotent(m in dims()) {
        let r = m.rref();
        prop_assert_eq!(r.reduced.rref().reduced, r.reduced.clone());
        prop_assert_eq!(r.rank(), m.rank());
    }

    #[test]
    fn consistent_systems_are_solved(m in dims(), x in prop::collection::vec(-3i64..=3, 5)) {
        let x: Vec<_> = x[..m.cols()].iter().map(|&v| rat(v)).collect();
        let b = m.mul_vec(&x);
        let sol = m.solve_particular(&b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn inconsistent_systems_are_detected(m in dims(), b in prop::collection::vec(-3i64..=3, 5)) {
        let b: Vec<_> = b[..m.rows()].iter().map(|&v| rat(v)).collect();
        let augmented = m.hstack(&Matrix::from_columns(m.rows(), std::slice::from_ref(&b)));
        let consistent = augmented.rank() == m.rank();
        prop_assert_eq!(m.solve_particular(&b).is_some(), consistent);
    }

    #[test]
    fn inverse_is_two_sided(m in (1usize..5).prop_flat_map(|n| matrix(n, n, 3))) {
        match m.inverse() {
            Some(inv) => {
                let id = Matrix::identity(m.rows());
                prop_assert_eq!(&m * &inv, id.clone());
                prop_assert_eq!(&inv * &m, id);
            }
            None => prop_assert!(m.rank() < m.rows()),
        }
    }
}
