mod common;

use bracket_width::lie::{ad_image, symplectic_form};
use bracket_width::linalg::rat;
use bracket_width::{Family, LieAlg, Subspace};
use common::{algebra_with, killing_by_trace, ALGEBRAS};
use proptest::prelude::*;

#[test]
fn dimensions_match_closed_forms() {
    for (f, n) in ALGEBRAS {
        let g = LieAlg::build(f, n).unwrap();
        let expected = match f {
            Family::Sl => n * n - 1,
            Family::Sp => n * (2 * n + 1),
            Family::So => n * (n - 1) / 2,
        };
        assert_eq!(g.dim(), expected, "{}", g.id());
        let all: Vec<_> = g.basis().iter().map(|m| m.entries().to_vec()).collect();
        assert_eq!(bracket_width::Matrix::from_rows(all).rank(), expected);
    }
}

#[test]
fn sp_basis_preserves_the_form() {
    for n in 1..=3 {
        let g = LieAlg::build(Family::Sp, n).unwrap();
        let w = symplectic_form(n);
        for x in g.basis() {
            assert!((&(&x.transpose() * &w) + &(&w * x)).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric_and_closed((g, v) in algebra_with(2, 4)) {
        let xy = v[0].bracket(&v[1]).unwrap();
        prop_assert_eq!(xy.add(&v[1].bracket(&v[0]).unwrap()), g.zero());
        prop_assert!(g.contains_matrix(&v[0].matrix().commutator(v[1].matrix())));
    }

    #[test]
    fn jacobi((_g, v) in algebra_with(3, 4)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let b = |a: &bracket_width::Elem, c: &bracket_width::Elem| a.bracket(c).unwrap();
        let total = b(x, &b(y, z)).add(&b(y, &b(z, x))).add(&b(z, &b(x, y)));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn killing_matches_trace_formula((g, v) in algebra_with(2, 4)) {
        prop_assert_eq!(
            v[0].killing(&v[1]).unwrap(),
            killing_by_trace(&g, v[0].matrix(), v[1].matrix())
        );
        // and the definition tr(ad x ad y)
        prop_assert_eq!(
            v[0].killing(&v[1]).unwrap(),
            (&v[0].ad_matrix() * &v[1].ad_matrix()).trace()
        );
    }

    #[test]
    fn killing_is_invariant((_g, v) in algebra_with(3, 4)) {
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let lhs = x.bracket(y).unwrap().killing(z).unwrap();
        let rhs = x.killing(&y.bracket(z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coordinates_round_trip((g, v) in algebra_with(1, 5)) {
        prop_assert_eq!(g.coords_of(v[0].matrix()).unwrap(), v[0].coords().to_vec());
    }

    #[test]
    fn image_complement_is_centralizer((_g, v) in algebra_with(1, 2)) {
        let a = &v[0];
        prop_assert_eq!(ad_image(a).killing_orthogonal(), a.centralizer());
        prop_assert_eq!(ad_image(a).dim() + a.centralizer().dim(), a.parent().dim());
    }

    #[test]
    fn image_sum_rank_iff_no_common_centralizer((g, v) in algebra_with(2, 1), collapse in any::<bool>()) {
        let a = if collapse { v[1].scale(&rat(-3)) } else { v[0].clone() };
        let b = &v[1];
        let full = a.image_sum_rank(b).unwrap() == g.dim();
        let cc = a.common_centralizer(b).unwrap();
        prop_assert_eq!(full, cc.is_zero());
        // rank-nullity for the stacked map
        prop_assert_eq!(a.image_sum_rank(b).unwrap() + cc.dim(), g.dim());
        for x in cc.elements() {
            prop_assert!(a.bracket(&x).unwrap().is_zero() && b.bracket(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn generated_subalgebra_is_closed((g, v) in algebra_with(2, 1)) {
        let s = g.generated_subalgebra(&v).unwrap();
        prop_assert!(s.is_bracket_closed());
        prop_assert!(v.iter().all(|x| s.contains_elem(x)));
        let whole = Subspace::whole(&g);
        prop_assert!(s.dim() <= whole.dim());
    }
}
