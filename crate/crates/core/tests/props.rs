use curvelim::classical::{bezout, sylvester};
use curvelim::curve::{decomposition_identity_holds, hom_bezout_decomposition, CurveElim};
use curvelim::detrep::{conic, cubic};
use curvelim::poly::{num_monomials, HomPoly3, UniPoly};
use curvelim::scalar::q;
use curvelim::{Field, Matrix, Rational};
use proptest::prelude::*;

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-4i64..=4, rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |i, j| q(v[i * cols + j])))
}

fn form(degree: usize) -> impl Strategy<Value = HomPoly3<Rational>> {
    prop::collection::vec(-5i64..=5, num_monomials(degree))
        .prop_filter("nonzero form", |c| c.iter().any(|&v| v != 0))
        .prop_map(move |c| HomPoly3::from_coeffs(degree, c.into_iter().map(q).collect()).unwrap())
}

fn uni(degree: usize) -> impl Strategy<Value = UniPoly<Rational>> {
    (prop::collection::vec(-6i64..=6, degree), 1i64..=6).prop_map(|(mut c, lead)| {
        c.push(lead);
        UniPoly::new(c.into_iter().map(q).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity(a in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| int_matrix(r, c))) {
        prop_assert_eq!(a.rank() + a.kernel_basis().dim(), a.cols());
        for k in 0..a.kernel_basis().dim() {
            prop_assert!(a.mul_vec(&a.kernel_basis().column(k)).unwrap().iter().all(Field::is_zero));
        }
    }

    #[test]
    fn determinant_is_multiplicative(a in int_matrix(3, 3), b in int_matrix(3, 3)) {
        prop_assert_eq!(a.mul(&b).unwrap().det().unwrap(), a.det().unwrap() * b.det().unwrap());
    }

    #[test]
    fn kron_mixed_product(a in int_matrix(2, 2), b in int_matrix(2, 3), c in int_matrix(2, 2), d in int_matrix(3, 2)) {
        let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn float_rank_matches_exact(a in int_matrix(4, 4), b in int_matrix(4, 4)) {
        // products of small integer matrices are often rank deficient
        let low = Matrix::vstack(&[&b.select(&[0, 1], &[0, 1, 2, 3]), &Matrix::zeros(2, 4)]).unwrap();
        let m = a.mul(&low).unwrap();
        prop_assert_eq!(m.to_complex().rank(), m.rank());
    }

    #[test]
    fn form_text_round_trip(p in (1usize..4).prop_flat_map(form)) {
        let back = HomPoly3::<Rational>::parse_with_degree(&p.to_string(), p.degree()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn evaluation_respects_products(p in form(2), r in form(1), x in prop::array::uniform3(-7i64..=7)) {
        let x = x.map(q);
        prop_assert_eq!(p.mul(&r).evaluate(&x), p.evaluate(&x) * r.evaluate(&x));
    }

    #[test]
    fn linear_change_inverts(p in form(3), a in int_matrix(3, 3)) {
        prop_assume!(!a.det().unwrap().is_zero());
        let there = p.linear_change(&a).unwrap();
        prop_assert_eq!(there.linear_change(&a.inverse().unwrap()).unwrap(), p);
    }

    #[test]
    fn sylvester_and_bezout_determinants_agree_up_to_sign((p, g) in (1usize..5).prop_flat_map(|n| (uni(n), uni(n)))) {
        let s = sylvester(&p, &g).unwrap().det().unwrap();
        let b = bezout(&p, &g).unwrap().det().unwrap();
        prop_assert!(s == b || s == -b.clone(), "det S = {}, det B = {}", s, b);
    }

    #[test]
    fn decomposition_identity((p, g) in (1usize..4).prop_flat_map(|n| (form(n), form(n)))) {
        let t = hom_bezout_decomposition(&p, &g).unwrap();
        prop_assert!(decomposition_identity_holds(&p, &g, &t));
    }

    #[test]
    fn restricted_bezout_is_symmetric(
        (p, g) in (1usize..3).prop_flat_map(|n| (form(n), form(n))),
        cubic_curve in any::<bool>(),
    ) {
        let ce = CurveElim::new(if cubic_curve { cubic() } else { conic() });
        let b = ce.restricted_bezout(&p, &g).unwrap();
        prop_assert_eq!(b.transpose(), b);
    }
}
