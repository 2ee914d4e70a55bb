use super::*;
use crate::detrep::{conic, cubic};
use crate::scalar::q;

fn hp(s: &str) -> HomPoly3<Rational> {
    HomPoly3::parse(s).unwrap()
}

fn pt(c: [i64; 3]) -> CurvePoint<Rational> {
    CurvePoint::new(c.map(q)).unwrap()
}

#[test]
fn principal_dimensions() {
    for (rep, m) in [(conic(), 2), (cubic(), 3)] {
        let ce = CurveElim::new(rep);
        for n in 1..=4 {
            let v = ce.principal_subspace(n).unwrap();
            assert_eq!(v.basis.dim(), n * m);
            assert_eq!(v.basis.ambient_dim(), blown_dim(n, m));
        }
    }
}

#[test]
fn cache_is_shared() {
    let ce = CurveElim::new(conic());
    let a = ce.principal_subspace(3).unwrap();
    let b = ce.principal_subspace(3).unwrap();
    assert!(Arc::ptr_eq(&a, &b));
}

#[test]
fn vandermonde_vectors_lie_in_principal_subspace() {
    let ce = CurveElim::new(conic());
    // points on x0^2 = x1^2 + x2^2
    for c in [[5, 3, 4], [5, -4, 3], [1, 1, 0], [13, 5, -12]] {
        let pk = ce.rep().kernel_at(&pt(c)).unwrap();
        for n in 1..=4 {
            let v = ce.curve_vandermonde(&pk, n);
            assert!(ce.principal_subspace(n).unwrap().basis.contains(&v));
        }
    }
}

#[test]
fn shift_maps_between_principal_subspaces() {
    let ce = CurveElim::new(cubic());
    let t = ce.generalized_shift(&hp("x0^2 - x1*x2 + 3*x2^2")).unwrap();
    assert_eq!(t.shape(), (6, 12));
}

#[test]
fn identity_bezout_recovers_pencil() {
    let rep = cubic();
    let ce = CurveElim::new(rep.clone());
    assert_eq!(ce.blown_bezout(&hp("x1"), &hp("x2")).unwrap(), *rep.d(0));
    assert_eq!(ce.blown_bezout(&hp("x2"), &hp("x0")).unwrap(), *rep.d(1));
    assert_eq!(ce.blown_bezout(&hp("x0"), &hp("x1")).unwrap(), *rep.d(2));
}

#[test]
fn conic_counts() {
    let ce = CurveElim::new(conic());
    let cases = [
        ("x1", "x2", 0),
        ("x1", "x0 - x2", 1),
        ("x1*x2", "x1*(x0 + 2*x1 + 3*x2)", 2),
        ("x0^2 - x0*x2", "x1^2", 2),
    ];
    for (p, qq, want) in cases {
        let c = ce.curve_count(&hp(p), &hp(qq)).unwrap();
        assert_eq!((c.sylvester_count, c.bezout_count), (want, want), "{p}, {qq}");
        assert!(c.agree());
    }
}

#[test]
fn restricted_bezout_is_symmetric() {
    let ce = CurveElim::new(cubic());
    let b = ce.restricted_bezout(&hp("x0^2 + x1*x2"), &hp("x1^2 - x0*x2")).unwrap();
    assert!(b.is_symmetric());
    assert_eq!(b.shape(), (6, 6));
}

#[test]
fn pairing_on_conic() {
    let ce = CurveElim::new(conic());
    let a = ce.rep().kernel_at(&pt([5, 3, 4])).unwrap();
    let b = ce.rep().kernel_at(&pt([5, -4, 3])).unwrap();
    let v = ce.pairing(&a, &b).unwrap();
    assert!(!v.is_zero());
    let same = ce.pairing(&a, &a);
    assert!(matches!(same, Err(Error::AllDenominatorsZero)));
    let permuted = pairing_expressions(ce.rep(), &a, &b, PairingConvention::Permuted).unwrap();
    assert!(matches!(common_value(&permuted), Err(Error::DisagreementDetected(_))));
}

#[test]
fn bezout_vandermonde_identity() {
    let ce = CurveElim::new(conic());
    let a = ce.rep().kernel_at(&pt([5, 3, 4])).unwrap();
    let b = ce.rep().kernel_at(&pt([13, 5, -12])).unwrap();
    let p = hp("x0^2 - 2*x1*x2 + x2^2");
    let qq = hp("3*x1^2 + x0*x2");
    assert!(ce.bezout_vandermonde_identity_check(&p, &qq, &a, &b).unwrap());
}

#[test]
fn generalized_kravitsky() {
    let ce = CurveElim::new(conic());
    let (p, qq) = (hp("x0^2 + x1*x2"), hp("x1^2 - 2*x0*x2"));
    let (f, g) = (hp("x2^2 + x0*x1"), hp("x0^2 - x1^2 + x1*x2"));
    assert!(ce.generalized_kravitsky_check(&p, &qq, &f, &g).unwrap());
    assert!(ce.generalized_kravitsky_check(&p, &qq, &p, &qq).unwrap());
}

#[test]
fn generation_by_rational_line_points() {
    let ce = CurveElim::new(conic());
    // x2 = 0 meets the conic at (1, +-1, 0); x1 = 0 at (1, 0, +-1)
    let lines = [[q(0), q(0), q(1)], [q(0), q(1), q(0)]];
    assert!(ce.vandermonde_generation_check(&lines).unwrap());
    let dup = [[q(0), q(0), q(1)], [q(0), q(0), q(1)]];
    assert!(matches!(
        ce.vandermonde_generation_check(&dup),
        Err(Error::NonGeneric(_))
    ));
}

#[test]
fn generation_by_complex_line_points() {
    let ce = CurveElim::new(cubic().to_complex());
    let c = |a: f64, b: f64, d: f64| [C64::new(a, 0.0), C64::new(b, 0.0), C64::new(d, 0.0)];
    let lines = [c(1.0, 2.0, 3.0), c(-2.0, 1.0, 0.5)];
    assert!(ce.vandermonde_generation_check(&lines).unwrap());
}

#[test]
fn order_one_vandermonde_lies_in_principal_subspace() {
    let ce = CurveElim::new(conic().to_complex());
    let p = CurvePoint::new([5.0, 3.0, 4.0].map(|v| C64::new(v, 0.0))).unwrap();
    let pk = ce.rep().kernel_at(&p).unwrap();
    for n in 1..=3 {
        let v1 = ce.curve_vandermonde_order1(&pk, n).unwrap();
        let basis = &ce.principal_subspace(n).unwrap().basis;
        assert!(basis.solve_in_span_tol(&v1, 1e-8).is_ok());
        assert!(v1.iter().any(|z| z.norm() > 1e-6));
    }
}

#[test]
fn degree_mismatch_is_reported() {
    let ce = CurveElim::new(conic());
    let e = ce.curve_count(&hp("x0"), &hp("x1^2")).unwrap_err();
    assert!(matches!(e, Error::DegreeMismatch { .. }));
}
