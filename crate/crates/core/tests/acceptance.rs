//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use curvelim::classical;
use curvelim::curve::{
    common_value, pairing_expressions, vandermonde_blocks, CurveElim, PairingConvention, PairingTerm,
};
use curvelim::detrep::{conic, cubic, pencil_det_poly, CurvePoint};
use curvelim::poly::{HomPoly3, UniPoly};
use curvelim::rational_map::{
    compose_check, equivalence_preservation_check, image_pencil, proportionality, unreduced_pencil, RationalMap,
};
use curvelim::scalar::q;
use curvelim::{Field, Matrix, Rational, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn principal_dimension() -> Outcome {
    for (name, rep) in [("conic", conic()), ("cubic", cubic())] {
        let m = rep.m();
        let ce = CurveElim::new(rep);
        for n in 1..=4 {
            let dim = ce.principal_constraints(n).kernel_basis().dim();
            ensure(dim == n * m, || {
                format!("{name}, n = {n}: dim {dim}, expected {}", n * m)
            })?;
        }
    }
    Ok("dim V_n = nm for n = 1..4 on the conic (m = 2) and the cubic (m = 3)".into())
}

fn classical_determinants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for k in 0..100 {
        let n = 1 + k % 5;
        let (p, qq) = (random_uni(&mut rng, n), random_uni(&mut rng, n));
        let ds = classical::sylvester(&p, &qq).unwrap().det().unwrap();
        let db = classical::bezout(&p, &qq).unwrap().det().unwrap();
        ensure(num_traits::Signed::abs(&ds) == num_traits::Signed::abs(&db), || {
            format!("p = {p}, q = {qq}: det S = {ds}, det B = {db}")
        })?;
    }
    Ok("|det S| = |det B| for 100 random integer pairs, degrees 1..5".into())
}

fn kravitsky() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..25 {
        let n = 1 + k % 4;
        let ps: Vec<UniPoly<Rational>> = (0..4).map(|_| random_uni(&mut rng, n)).collect();
        let (l, r) = classical::kravitsky_sides(&ps[0], &ps[1], &ps[2], &ps[3]).unwrap();
        ensure(l == r, || format!("quadruple {k} (degree {n}) fails"))?;
        ensure(classical::kravitsky_exchange_check(&ps[0], &ps[1]).unwrap(), || {
            format!("f = 1, g = x^{n} form fails for quadruple {k}")
        })?;
    }
    Ok("both sides equal for 25 random quadruples, degrees 1..4; f = 1, g = x^n gives the exchange-matrix form".into())
}

fn classical_kernel_dims(p: &UniPoly<Rational>, qq: &UniPoly<Rational>) -> (usize, usize) {
    let s = classical::sylvester(p, qq).unwrap();
    let b = classical::bezout(p, qq).unwrap();
    (s.cols() - s.rank(), b.cols() - b.rank())
}

fn classical_counting() -> Outcome {
    // (roots of p, roots of q) with exactly k shared roots
    let cases: [(&[i64], &[i64], usize); 7] = [
        (&[1, 2, 3], &[4, 5, 6], 0),
        (&[-1, 7], &[2, 3], 0),
        (&[1, 2, 3], &[1, 5, 6], 1),
        (&[0, -2], &[-2, 9], 1),
        (&[1, 2, 3], &[1, 2, 7], 2),
        (&[4, -3, 8, 1], &[-3, 2, 8, 5], 2),
        (&[2, 5], &[5, 2], 2),
    ];
    for (a, b, k) in cases {
        let p = from_roots(2, a);
        let qq = from_roots(-3, b);
        let (s, bz) = classical_kernel_dims(&p, &qq);
        ensure(s == k && bz == k, || {
            format!("roots {a:?} / {b:?}: Sylvester {s}, Bezout {bz}, expected {k}")
        })?;
    }
    Ok("Sylvester and Bezout kernel dimensions equal k in {0, 1, 2} for 7 constructed pairs".into())
}

fn line_image() -> Outcome {
    let forms = [
        UniPoly::parse_binary("s^2 + t^2", None).unwrap(),
        UniPoly::parse_binary("2*s*t", None).unwrap(),
        UniPoly::parse_binary("s^2 - t^2", None).unwrap(),
    ];
    let m = classical::line_image_pencil(&forms).unwrap();
    let det = pencil_det_poly(&m);
    let target = hp("x0^2 - x1^2 - x2^2");
    match proportionality(&target, &det) {
        Some(c) => Ok(format!("det = {det} = ({c}) * (x0^2 - x1^2 - x2^2)")),
        None => Err(format!("det = {det} is not proportional to the conic")),
    }
}

fn shift_intertwining() -> Outcome {
    let ce = CurveElim::new(conic());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let points = conic_points(10);
    for k in 0..10 {
        let n = 1 + k % 3;
        let p = random_form(&mut rng, n);
        let t = ce.blown_shift(&p);
        for x in &points {
            let pk = ce.rep().kernel_at(x).unwrap();
            let lhs = t.mul_vec(&vandermonde_blocks(x.coords(), &pk.e, 2 * n)).unwrap();
            let px = p.evaluate(x.coords());
            let rhs: Vec<Rational> = vandermonde_blocks(x.coords(), &pk.e, n)
                .into_iter()
                .map(|v| v * &px)
                .collect();
            ensure(lhs == rhs, || format!("p = {p} at {:?}", x.coords()))?;
        }
    }
    Ok("T(p) V_2n(x, e) = p(x) V_n(x, e) at 10 conic points for 10 random p, n <= 3".into())
}

fn generalized_rank() -> Outcome {
    let ce = CurveElim::new(conic());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for k in 0..20 {
        let n = 1 + k % 3;
        let p = random_form(&mut rng, n);
        let t = ce.generalized_shift(&p).map_err(|e| e.to_string())?;
        let r = t.rank();
        ensure(r == n * 2, || format!("p = {p}: rank {r}, expected {}", 2 * n))?;
    }
    Ok("rank T'(p) = nm for 20 random p, n <= 3, on the conic".into())
}

fn curve_counting() -> Outcome {
    let ce = CurveElim::new(conic());
    let pts = conic_points(12);
    let l = |a: usize, b: usize| line_through(&pts[a], &pts[b]);
    let mut cases: Vec<(HomPoly3<Rational>, HomPoly3<Rational>, usize)> = vec![
        (hp("x1"), hp("x2"), 0),
        (hp("x1"), hp("x0 - x2"), 1),
        (hp("x1*x2"), hp("x1*(x0 + 2*x1 + 3*x2)"), 2),
        (hp("x0^2 - x0*x2"), hp("x1^2"), 2),
        (l(0, 1), l(2, 3), 0),
        (l(0, 1), l(0, 2), 1),
        (l(0, 1), l(0, 1).scale(&q(3)), 2),
    ];
    cases.push((l(0, 1).mul(&l(2, 3)), l(4, 5).mul(&l(6, 7)), 0));
    cases.push((l(0, 1).mul(&l(2, 3)), l(0, 4).mul(&l(5, 6)), 1));
    cases.push((l(0, 1).mul(&l(2, 3)), l(0, 4).mul(&l(1, 5)), 2));
    for (p, qq, k) in &cases {
        let c = ce.curve_count(p, qq).map_err(|e| e.to_string())?;
        ensure(c.sylvester_count == *k && c.bezout_count == *k, || {
            format!(
                "p = {p}, q = {qq}: Sylvester {}, Bezout {}, expected {k}",
                c.sylvester_count, c.bezout_count
            )
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut histogram = [0usize; 5];
    let pool = conic_points(30);
    for k in 0..50 {
        let n = 1 + k % 2;
        // odd k: random forms through randomly chosen shared curve points
        let (p, qq) = if k % 2 == 1 {
            let mut pick = || rng.random_range(0..pool.len());
            let (a, b, c) = (pick(), pick(), pick());
            if a == b || a == c {
                (random_form(&mut rng, n), random_form(&mut rng, n))
            } else {
                let lp = line_through(&pool[a], &pool[b]);
                let lq = line_through(&pool[a], &pool[c]);
                (
                    lp.mul(&random_form(&mut rng, n - 1)),
                    lq.mul(&random_form(&mut rng, n - 1)),
                )
            }
        } else {
            (random_form(&mut rng, n), random_form(&mut rng, n))
        };
        let c = ce.curve_count(&p, &qq).map_err(|e| e.to_string())?;
        ensure(c.agree(), || {
            format!(
                "p = {p}, q = {qq}: Sylvester {}, Bezout {}",
                c.sylvester_count, c.bezout_count
            )
        })?;
        histogram[c.bezout_count.min(4)] += 1;
    }
    Ok(format!(
        "{} constructed pairs match; 50 random pairs agree (counts 0..4: {histogram:?})",
        cases.len()
    ))
}

fn max_relative_spread(terms: &[PairingTerm<C64>; 3]) -> f64 {
    let vals: Vec<C64> = terms.iter().map(|t| t.numerator / t.denominator).collect();
    let scale = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut worst = 0.0f64;
    for a in &vals {
        for b in &vals {
            worst = worst.max((a - b).norm() / scale);
        }
    }
    worst
}

fn signed_agree(terms: &[PairingTerm<Rational>; 3], signs: [i64; 3]) -> bool {
    let flipped: [PairingTerm<Rational>; 3] = [0, 1, 2].map(|i| PairingTerm {
        numerator: terms[i].numerator.clone(),
        denominator: terms[i].denominator.clone() * q(signs[i]),
    });
    common_value(&flipped).is_ok()
}

fn pairing() -> Outcome {
    let ce = CurveElim::new(conic());
    let pts = conic_points(60);
    let sign_patterns: Vec<[i64; 3]> = (0..8)
        .map(|b| [0, 1, 2].map(|k| if b >> k & 1 == 1 { -1 } else { 1 }))
        .collect();
    let mut cross_ok = [0usize; 8];
    let mut permuted_ok = [0usize; 8];
    let mut exact = 0;
    let mut skipped = 0;
    for pair in pts.chunks(2) {
        if exact == 20 {
            break;
        }
        let a = ce.rep().kernel_at(&pair[0]).unwrap();
        let b = ce.rep().kernel_at(&pair[1]).unwrap();
        let terms = pairing_expressions(ce.rep(), &a, &b, PairingConvention::CrossProduct).unwrap();
        // a three-way comparison needs all three denominators nonzero
        if terms.iter().any(|t| t.denominator.is_zero()) {
            skipped += 1;
            continue;
        }
        ensure(common_value(&terms).is_ok(), || {
            format!("disagreement at {:?}, {:?}", a.x(), b.x())
        })?;
        exact += 1;
        let permuted = pairing_expressions(ce.rep(), &a, &b, PairingConvention::Permuted).unwrap();
        for (k, s) in sign_patterns.iter().enumerate() {
            cross_ok[k] += signed_agree(&terms, *s) as usize;
            permuted_ok[k] += signed_agree(&permuted, *s) as usize;
        }
    }
    let cubic_c = CurveElim::new(cubic().to_complex());
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut lines: Vec<Vec<CurvePoint<C64>>> = Vec::new();
    while lines.len() < 24 {
        let line = [0; 3].map(|_| C64::new(rng.random_range(-5..=5) as f64, rng.random_range(-5..=5) as f64));
        if let Ok(ps) = cubic_c.rep().sample_points_complex(&line) {
            lines.push(ps);
        }
    }
    let mut worst = 0.0f64;
    let mut float_pairs = 0;
    'pairs: for k in 0..lines.len() - 1 {
        for x in &lines[k] {
            for y in &lines[k + 1] {
                if float_pairs == 20 {
                    break 'pairs;
                }
                let a = cubic_c.rep().kernel_at(x).unwrap();
                let b = cubic_c.rep().kernel_at(y).unwrap();
                let terms = pairing_expressions(cubic_c.rep(), &a, &b, PairingConvention::CrossProduct).unwrap();
                let size = a.x().iter().map(|z| z.norm()).fold(0.0, f64::max)
                    * b.x().iter().map(|z| z.norm()).fold(0.0, f64::max);
                // a three-way comparison needs well-conditioned denominators
                if terms.iter().any(|t| t.denominator.norm() <= 1e-3 * size) {
                    continue;
                }
                worst = worst.max(max_relative_spread(&terms));
                float_pairs += 1;
            }
        }
    }
    ensure(float_pairs == 20, || {
        format!("only {float_pairs} well-conditioned cubic pairs")
    })?;
    ensure(exact == 20, || {
        format!("only {exact} conic pairs with three live quotients")
    })?;
    ensure(worst <= 1e-9, || format!("float relative error {worst:e} on the cubic"))?;
    println!("    sign conventions over 20 conic pairs (denominator signs +/-, pairs where all quotients agree):");
    for (k, s) in sign_patterns.iter().enumerate() {
        println!(
            "      signs {s:?}: cross-product assignment {}/20, permuted assignment {}/20",
            cross_ok[k], permuted_ok[k]
        );
    }
    Ok(format!(
        "denominators (x1y2 - x2y1, x2y0 - x0y2, x0y1 - x1y0): exact at 20 conic pairs ({skipped} pair with a zero denominator skipped); cubic float max relative error {worst:.1e}"
    ))
}

fn bezout_vandermonde() -> Outcome {
    let ce = CurveElim::new(conic());
    let pts = conic_points(40);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (k, pair) in pts.chunks(2).enumerate() {
        let n = 1 + k % 2;
        let (p, qq) = (random_form(&mut rng, n), random_form(&mut rng, n));
        let a = ce.rep().kernel_at(&pair[0]).unwrap();
        let b = ce.rep().kernel_at(&pair[1]).unwrap();
        let ok = ce
            .bezout_vandermonde_identity_check(&p, &qq, &a, &b)
            .map_err(|e| e.to_string())?;
        ensure(ok, || format!("p = {p}, q = {qq} at {:?}, {:?}", a.x(), b.x()))?;
    }
    Ok("V(x,e)^T B(p,q) V(y,h) = (p(x)q(y) - q(x)p(y)) [e,h] at 20 conic pairs, n <= 2".into())
}

fn generalized_kravitsky() -> Outcome {
    let ce = CurveElim::new(conic());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..10 {
        let n = 1 + k % 2;
        let f: Vec<HomPoly3<Rational>> = (0..4).map(|_| random_form(&mut rng, n)).collect();
        let ok = ce
            .generalized_kravitsky_check(&f[0], &f[1], &f[2], &f[3])
            .map_err(|e| e.to_string())?;
        ensure(ok, || format!("quadruple {k} (n = {n}) fails"))?;
    }
    Ok("both sides equal for 10 random quadruples, n <= 2, on the conic".into())
}

fn image_construction() -> Outcome {
    let rep = conic();
    let ce = CurveElim::new(rep.clone());
    let id = image_pencil(&ce, &RationalMap::identity()).map_err(|e| e.to_string())?;
    ensure(id.matrices() == rep.matrices(), || {
        "identity map changed the pencil".into()
    })?;
    let r = RationalMap::new([hp("x0^2"), hp("2*x1*x2"), hp("x2^2 - x1^2")], Vec::new()).unwrap();
    let ip = image_pencil(&ce, &r).map_err(|e| e.to_string())?;
    for x in conic_points(20) {
        let y = r.apply(x.coords());
        let v = ip.det_poly().evaluate(&y);
        ensure(v.is_zero(), || format!("det = {v} at r({:?})", x.coords()))?;
    }
    let forms = [hp("x0*x1"), hp("x1*x2"), hp("x0^2 - x0*x2")];
    let bare = RationalMap::new(forms.clone(), Vec::new()).unwrap();
    let raw = unreduced_pencil(&ce, &bare).map_err(|e| e.to_string())?;
    ensure(pencil_det_poly(&raw).is_zero(), || {
        "unreduced pencil has nonzero determinant".into()
    })?;
    let with_bp = RationalMap::new(forms, vec![pt([1, 0, 1])]).unwrap();
    let reduced = image_pencil(&ce, &with_bp).map_err(|e| e.to_string())?;
    ensure(!reduced.det_poly().is_zero(), || "reduced determinant vanishes".into())?;
    Ok(format!(
        "identity reproduces (D0, D1, D2); degree-2 map: det {} vanishes at 20 image points; basepoint (1,0,1): size 4 -> {}, det {}",
        ip.det_poly(),
        reduced.size(),
        reduced.det_poly()
    ))
}

fn random_invertible(rng: &mut ChaCha8Rng, size: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(size, size, |_, _| rand_int(rng, 3));
        if !m.det().unwrap().is_zero() {
            return m;
        }
    }
}

fn linear_map(a: &Matrix<Rational>) -> RationalMap<Rational> {
    let forms = [0, 1, 2].map(|i| HomPoly3::linear([a[(i, 0)].clone(), a[(i, 1)].clone(), a[(i, 2)].clone()]));
    RationalMap::new(forms, Vec::new()).unwrap()
}

fn composition() -> Outcome {
    let ce = CurveElim::new(conic());
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut scales = Vec::new();
    for k in 0..5 {
        let r = linear_map(&random_invertible(&mut rng, 3));
        let s = linear_map(&random_invertible(&mut rng, 3));
        let report = compose_check(&ce, &r, &s, k == 0).map_err(|e| e.to_string())?;
        let scale = report
            .scale
            .clone()
            .ok_or_else(|| format!("pair {k}: {} vs {}", report.det_direct, report.det_via_image))?;
        if k == 0 {
            ensure(report.tau_identity == Some(true), || {
                "tau congruence fails for n = k = 1".into()
            })?;
        }
        scales.push(scale.to_string());
    }
    Ok(format!(
        "5 degree-1 x degree-1 compositions proportional (scales {}); tau congruence exact for n = k = 1",
        scales.join(", ")
    ))
}

fn equivalence() -> Outcome {
    let ce = CurveElim::new(conic());
    let r = RationalMap::new([hp("x0^2"), hp("2*x1*x2"), hp("x2^2 - x1^2")], Vec::new()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut scales = Vec::new();
    for k in 0..5 {
        let p = random_invertible(&mut rng, 2);
        let s = equivalence_preservation_check(&ce, &p, &r)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("transform {k} gives a non-proportional determinant"))?;
        scales.push(s.to_string());
    }
    Ok(format!(
        "5 random P: image det_polys proportional (scales {})",
        scales.join(", ")
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 14] = [
        ("principal subspace dimension", principal_dimension),
        ("classical |det S| = |det B|", classical_determinants),
        ("Kravitsky identity", kravitsky),
        ("classical counting", classical_counting),
        ("line image of the Pythagorean parametrization", line_image),
        ("shift intertwining", shift_intertwining),
        ("generalized shift rank", generalized_rank),
        ("curve counting", curve_counting),
        ("pairing identity", pairing),
        ("Bezout-Vandermonde identity", bezout_vandermonde),
        ("generalized Kravitsky identity", generalized_kravitsky),
        ("image construction", image_construction),
        ("composition", composition),
        ("equivalence preservation", equivalence),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({secs:.2}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail} ({secs:.2}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
