//! Determinantal representations of images of curves under rational maps.
//!
//! For a map `r = (p0, p1, p2)` of degree `n` on a curve with an `m x m`
//! representation, the image `r(C)` is represented by
//!
//! ```text
//! x0 B(p1, p2) + x1 B(p2, p0) + x2 B(p0, p1)
//! ```
//!
//! with each Bezout matrix restricted to `V_n`, and further compressed to
//! the orthogonal complement of the basepoint Vandermonde vectors when `r`
//! has basepoints on the curve.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::CurveElim;
use crate::detrep::{pencil_det_poly, CurvePoint, DetRep};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{HomPoly3, MonomialOrder};
use crate::scalar::{Field, Rational, C64};

/// A rational map of the plane given by three forms of a common degree,
/// with the basepoints on the source curve declared by the caller.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap<T: Field> {
    forms: [HomPoly3<T>; 3],
    basepoints: Vec<CurvePoint<T>>,
}

impl<T: Field> RationalMap<T> {
    /// Checks the degrees and that the image is not a single point.
    pub fn new(forms: [HomPoly3<T>; 3], basepoints: Vec<CurvePoint<T>>) -> Result<Self> {
        let n = forms[0].degree();
        if let Some(f) = forms.iter().find(|f| f.degree() != n) {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: f.degree(),
            });
        }
        if n == 0 {
            return Err(Error::InvalidInput("map components must have positive degree".into()));
        }
        let coeffs = Matrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect())?;
        if coeffs.rank() < 2 {
            return Err(Error::InvalidInput(
                "map components are proportional; the image is a point".into(),
            ));
        }
        Ok(Self { forms, basepoints })
    }

    pub fn identity() -> Self {
        Self::new([0, 1, 2].map(HomPoly3::variable), Vec::new()).expect("coordinate forms")
    }

    pub fn degree(&self) -> usize {
        self.forms[0].degree()
    }

    pub fn forms(&self) -> &[HomPoly3<T>; 3] {
        &self.forms
    }

    pub fn basepoints(&self) -> &[CurvePoint<T>] {
        &self.basepoints
    }

    pub fn apply(&self, x: &[T; 3]) -> [T; 3] {
        [0, 1, 2].map(|i| self.forms[i].evaluate(x))
    }

    /// `self o r`. Basepoints of `r` carry over; preimages of basepoints of
    /// `self` would have to be solved for, so they are not supported.
    pub fn compose_after(&self, r: &RationalMap<T>) -> Result<Self> {
        if !self.basepoints.is_empty() {
            return Err(Error::Unsupported(
                "composition with an outer map that has basepoints".into(),
            ));
        }
        let forms = [0, 1, 2].map(|i| self.forms[i].compose(&r.forms));
        let [a, b, c] = forms;
        Self::new([a?, b?, c?], r.basepoints.clone())
    }

    /// Every declared basepoint must lie on the curve and be a common zero
    /// of the three forms. Warns when pairwise counts along the curve hint
    /// at basepoints that were not declared.
    pub fn validate(&self, ce: &CurveElim<T>) -> Result<()> {
        for b in &self.basepoints {
            if !ce.rep().contains_point(b.coords()) {
                return Err(Error::InvalidBasepoint(format!(
                    "{} is not on the curve",
                    point_text(b)
                )));
            }
            let v = self.apply(b.coords());
            if !v.iter().all(|c| negligible(c, 1.0)) {
                return Err(Error::InvalidBasepoint(format!(
                    "the map does not vanish at {}",
                    point_text(b)
                )));
            }
        }
        if self.forms.iter().any(HomPoly3::is_zero) {
            return Ok(());
        }
        let c01 = ce.count_common_zeros_bezout(&self.forms[0], &self.forms[1])?;
        let c02 = ce.count_common_zeros_bezout(&self.forms[0], &self.forms[2])?;
        if c01.min(c02) > 0 && self.basepoints.is_empty() {
            log::warn!(
                "component pairs share {c01} and {c02} zeros on the curve; the map may have undeclared basepoints"
            );
        }
        Ok(())
    }

    pub fn to_complex(&self) -> RationalMap<C64> {
        RationalMap {
            forms: [0, 1, 2].map(|i| self.forms[i].map(Field::to_complex)),
            basepoints: self.basepoints.iter().map(|b| b.map(Field::to_complex)).collect(),
        }
    }
}

fn negligible<T: Field>(c: &T, scale: f64) -> bool {
    if T::EXACT {
        c.is_zero()
    } else {
        c.modulus() <= 1e-9 * scale.max(1.0)
    }
}

fn point_text<T: Field>(p: &CurvePoint<T>) -> String {
    let c = p.coords();
    format!("({}, {}, {})", c[0].to_text(), c[1].to_text(), c[2].to_text())
}

/// Basis of `V_n` minus the basepoint directions, in `V_n` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSubspace<T: Field> {
    /// `nm x dim` matrix; the identity when there are no basepoints.
    pub basis: Matrix<T>,
}

impl<T: Field> ReducedSubspace<T> {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }
}

/// Orthogonal complement in `V_n` (standard inner product on `W_n`) of the
/// Vandermonde vectors at the basepoints, one per kernel vector.
pub fn reduced_subspace<T: Field>(ce: &CurveElim<T>, r: &RationalMap<T>) -> Result<ReducedSubspace<T>> {
    let n = r.degree();
    let vn = ce.principal_subspace(n)?;
    let q = vn.basis.matrix();
    if r.basepoints.is_empty() {
        return Ok(ReducedSubspace {
            basis: Matrix::identity(q.cols()),
        });
    }
    let mut rows = Vec::new();
    for b in &r.basepoints {
        let pk = ce.rep().kernel_at(b)?;
        for e in &pk.kernel {
            let v = crate::curve::vandermonde_blocks(b.coords(), e, n);
            let g = Matrix::column_vector(v).conj_transpose().mul(q)?;
            rows.push(g.row(0).to_vec());
        }
    }
    let g = Matrix::from_rows(rows)?;
    Ok(ReducedSubspace {
        basis: g.kernel_basis().matrix().clone(),
    })
}

/// The three restricted Bezout matrices `B'(p1,p2), B'(p2,p0), B'(p0,p1)`
/// on `V_n`, before basepoint reduction.
pub fn unreduced_pencil<T: Field>(ce: &CurveElim<T>, r: &RationalMap<T>) -> Result<[Matrix<T>; 3]> {
    let f = &r.forms;
    Ok([
        ce.restricted_bezout(&f[1], &f[2])?,
        ce.restricted_bezout(&f[2], &f[0])?,
        ce.restricted_bezout(&f[0], &f[1])?,
    ])
}

/// A pencil representing the image curve.
#[derive(Clone, Debug, PartialEq)]
pub struct ImagePencil<T: Field> {
    mats: [Matrix<T>; 3],
    det: HomPoly3<T>,
    reduced: ReducedSubspace<T>,
    map: RationalMap<T>,
}

impl<T: Field> ImagePencil<T> {
    pub fn matrices(&self) -> &[Matrix<T>; 3] {
        &self.mats
    }

    pub fn det_poly(&self) -> &HomPoly3<T> {
        &self.det
    }

    pub fn size(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn reduced_subspace(&self) -> &ReducedSubspace<T> {
        &self.reduced
    }

    pub fn map(&self) -> &RationalMap<T> {
        &self.map
    }

    pub fn to_detrep(&self) -> Result<DetRep<T>> {
        let [a, b, c] = self.mats.clone();
        DetRep::new(a, b, c)
    }
}

/// Builds the image pencil of `r` on the curve of `ce`.
pub fn image_pencil<T: Field>(ce: &CurveElim<T>, r: &RationalMap<T>) -> Result<ImagePencil<T>> {
    r.validate(ce)?;
    let reduced = reduced_subspace(ce, r)?;
    let raw = unreduced_pencil(ce, r)?;
    let rb = &reduced.basis;
    let rh = rb.conj_transpose();
    let compress = |m: &Matrix<T>| rh.mul(m).and_then(|x| x.mul(rb));
    let mats = [compress(&raw[0])?, compress(&raw[1])?, compress(&raw[2])?];
    let det = pencil_det_poly(&mats);
    let scale = mats.iter().map(Matrix::max_modulus).fold(0.0, f64::max);
    if det.coeffs().iter().all(|c| negligible(c, scale.powi(rb.cols() as i32))) {
        log::warn!(
            "image pencil of size {} (V_n dimension {}, {} declared basepoints) has vanishing determinant",
            rb.cols(),
            rb.rows(),
            r.basepoints.len()
        );
        return Err(Error::DegeneratePencil);
    }
    let pencil = ImagePencil {
        mats,
        det,
        reduced,
        map: r.clone(),
    };
    debug_assert!(
        spot_check(ce, &pencil),
        "image determinant does not vanish on sampled points"
    );
    Ok(pencil)
}

fn spot_check<T: Field>(ce: &CurveElim<T>, pencil: &ImagePencil<T>) -> bool {
    let line = [1, -2, 3].map(T::from_i64);
    match float_residuals(ce.rep(), pencil, &line) {
        Ok(res) => res.iter().all(|&r| r <= 1e-6),
        Err(_) => true,
    }
}

/// Relative residuals `|det M(r(x))|` at the numerically computed
/// intersections of the curve with `line`, skipping points near basepoints.
fn float_residuals<T: Field>(rep: &DetRep<T>, pencil: &ImagePencil<T>, line: &[T; 3]) -> Result<Vec<f64>> {
    let points = rep.sample_points_complex(line)?;
    let forms = pencil.map.forms.clone().map(|f| f.map(Field::to_complex));
    let det = pencil.det.map(Field::to_complex);
    let dscale = det.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let fscale = forms
        .iter()
        .flat_map(|f| f.coeffs().iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    let mut out = Vec::new();
    for p in points {
        let x = p.coords();
        let xs = x.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let y: [C64; 3] = [0, 1, 2].map(|i| forms[i].evaluate(x));
        let ys = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if ys <= 1e-6 * fscale * xs.powi(pencil.map.degree() as i32) {
            continue;
        }
        let v = det.evaluate(&y).norm();
        out.push(v / (dscale * ys.powi(det.degree() as i32)));
    }
    Ok(out)
}

/// Outcome of sampling the image determinant along the curve.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ImageReport {
    pub exact_samples: usize,
    pub float_samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Samples `lines` random lines (seeded) and checks that the image
/// determinant vanishes at `r(x)` for curve points `x`; float only.
pub fn verify_image_float<T: Field>(
    ce: &CurveElim<T>,
    pencil: &ImagePencil<T>,
    lines: usize,
    seed: u64,
    tol: f64,
) -> ImageReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ImageReport {
        exact_samples: 0,
        float_samples: 0,
        max_residual: 0.0,
        tolerance: tol,
        passed: true,
    };
    for _ in 0..lines {
        let line = random_line(&mut rng).map(T::from_i64);
        if let Ok(res) = float_residuals(ce.rep(), pencil, &line) {
            report.float_samples += res.len();
            report.max_residual = res.iter().copied().fold(report.max_residual, f64::max);
        }
    }
    report.passed = report.max_residual <= tol;
    report
}

fn random_line(rng: &mut ChaCha8Rng) -> [i64; 3] {
    loop {
        let l = [0; 3].map(|_| rng.random_range(-5..=5));
        if l != [0; 3] {
            return l;
        }
    }
}

/// Rational curve points on the coordinate lines.
fn rational_seed_points(rep: &DetRep<Rational>) -> Vec<CurvePoint<Rational>> {
    let mut pts: Vec<CurvePoint<Rational>> = Vec::new();
    for k in 0..3 {
        let mut l = [0, 0, 0].map(Rational::from_i64);
        l[k] = Rational::from_i64(1);
        for p in rep.sample_points(&l).unwrap_or_default() {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts
}

/// Exact where possible: random lines through known rational curve points
/// give exact intersection points, which are checked exactly; lines whose
/// intersections are not all rational are checked numerically.
pub fn verify_image(
    ce: &CurveElim<Rational>,
    pencil: &ImagePencil<Rational>,
    lines: usize,
    seed: u64,
    tol: f64,
) -> ImageReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds = rational_seed_points(ce.rep());
    let mut report = ImageReport {
        exact_samples: 0,
        float_samples: 0,
        max_residual: 0.0,
        tolerance: tol,
        passed: true,
    };
    let mut exact_ok = true;
    for _ in 0..lines {
        let line = if seeds.is_empty() {
            random_line(&mut rng).map(Rational::from_i64)
        } else {
            let a = seeds[rng.random_range(0..seeds.len())].coords().clone();
            let b = random_line(&mut rng).map(Rational::from_i64);
            let l = [
                a[1].clone() * &b[2] - &a[2] * &b[1],
                a[2].clone() * &b[0] - &a[0] * &b[2],
                a[0].clone() * &b[1] - &a[1] * &b[0],
            ];
            if l.iter().all(|c| c.is_zero()) {
                continue;
            }
            l
        };
        let exact = match ce.rep().sample_points(&line) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if exact.len() == ce.m() {
            for p in exact {
                let y = pencil.map.apply(p.coords());
                if y.iter().all(|c| c.is_zero()) {
                    continue;
                }
                report.exact_samples += 1;
                let v = pencil.det.evaluate(&y);
                if !v.is_zero() {
                    exact_ok = false;
                    report.max_residual = report.max_residual.max(v.modulus());
                }
            }
        } else if let Ok(res) = float_residuals(ce.rep(), pencil, &line) {
            report.float_samples += res.len();
            report.max_residual = res.iter().copied().fold(report.max_residual, f64::max);
        }
    }
    report.passed = exact_ok && report.max_residual <= tol;
    report
}

/// Whether `(p0(x) B'(p1,p2) + p1(x) B'(p2,p0) + p2(x) B'(p0,p1))` kills the
/// coordinates of the Vandermonde vector at `x`.
pub fn vanishing_combination_check<T: Field>(
    ce: &CurveElim<T>,
    r: &RationalMap<T>,
    pk: &crate::detrep::PointWithKernel<T>,
) -> Result<bool> {
    if !ce.rep().contains_point(pk.x()) {
        return Err(Error::PointNotOnCurve);
    }
    let n = r.degree();
    let raw = unreduced_pencil(ce, r)?;
    let y = r.apply(pk.x());
    let comb = raw[0]
        .scale(&y[0])
        .add(&raw[1].scale(&y[1]))?
        .add(&raw[2].scale(&y[2]))?;
    let v = ce.curve_vandermonde(pk, n);
    let c = ce.principal_subspace(n)?.basis.solve_in_span(&v)?;
    let out = comb.mul_vec(&c)?;
    let scale = comb.max_modulus() * c.iter().map(Field::modulus).fold(0.0, f64::max);
    Ok(out.iter().all(|z| negligible(z, scale)))
}

/// `Some(s)` with `b = s a` when the forms are proportional with a nonzero
/// factor. Both are normalized by the coefficient of `a` at its first
/// nonzero position in [`MonomialOrder`].
pub fn proportionality<T: Field>(a: &HomPoly3<T>, b: &HomPoly3<T>) -> Option<T> {
    if a.degree() != b.degree() {
        return None;
    }
    let ascale = a.coeffs().iter().map(Field::modulus).fold(0.0, f64::max);
    let bscale = b.coeffs().iter().map(Field::modulus).fold(0.0, f64::max);
    let k = a.coeffs().iter().position(|c| !negligible_rel(c, ascale))?;
    let s = b.coeffs()[k].clone() / a.coeffs()[k].clone();
    if negligible_rel(&b.coeffs()[k], bscale) {
        return None;
    }
    let ok = a
        .coeffs()
        .iter()
        .zip(b.coeffs())
        .all(|(x, y)| negligible_rel(&(y.clone() - s.clone() * x.clone()), bscale));
    ok.then_some(s)
}

fn negligible_rel<T: Field>(c: &T, scale: f64) -> bool {
    if T::EXACT {
        c.is_zero()
    } else {
        c.modulus() <= 1e-9 * scale
    }
}

/// Outcome of comparing the two constructions for a composite map.
#[derive(Clone, Debug, PartialEq)]
pub struct ComposeReport<T: Field> {
    /// Image pencil of `s o r` built directly on the source curve.
    pub det_direct: HomPoly3<T>,
    /// Image pencil of `s` built on the image representation of `r`.
    pub det_via_image: HomPoly3<T>,
    /// `det_via_image = scale * det_direct` when proportional.
    pub scale: Option<T>,
    /// Result of the congruence check through `tau`, when it was run.
    pub tau_identity: Option<bool>,
}

impl<T: Field> ComposeReport<T> {
    pub fn proportional(&self) -> bool {
        self.scale.is_some()
    }

    pub fn passed(&self) -> bool {
        self.proportional() && self.tau_identity != Some(false)
    }
}

/// Compares the two image representations of `s(r(C))`. With `with_tau`
/// and no basepoints on `r`, also checks
/// `Q^T B_C(s_i o r, s_j o r) Q = tau^T B_{r(C)}(s_i, s_j) tau` for the
/// three pencil pairs; this is limited to `n k <= 4`.
pub fn compose_check<T: Field>(
    ce: &CurveElim<T>,
    r: &RationalMap<T>,
    s: &RationalMap<T>,
    with_tau: bool,
) -> Result<ComposeReport<T>> {
    let composite = s.compose_after(r)?;
    let direct = image_pencil(ce, &composite)?;
    let first = image_pencil(ce, r)?;
    let ce_image = CurveElim::new(first.to_detrep()?);
    let via = image_pencil(&ce_image, s)?;
    let scale = proportionality(direct.det_poly(), via.det_poly());
    let (n, k) = (r.degree(), s.degree());
    let tau_identity = if with_tau && r.basepoints.is_empty() && n * k <= 4 {
        Some(tau_identity_holds(ce, &ce_image, r, s, &composite)?)
    } else {
        None
    };
    Ok(ComposeReport {
        det_direct: direct.det_poly().clone(),
        det_via_image: via.det_poly().clone(),
        scale,
        tau_identity,
    })
}

/// `tau : V_nk -> W_k(r(C))`. The block of `tau w` for `|i| = k - 1` is the
/// `V_n` coordinate vector of `S(p^i) w`, where
/// `(S(alpha) w)_l = sum_a alpha_a w_{a + l}` for `|l| = n - 1`.
pub fn tau_matrix<T: Field>(ce: &CurveElim<T>, r: &RationalMap<T>, k: usize) -> Result<Matrix<T>> {
    let n = r.degree();
    let m = ce.m();
    let vnk = ce.principal_subspace(n * k)?;
    let vn = ce.principal_subspace(n)?;
    let outer = MonomialOrder::new(k - 1);
    let inner = MonomialOrder::new(n - 1);
    let f = &r.forms;
    let mut cols = Vec::with_capacity(vnk.basis.dim());
    for j in 0..vnk.basis.dim() {
        let w = vnk.basis.column(j);
        let mut col = Vec::new();
        for i in outer.iter() {
            let alpha = f[0].pow(i.i0).mul(&f[1].pow(i.i1)).mul(&f[2].pow(i.i2));
            let mut sw = vec![T::zero(); inner.len() * m];
            for (l_pos, l) in inner.iter().enumerate() {
                for (a, c) in alpha.terms() {
                    let src = a.add(l).position();
                    for t in 0..m {
                        sw[l_pos * m + t] = sw[l_pos * m + t].clone() + c.clone() * w[src * m + t].clone();
                    }
                }
            }
            col.extend(vn.basis.solve_in_span(&sw)?);
        }
        cols.push(col);
    }
    Matrix::from_columns(outer.len() * vn.basis.dim(), &cols)
}

fn tau_identity_holds<T: Field>(
    ce: &CurveElim<T>,
    ce_image: &CurveElim<T>,
    r: &RationalMap<T>,
    s: &RationalMap<T>,
    composite: &RationalMap<T>,
) -> Result<bool> {
    let tau = tau_matrix(ce, r, s.degree())?;
    let tt = tau.transpose();
    for (i, j) in [(1, 2), (2, 0), (0, 1)] {
        let lhs = ce.restricted_bezout(&composite.forms[i], &composite.forms[j])?;
        let b = ce_image.blown_bezout(&s.forms[i], &s.forms[j])?;
        let rhs = tt.mul(&b)?.mul(&tau)?;
        if !crate::classical::matrices_agree(&lhs, &rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image pencils from `D` and from `P D P*` have proportional determinants.
pub fn equivalence_preservation_check<T: Field>(
    ce: &CurveElim<T>,
    p: &Matrix<T>,
    r: &RationalMap<T>,
) -> Result<Option<T>> {
    let other = CurveElim::new(ce.rep().transform(p)?);
    let a = image_pencil(ce, r)?;
    let b = image_pencil(&other, r)?;
    Ok(proportionality(a.det_poly(), b.det_poly()))
}
