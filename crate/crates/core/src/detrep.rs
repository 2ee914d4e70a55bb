//! Determinantal representations `det(x0 D0 + x1 D1 + x2 D2)` of plane
//! curves.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{HomPoly3, MultiIndex3, UniPoly};
use crate::roots::{complex_roots, rational_roots};
use crate::scalar::{q, Field, Rational, C64};

/// Relative threshold below which a float pencil is treated as singular.
pub const FLOAT_KERNEL_TOL: f64 = 1e-8;

/// Symbolic determinant of `x0 M0 + x1 M1 + x2 M2` by Laplace expansion
/// along rows, memoized on the set of columns already used.
pub fn pencil_det_poly<T: Field>(mats: &[Matrix<T>; 3]) -> HomPoly3<T> {
    let m = mats[0].rows();
    assert!(m < 32, "pencil too large for symbolic expansion");
    let entry = |i: usize, j: usize| {
        HomPoly3::linear([
            mats[0][(i, j)].clone(),
            mats[1][(i, j)].clone(),
            mats[2][(i, j)].clone(),
        ])
    };
    let entries: Vec<Vec<HomPoly3<T>>> = (0..m).map(|i| (0..m).map(|j| entry(i, j)).collect()).collect();
    let mut memo: HashMap<u32, HomPoly3<T>> = HashMap::new();
    minor(&entries, 0, m, &mut memo)
}

fn minor<T: Field>(e: &[Vec<HomPoly3<T>>], used: u32, m: usize, memo: &mut HashMap<u32, HomPoly3<T>>) -> HomPoly3<T> {
    let row = used.count_ones() as usize;
    if row == m {
        return HomPoly3::constant(T::one());
    }
    if let Some(v) = memo.get(&used) {
        return v.clone();
    }
    let mut acc = HomPoly3::zero(m - row);
    let mut sign_neg = false;
    for c in 0..m {
        if used & (1 << c) != 0 {
            continue;
        }
        if !e[row][c].is_zero() {
            let sub = minor(e, used | (1 << c), m, memo);
            let term = e[row][c].mul(&sub);
            let term = if sign_neg { term.neg() } else { term };
            acc = acc.add(&term).expect("same degree");
        }
        sign_neg = !sign_neg;
    }
    memo.insert(used, acc.clone());
    acc
}

fn all_negligible<T: Field>(p: &HomPoly3<T>) -> bool {
    if T::EXACT {
        p.is_zero()
    } else {
        p.coeffs().iter().all(|c| c.modulus() <= 1e-12)
    }
}

/// A projective point, scaled so that its first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint<T> {
    coords: [T; 3],
}

impl<T: Field> CurvePoint<T> {
    pub fn new(coords: [T; 3]) -> Result<Self> {
        let k = first_nonzero(&coords).ok_or_else(|| Error::InvalidInput("point (0, 0, 0)".into()))?;
        let s = coords[k].clone();
        Ok(Self {
            coords: coords.map(|c| c / s.clone()),
        })
    }

    pub fn coords(&self) -> &[T; 3] {
        &self.coords
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> CurvePoint<U> {
        CurvePoint::new([f(&self.coords[0]), f(&self.coords[1]), f(&self.coords[2])])
            .expect("nonzero coordinates stay nonzero")
    }
}

/// Index of the first entry that is nonzero (float: above `1e-12` of the
/// largest modulus).
fn first_nonzero<T: Field>(v: &[T]) -> Option<usize> {
    let top = v.iter().map(Field::modulus).fold(0.0, f64::max);
    if top == 0.0 {
        return None;
    }
    v.iter().position(|c| {
        if T::EXACT {
            !c.is_zero()
        } else {
            c.modulus() > 1e-12 * top
        }
    })
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn normalize_first<T: Field>(v: &[T]) -> Vec<T> {
    match first_nonzero(v) {
        Some(k) => {
            let s = v[k].clone();
            v.iter().map(|c| c.clone() / s.clone()).collect()
        }
        None => v.to_vec(),
    }
}

/// A curve point together with a kernel vector `e` of the pencil there.
#[derive(Clone, Debug, PartialEq)]
pub struct PointWithKernel<T> {
    pub point: CurvePoint<T>,
    /// Kernel vector, first nonzero entry 1.
    pub e: Vec<T>,
    /// Complete kernel basis; more than one vector at singular points.
    pub kernel: Vec<Vec<T>>,
}

impl<T: Field> PointWithKernel<T> {
    pub fn is_multi_dim(&self) -> bool {
        self.kernel.len() > 1
    }

    pub fn x(&self) -> &[T; 3] {
        self.point.coords()
    }
}

/// The pencil `x0 D0 + x1 D1 + x2 D2` of square matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct DetRep<T: Field> {
    d: [Matrix<T>; 3],
    hermitian: bool,
    det: HomPoly3<T>,
}

impl<T: Field> DetRep<T> {
    /// Validates shapes and rejects pencils with identically vanishing
    /// determinant. Non-hermitian pencils are accepted with a warning.
    pub fn new(d0: Matrix<T>, d1: Matrix<T>, d2: Matrix<T>) -> Result<Self> {
        let m = d0.rows();
        for d in [&d0, &d1, &d2] {
            if !d.is_square() {
                return Err(Error::NotSquare {
                    rows: d.rows(),
                    cols: d.cols(),
                });
            }
            if d.rows() != m {
                return Err(Error::Shape(format!("pencil matrices of sizes {m} and {}", d.rows())));
            }
        }
        if m == 0 {
            return Err(Error::InvalidInput("empty pencil".into()));
        }
        let d = [d0, d1, d2];
        let det = pencil_det_poly(&d);
        if all_negligible(&det) {
            return Err(Error::DegeneratePencil);
        }
        let hermitian = d.iter().all(Matrix::is_hermitian);
        if !hermitian {
            log::warn!("pencil matrices are not hermitian");
        }
        Ok(Self { d, hermitian, det })
    }

    pub fn m(&self) -> usize {
        self.d[0].rows()
    }

    pub fn matrices(&self) -> &[Matrix<T>; 3] {
        &self.d
    }

    pub fn d(&self, i: usize) -> &Matrix<T> {
        &self.d[i]
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `det(x0 D0 + x1 D1 + x2 D2)`, a form of degree `m`.
    pub fn det_poly(&self) -> &HomPoly3<T> {
        &self.det
    }

    pub fn pencil_at(&self, x: &[T; 3]) -> Matrix<T> {
        let m = self.m();
        Matrix::from_fn(m, m, |i, j| {
            x[0].clone() * self.d[0][(i, j)].clone()
                + x[1].clone() * self.d[1][(i, j)].clone()
                + x[2].clone() * self.d[2][(i, j)].clone()
        })
    }

    /// Whether `x` lies on the curve (float: relative residual check).
    pub fn contains_point(&self, x: &[T; 3]) -> bool {
        if T::EXACT {
            return self.det.evaluate(x).is_zero();
        }
        self.pencil_at(x).rank_with_tol(Some(FLOAT_KERNEL_TOL)) < self.m()
    }

    /// Kernel of the pencil at a curve point.
    pub fn kernel_at(&self, point: &CurvePoint<T>) -> Result<PointWithKernel<T>> {
        let a = self.pencil_at(point.coords());
        let k = if T::EXACT {
            a.kernel_basis()
        } else {
            a.kernel_basis_with_tol(Some(FLOAT_KERNEL_TOL))
        };
        if k.dim() == 0 {
            return Err(Error::PointNotOnCurve);
        }
        let kernel: Vec<Vec<T>> = (0..k.dim()).map(|j| normalize_first(&k.column(j))).collect();
        Ok(PointWithKernel {
            point: point.clone(),
            e: kernel[0].clone(),
            kernel,
        })
    }

    /// `P D_i P*` for each `i`.
    pub fn transform(&self, p: &Matrix<T>) -> Result<Self> {
        if p.shape() != (self.m(), self.m()) {
            return Err(Error::Shape("transform must be m x m".into()));
        }
        p.inverse()?;
        let ps = p.conj_transpose();
        let t = |d: &Matrix<T>| p.mul(d).and_then(|x| x.mul(&ps));
        Self::new(t(&self.d[0])?, t(&self.d[1])?, t(&self.d[2])?)
    }

    /// Pencil whose determinant is `Delta(A x)`: `D'_j = sum_i A[i][j] D_i`.
    pub fn linear_change(&self, a: &Matrix<T>) -> Result<Self> {
        if a.shape() != (3, 3) {
            return Err(Error::Shape("change of variables must be 3 x 3".into()));
        }
        a.inverse()?;
        let m = self.m();
        let comb = |j: usize| {
            Matrix::from_fn(m, m, |r, c| {
                (0..3).fold(T::zero(), |acc, i| acc + a[(i, j)].clone() * self.d[i][(r, c)].clone())
            })
        };
        Self::new(comb(0), comb(1), comb(2))
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U + Copy) -> Result<DetRep<U>> {
        DetRep::new(self.d[0].map(f), self.d[1].map(f), self.d[2].map(f))
    }

    pub fn to_complex(&self) -> DetRep<C64> {
        self.map(|c| c.to_complex())
            .expect("complexification keeps the determinant")
    }

    /// All intersections with the line `l . x = 0`, computed numerically
    /// from the restriction of the determinant.
    pub fn sample_points_complex(&self, line: &[T; 3]) -> Result<Vec<CurvePoint<C64>>> {
        let (u, v) = line_basis(line)?;
        let c = self.det.restrict_to_line(&u, &v);
        let cc: Vec<C64> = c.iter().map(Field::to_complex).collect();
        let scale = cc.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale <= 1e-12 * self.det.coeffs().iter().map(Field::modulus).fold(0.0, f64::max) {
            return Err(Error::LineInCurve);
        }
        let uc = u.map(|z| z.to_complex());
        let vc = v.map(|z| z.to_complex());
        let roots = complex_roots(&cc);
        let mut out: Vec<CurvePoint<C64>> = roots
            .iter()
            .map(|t| CurvePoint::new([0, 1, 2].map(|k| uc[k] + t * vc[k])))
            .collect::<Result<_>>()?;
        for _ in roots.len()..self.m() {
            out.push(CurvePoint::new(vc)?);
        }
        Ok(out)
    }
}

/// Two vectors spanning the plane `l . x = 0`, with the coordinate of the
/// last nonzero entry of `l` eliminated.
pub fn line_basis<T: Field>(line: &[T; 3]) -> Result<([T; 3], [T; 3])> {
    let k = (0..3)
        .rev()
        .find(|&k| !line[k].is_zero())
        .ok_or_else(|| Error::InvalidInput("line with all coefficients zero".into()))?;
    let mut vs = (0..3).filter(|&j| j != k).map(|j| {
        let mut v = [T::zero(), T::zero(), T::zero()];
        v[j] = T::one();
        v[k] = -(line[j].clone() / line[k].clone());
        v
    });
    let u = vs.next().expect("two free coordinates");
    let v = vs.next().expect("two free coordinates");
    Ok((u, v))
}

impl DetRep<Rational> {
    /// Rational intersections with the line `l . x = 0`, without repetition.
    pub fn sample_points(&self, line: &[Rational; 3]) -> Result<Vec<CurvePoint<Rational>>> {
        let (u, v) = line_basis(line)?;
        let c = self.det.restrict_to_line(&u, &v);
        if c.iter().all(|x| x == &q(0)) {
            return Err(Error::LineInCurve);
        }
        let mut out = Vec::new();
        let poly = UniPoly::new(c.clone())?;
        let roots = rational_roots(&poly)
            .ok_or_else(|| Error::Unsupported("coefficients too large for rational root search".into()))?;
        for (t, _) in roots {
            out.push(CurvePoint::new(
                [0, 1, 2].map(|k| u[k].clone() + t.clone() * v[k].clone()),
            )?);
        }
        if c[self.m()] == q(0) {
            out.push(CurvePoint::new(v)?);
        }
        Ok(out)
    }

    /// Heuristic reducibility findings: every rational line contained in
    /// the curve is detected. Factorizations into higher degree components
    /// are not searched for.
    pub fn reducibility_findings(&self) -> Vec<String> {
        let mut found = Vec::new();
        let mut points: Vec<CurvePoint<Rational>> = Vec::new();
        let coordinate_lines = [[q(1), q(0), q(0)], [q(0), q(1), q(0)], [q(0), q(0), q(1)]];
        for l in &coordinate_lines {
            match self.sample_points(l) {
                Ok(ps) => {
                    for p in ps {
                        if !points.contains(&p) {
                            points.push(p);
                        }
                    }
                }
                Err(Error::LineInCurve) => found.push(format!("curve contains the line {}", line_text(l))),
                Err(_) => {}
            }
        }
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                let l = cross(points[a].coords(), points[b].coords());
                if coordinate_lines.iter().any(|c| proportional(c, &l)) {
                    continue;
                }
                let (u, v) = line_basis(&l).expect("distinct points span a line");
                if self.det.restrict_to_line(&u, &v).iter().all(|c| c == &q(0)) {
                    let text = format!("curve contains the line {}", line_text(&l));
                    if !found.contains(&text) {
                        found.push(text);
                    }
                }
            }
        }
        found
    }

    /// Logs a warning for each reducibility finding.
    pub fn warn_if_reducible(&self) {
        for f in self.reducibility_findings() {
            log::warn!("{f}");
        }
    }
}

fn cross<T: Field>(a: &[T; 3], b: &[T; 3]) -> [T; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

fn proportional<T: Field>(a: &[T; 3], b: &[T; 3]) -> bool {
    cross(a, b).iter().all(Field::is_zero)
}

fn line_text<T: Field>(l: &[T; 3]) -> String {
    format!("{} = 0", HomPoly3::linear(l.clone()))
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "")]
struct DetRepJson<T: Field> {
    m: usize,
    #[serde(rename = "D0")]
    d0: Matrix<T>,
    #[serde(rename = "D1")]
    d1: Matrix<T>,
    #[serde(rename = "D2")]
    d2: Matrix<T>,
    #[serde(default)]
    hermitian: bool,
}

impl<T: Field> Serialize for DetRep<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DetRepJson {
            m: self.m(),
            d0: self.d[0].clone(),
            d1: self.d[1].clone(),
            d2: self.d[2].clone(),
            hermitian: self.hermitian,
        }
        .serialize(s)
    }
}

impl<'de, T: Field> Deserialize<'de> for DetRep<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = DetRepJson::<T>::deserialize(d)?;
        let rep = DetRep::new(j.d0, j.d1, j.d2).map_err(D::Error::custom)?;
        if rep.m() != j.m {
            return Err(D::Error::custom(format!(
                "declared m = {} but matrices are {}x{}",
                j.m,
                rep.m(),
                rep.m()
            )));
        }
        if j.hermitian && !rep.hermitian {
            return Err(D::Error::custom("declared hermitian but the matrices are not"));
        }
        Ok(rep)
    }
}

fn int_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).expect("rectangular literal")
}

/// Conic `x0^2 - x1^2 - x2^2` with `D0 = I`, `D1 = diag(1, -1)`,
/// `D2 = [[0, 1], [1, 0]]`. Parametrized by `(s^2 + t^2, 2st, s^2 - t^2)`.
pub fn conic() -> DetRep<Rational> {
    DetRep::new(
        int_matrix(&[&[1, 0], &[0, 1]]),
        int_matrix(&[&[1, 0], &[0, -1]]),
        int_matrix(&[&[0, 1], &[1, 0]]),
    )
    .expect("fixture")
}

/// Smooth irreducible cubic
/// `x0^3 - x0^2 x2 - x0 x1^2 - 2 x0 x2^2 + x1^2 x2` with real symmetric
/// `D0 = I`, `D1 = diag(1, -1, 0)`, `D2 = [[0, 0, 1], [0, 0, -1], [1, -1, -1]]`.
pub fn cubic() -> DetRep<Rational> {
    DetRep::new(
        int_matrix(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        int_matrix(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]),
        int_matrix(&[&[0, 0, 1], &[0, 0, -1], &[1, -1, -1]]),
    )
    .expect("fixture")
}

/// Exponent triple helper used by fixtures and tests.
pub fn mono(i0: usize, i1: usize, i2: usize) -> MultiIndex3 {
    MultiIndex3::new(i0, i1, i2)
}
