//! The commuting frame `Y1 = x1 d1 + x2 d2`, `Y2 = x1 d2 - x2 d1`,
//! `Y3 = x3 d3` and the operators `X1, X2, X3` it induces.
//!
//! A cochain in this frame carries numerators over the fixed denominator
//! `D = (x1^2 + x2^2) x3 = det(Y1, Y2, Y3)`. All numerators of one cochain
//! share a bigrade `(k, r)`; the space of `p / D` with `p` homogeneous of
//! bigrade `(k, r)` is written `Q_kr` and has dimension `k + 1`.

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{kernel_basis, rat, Matrix3, RatMatrix, Rational, SubspaceBasis};
use crate::multivector::{basis_len, MultiVector};
use crate::poly::{Bigrade, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum YFrameError {
    #[error("component {component} is not homogeneous of bigrade {grade}: {poly}")]
    Inhomogeneous { component: usize, grade: Bigrade, poly: String },
    #[error("numerator {0} does not lie in a single bigrade")]
    Mixed(String),
}

/// Coefficient matrices of `Y1, Y2, Y3` in the `a_ij x_i d_j` convention.
pub fn y_matrices() -> [Matrix3; 3] {
    [
        Matrix3::unit(0, 0).add(&Matrix3::unit(1, 1)),
        Matrix3::unit(0, 1).sub(&Matrix3::unit(1, 0)),
        Matrix3::unit(2, 2),
    ]
}

pub fn y_fields() -> [MultiVector; 3] {
    let (x1, x2, x3) = (Poly::x1(), Poly::x2(), Poly::x3());
    [
        MultiVector::vector([x1.clone(), x2.clone(), Poly::zero()]),
        MultiVector::vector([-&x2, x1, Poly::zero()]),
        MultiVector::vector([Poly::zero(), Poly::zero(), x3]),
    ]
}

/// The wedge basis `(1)`, `(Y1, Y2, Y3)`, `(Y23, Y31, Y12)`, `(Y123)`,
/// expanded in the coordinate frame.
pub fn y_wedge_basis(degree: usize) -> Vec<MultiVector> {
    let [y1, y2, y3] = y_fields();
    let w = |a: &MultiVector, b: &MultiVector| a.wedge(b).expect("degree <= 3");
    match degree {
        0 => vec![MultiVector::function(Poly::one())],
        1 => vec![y1, y2, y3],
        2 => vec![w(&y2, &y3), w(&y3, &y1), w(&y1, &y2)],
        3 => vec![w(&w(&y1, &y2), &y3)],
        _ => panic!("degree must be at most 3"),
    }
}

/// Numerators over `D` of each coordinate basis element in the Y-frame:
/// row `j` lists the Y-components of the `j`-th coordinate wedge.
fn coordinate_to_y(degree: usize) -> Vec<Vec<Poly>> {
    let (x1, x2, x3) = (Poly::x1(), Poly::x2(), Poly::x3());
    let z = Poly::zero;
    match degree {
        0 => vec![vec![Poly::d()]],
        1 => vec![
            vec![&x1 * &x3, -&(&x2 * &x3), z()],
            vec![&x2 * &x3, &x1 * &x3, z()],
            vec![z(), z(), Poly::dprime()],
        ],
        2 => vec![vec![x1.clone(), -&x2, z()], vec![x2, x1, z()], vec![z(), z(), x3]],
        3 => vec![vec![Poly::one()]],
        _ => panic!("degree must be at most 3"),
    }
}

/// An element `numerator / D` of `Q_kr`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QElem {
    pub grade: Bigrade,
    pub numerator: Poly,
}

impl QElem {
    pub fn new(grade: Bigrade, numerator: Poly) -> Result<Self, YFrameError> {
        if !numerator.is_homogeneous_of(grade) {
            return Err(YFrameError::Inhomogeneous { component: 0, grade, poly: numerator.to_string() });
        }
        Ok(QElem { grade, numerator })
    }

    /// `numerator / D` for a homogeneous nonzero numerator.
    pub fn from_numerator(numerator: Poly) -> Result<Self, YFrameError> {
        match numerator.bigrade() {
            Ok(Some(grade)) => Ok(QElem { grade, numerator }),
            _ => Err(YFrameError::Mixed(numerator.to_string())),
        }
    }

    /// Coordinates in the basis `x1^l x2^(k-l) x3^(r-k) / D`, `l = 0..=k`.
    pub fn coords(&self) -> Vec<Rational> {
        self.grade.monomials().iter().map(|e| self.numerator.coeff(e)).collect()
    }

    pub fn from_coords(grade: Bigrade, c: &[Rational]) -> Self {
        assert_eq!(c.len(), grade.dim());
        QElem { grade, numerator: Poly::from_terms(grade.monomials().into_iter().zip(c.iter().cloned())) }
    }

    pub fn basis(grade: Bigrade, l: usize) -> Self {
        let mut c = vec![Rational::zero(); grade.dim()];
        c[l] = rat(1);
        QElem::from_coords(grade, &c)
    }
}

/// A cochain `sum_i (p_i / D) Y_(wedge i)` of one bigrade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YCochain {
    pub degree: usize,
    pub grade: Bigrade,
    pub numerators: Vec<Poly>,
}

impl YCochain {
    pub fn new(degree: usize, grade: Bigrade, numerators: Vec<Poly>) -> Result<Self, YFrameError> {
        assert_eq!(numerators.len(), basis_len(degree), "component count must match degree");
        for (component, p) in numerators.iter().enumerate() {
            if !p.is_homogeneous_of(grade) {
                return Err(YFrameError::Inhomogeneous { component, grade, poly: p.to_string() });
            }
        }
        Ok(YCochain { degree, grade, numerators })
    }

    pub fn component(&self, i: usize) -> QElem {
        QElem { grade: self.grade, numerator: self.numerators[i].clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(Poly::is_zero)
    }
}

impl std::fmt::Display for YCochain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        const NAMES: [&[&str]; 4] = [&["1"], &["Y1", "Y2", "Y3"], &["Y23", "Y31", "Y12"], &["Y123"]];
        let mut first = true;
        for (p, name) in self.numerators.iter().zip(NAMES[self.degree]) {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({p})/D*{name}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn y_numerators(c: &MultiVector) -> Vec<Poly> {
    let table = coordinate_to_y(c.degree());
    (0..basis_len(c.degree()))
        .map(|i| c.components().iter().zip(&table).fold(Poly::zero(), |acc, (cj, row)| &acc + &(cj * &row[i])))
        .collect()
}

/// Rewrites a coordinate-frame cochain in the Y-frame.
pub fn to_y_frame(c: &MultiVector, grade: Bigrade) -> Result<YCochain, YFrameError> {
    YCochain::new(c.degree(), grade, y_numerators(c))
}

/// Like [`to_y_frame`] but reads the bigrade off the numerators; a zero
/// cochain gets grade `(0, 0)`.
pub fn to_y_frame_graded(c: &MultiVector) -> Result<YCochain, YFrameError> {
    let nums = y_numerators(c);
    let grade = match nums.iter().find(|p| !p.is_zero()).map(Poly::bigrade) {
        Some(Ok(Some(g))) => g,
        Some(_) => return Err(YFrameError::Mixed(c.to_string())),
        None => Bigrade::new(0, 0),
    };
    YCochain::new(c.degree(), grade, nums)
}

/// The coordinate-frame cochain represented by `c`, or `None` when some
/// coefficient is not a polynomial (i.e. `c` has a supplementary part).
pub fn from_y_frame(c: &YCochain) -> Option<MultiVector> {
    let basis = y_wedge_basis(c.degree);
    let mut acc = MultiVector::zero(c.degree);
    for (p, yb) in c.numerators.iter().zip(&basis) {
        if !p.is_zero() {
            acc = acc.add(&yb.mul_poly(p));
        }
    }
    let comps = acc.components().iter().map(|p| p.div_exact(&Poly::d())).collect::<Option<Vec<_>>>()?;
    Some(MultiVector::new(c.degree, comps))
}

/// Realness test through the per-degree divisibility conditions on the
/// numerators (`D'` divides `p`, `p1 x1 - p2 x2`, `p3`). Valid inside the
/// admissible ranges of each degree; [`from_y_frame`] is the general test.
pub fn divisibility_criterion(c: &YCochain) -> bool {
    let dp = Poly::dprime();
    let divides = |p: &Poly| p.div_exact(&dp).is_some();
    let n = &c.numerators;
    match c.degree {
        0 => divides(&n[0]),
        1 => divides(&(&(&n[0] * &Poly::x1()) - &(&n[1] * &Poly::x2()))) && divides(&n[2]),
        2 => divides(&(&(&n[0] * &Poly::x1()) - &(&n[1] * &Poly::x2()))),
        _ => true,
    }
}

/// `Lambda = alpha Y23 + beta Y31 + gamma Y12` with constant coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
}

impl AdmissibleParams {
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Self {
        AdmissibleParams { alpha, beta, gamma }
    }

    /// Coefficients `c_ij` with `X_i = sum_j c_ij Y_j`:
    /// `X1 = gamma Y2 - beta Y3`, `X2 = alpha Y3 - gamma Y1`,
    /// `X3 = beta Y1 - alpha Y2`.
    pub fn x_coeffs(&self) -> [[Rational; 3]; 3] {
        let z = Rational::zero;
        let (a, b, g) = (&self.alpha, &self.beta, &self.gamma);
        [[z(), g.clone(), -b.clone()], [-g.clone(), z(), a.clone()], [b.clone(), -a.clone(), z()]]
    }

    /// The bivector itself in the coordinate frame.
    pub fn tensor(&self) -> MultiVector {
        let basis = y_wedge_basis(2);
        basis[0].scale(&self.alpha).add(&basis[1].scale(&self.beta)).add(&basis[2].scale(&self.gamma))
    }
}

fn check_which(which: usize) {
    assert!((1..=3).contains(&which), "operator index must be 1, 2 or 3");
}

/// `X_which (q)` computed on the rational function `p / D` by the quotient
/// rule `(D X(p) - p X(D)) / D^2`, cancelling one factor of `D`.
pub fn x_apply(which: usize, params: &AdmissibleParams, q: &QElem) -> QElem {
    check_which(which);
    let coeffs = &params.x_coeffs()[which - 1];
    let ys = y_matrices();
    let field = |f: &Poly| {
        ys.iter().zip(coeffs).fold(Poly::zero(), |acc, (y, c)| &acc + &f.apply_linear_field(y).scale(c))
    };
    let d = Poly::d();
    let num = &(&d * &field(&q.numerator)) - &(&q.numerator * &field(&d));
    let numerator = num.div_exact(&d).expect("D divides D X(p) - p X(D)");
    debug_assert!(numerator.is_homogeneous_of(q.grade));
    QElem { grade: q.grade, numerator }
}

/// Matrix of an operator `X` on `Q_kr`, in the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XOperatorMatrix {
    pub which: usize,
    pub grade: Bigrade,
    pub params: AdmissibleParams,
    pub matrix: RatMatrix,
}

/// Tridiagonal matrix of `c1 Y1 + c2 Y2 + c3 Y3` acting on `Q_kr`.
///
/// On `e_l = x1^l x2^(k-l) x3^(r-k) / D` the fields act by
/// `Y1 e_l = (k-2) e_l`, `Y3 e_l = (r-k-1) e_l` and
/// `Y2 e_l = (k-l) e_(l+1) - l e_(l-1)`.
pub fn y_combination_matrix(coeffs: &[Rational; 3], grade: Bigrade) -> RatMatrix {
    let (k, r) = (grade.k as i64, grade.r as i64);
    let n = grade.dim();
    let mut m = RatMatrix::zeros(n, n);
    let diag = &coeffs[0] * rat(k - 2) + &coeffs[2] * rat(r - k - 1);
    for l in 0..n {
        m[(l, l)] = diag.clone();
        if l + 1 < n {
            m[(l + 1, l)] = &coeffs[1] * rat(k - l as i64);
        }
        if l > 0 {
            m[(l - 1, l)] = &coeffs[1] * rat(-(l as i64));
        }
    }
    m
}

pub fn x_matrix(which: usize, grade: Bigrade, params: &AdmissibleParams) -> XOperatorMatrix {
    check_which(which);
    let matrix = y_combination_matrix(&params.x_coeffs()[which - 1], grade);
    XOperatorMatrix { which, grade, params: params.clone(), matrix }
}

/// Kernel of `X1` or `X3` on `Q_kr`.
pub fn x_kernel(which: usize, grade: Bigrade, params: &AdmissibleParams) -> SubspaceBasis {
    assert!(which == 1 || which == 3, "kernels are tabulated for X1 and X3");
    kernel_basis(&x_matrix(which, grade, params).matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, rank_and_rref};
    use crate::multivector::schouten;

    fn dh2(a: i64, b: i64) -> AdmissibleParams {
        AdmissibleParams::new(rat(2 * b), rat(a), rat(b))
    }

    fn mv(s: &str) -> MultiVector {
        s.parse().unwrap()
    }

    #[test]
    fn y_fields_examples() {
        let [y1, y2, y3] = y_fields();
        assert!(schouten(&y1, &y3).unwrap().is_zero());
        let top = y1.wedge(&y2).unwrap().wedge(&y3).unwrap();
        assert_eq!(top, MultiVector::trivector(Poly::d()));
        assert!(schouten(&y2, &MultiVector::function(Poly::dprime())).unwrap().is_zero());
    }

    #[test]
    fn to_y_frame_examples() {
        let c = to_y_frame(&mv("d3"), Bigrade::new(2, 2)).unwrap();
        assert_eq!(c.numerators, vec![Poly::zero(), Poly::zero(), Poly::dprime()]);
        for m in 0..4u32 {
            let c = to_y_frame(&MultiVector::bivector([Poly::zero(), Poly::zero(), Poly::x3().pow(m)]), Bigrade::new(0, m + 1))
                .unwrap();
            assert_eq!(c.numerators[2], Poly::x3().pow(m + 1));
        }
        let c = to_y_frame_graded(&mv("x1*d1 + x2*d2")).unwrap();
        assert_eq!(c.grade, Bigrade::new(2, 3));
        assert!(to_y_frame_graded(&mv("d1 + x1*d2")).is_err());
        let c = to_y_frame(&mv("d123"), Bigrade::new(0, 0)).unwrap();
        assert_eq!(c.numerators, vec![Poly::one()]);
        assert!(to_y_frame(&mv("d3"), Bigrade::new(1, 2)).is_err());
    }

    #[test]
    fn from_y_frame_examples() {
        let p = &(&Poly::x1() * &Poly::x3()) * &Poly::dprime();
        let c = YCochain::new(0, Bigrade::new(3, 4), vec![p]).unwrap();
        assert_eq!(from_y_frame(&c), Some(MultiVector::function(Poly::x1())));
        let c = YCochain::new(3, Bigrade::new(2, 5), vec!["x1*x2*x3^3".parse().unwrap()]).unwrap();
        assert!(from_y_frame(&c).is_some());
        for k in 1..4u32 {
            let r = k + 2;
            let p1 = &Poly::x1().pow(k) * &Poly::x3().pow(r - k);
            let c = YCochain::new(2, Bigrade::new(k, r), vec![p1, Poly::zero(), Poly::zero()]).unwrap();
            assert_eq!(from_y_frame(&c), None);
        }
    }

    #[test]
    fn x_apply_examples() {
        let params = dh2(1, 1);
        let one = QElem::new(Bigrade::new(2, 3), Poly::d()).unwrap();
        assert!(x_apply(1, &params, &one).numerator.is_zero());
        // X2 = (2r - 3k) b id
        for (k, r) in [(0, 3), (2, 5), (3, 3)] {
            let g = Bigrade::new(k, r);
            for l in 0..g.dim() {
                let q = QElem::basis(g, l);
                let got = x_apply(2, &dh2(2, 3), &q);
                assert_eq!(got.numerator, q.numerator.scale(&rat((2 * r as i64 - 3 * k as i64) * 3)));
            }
        }
    }

    #[test]
    fn x_apply_single_monomial_formula() {
        // X1(x^J/D) = [b(j2 x1/x2 - j1 x2/x1) - a(j3 - 1)] x^J/D
        let (a, b) = (rat(3), ratio(-1, 2));
        let params = AdmissibleParams::new(&b * rat(2), a.clone(), b.clone());
        for (j1, j2, j3) in [(1u32, 2u32, 0u32), (2, 1, 3), (0, 3, 1), (3, 0, 2)] {
            let g = Bigrade::new(j1 + j2, j1 + j2 + j3);
            let xj = Poly::monomial(rat(1), crate::Exponent::new(j1, j2, j3));
            let got = x_apply(1, &params, &QElem::new(g, xj.clone()).unwrap());
            let mut want = xj.scale(&(-&a * rat(j3 as i64 - 1)));
            if j2 > 0 {
                want = &want + &Poly::monomial(&b * rat(j2 as i64), crate::Exponent::new(j1 + 1, j2 - 1, j3));
            }
            if j1 > 0 {
                want = &want - &Poly::monomial(&b * rat(j1 as i64), crate::Exponent::new(j1 - 1, j2 + 1, j3));
            }
            assert_eq!(got.numerator, want);
        }
    }

    #[test]
    fn x_matrix_examples() {
        let params = dh2(1, 2);
        for (k, r) in [(0, 0), (1, 4), (4, 6)] {
            let g = Bigrade::new(k, r);
            let m = x_matrix(2, g, &params).matrix;
            assert_eq!(m, RatMatrix::identity(g.dim()).scale(&rat((2 * r as i64 - 3 * k as i64) * 2)));
        }
        for r in 0..6 {
            let m = x_matrix(1, Bigrade::new(0, r), &dh2(1, 1)).matrix;
            assert_eq!(m, RatMatrix::from_rows(vec![vec![rat(-(r as i64 - 1))]]));
        }
        // (2,3), a = b = 1: diagonal a(k - r + 1) = 0, M0 off-diagonals with B = -b
        let m = x_matrix(1, Bigrade::new(2, 3), &dh2(1, 1)).matrix;
        assert_eq!(m, RatMatrix::from_i64(&[&[0, -1, 0], &[2, 0, -2], &[0, 1, 0]]));
    }

    #[test]
    fn x_kernel_examples() {
        let params = dh2(1, 1);
        assert!(x_kernel(1, Bigrade::new(3, 5), &params).is_empty());
        let k = x_kernel(1, Bigrade::new(2, 3), &params);
        assert_eq!(k.dim(), 1);
        // spanned by D' x3 / D, coordinates (1, 0, 1)
        assert_eq!(rank_and_rref(&k.as_columns().transpose()).rref.row(0), &[rat(1), rat(0), rat(1)]);
        assert!(x_kernel(3, Bigrade::new(4, 6), &params).is_empty());
    }

    #[test]
    fn admissible_tensor_matches_dh2_display() {
        let t = dh2(1, 1).tensor();
        assert_eq!(t, mv("(x1^2 + x2^2)*d12 + x3*(2*x1 - x2)*d23 + x3*(x1 + 2*x2)*d31"));
    }

    fn param_sets() -> Vec<AdmissibleParams> {
        vec![dh2(1, 1), dh2(0, 1), AdmissibleParams::new(rat(3), rat(1), rat(1)), AdmissibleParams::new(ratio(7, 3), rat(-2), ratio(1, 2))]
    }

    #[test]
    fn x_matrix_matches_x_apply() {
        for params in param_sets() {
            for g in Bigrade::all_up_to(9) {
                for which in 1..=3 {
                    let m = x_matrix(which, g, &params).matrix;
                    for l in 0..g.dim() {
                        assert_eq!(x_apply(which, &params, &QElem::basis(g, l)).coords(), m.column(l), "X{which} {g}");
                    }
                }
            }
        }
    }

    #[test]
    fn x_operators_commute() {
        for params in param_sets() {
            for g in Bigrade::all_up_to(7) {
                let m: Vec<RatMatrix> = (1..=3).map(|i| x_matrix(i, g, &params).matrix).collect();
                for i in 0..3 {
                    for j in 0..3 {
                        assert_eq!(m[i].mul(&m[j]), m[j].mul(&m[i]));
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_grades() {
        for (a, b) in [(1, 1), (0, 2), (-3, 1)] {
            let params = dh2(a, b);
            for k in (0..=12u32).step_by(2) {
                let g = Bigrade::new(k, 3 * k / 2);
                assert!(x_matrix(2, g, &params).matrix.is_zero());
                let x1 = x_matrix(1, g, &params).matrix;
                assert_eq!(x_matrix(3, g, &params).matrix, x1.scale(&rat(-2)));
            }
        }
    }

    #[test]
    fn powers_of_d_are_eigenvectors() {
        let (a, b) = (ratio(5, 3), rat(-2));
        let params = AdmissibleParams::new(&b * rat(2), a.clone(), b.clone());
        for l in 0..5u32 {
            // D^l as an element of Q: numerator D^(l+1)
            let q = QElem::from_numerator(Poly::d().pow(l + 1)).unwrap();
            let li = rat(l as i64);
            assert_eq!(x_apply(1, &params, &q).numerator, q.numerator.scale(&(-&a * &li)));
            assert_eq!(x_apply(3, &params, &q).numerator, q.numerator.scale(&(&a * &li * rat(2))));
        }
    }

    #[test]
    fn kernel_cases() {
        for (a, b) in [(1, 1), (0, 1), (2, -3)] {
            let params = dh2(a, b);
            for g in Bigrade::all_up_to(10) {
                let (k, r) = (g.k, g.r);
                for which in [1, 3] {
                    let special = if which == 1 { k + 1 == r } else { k == 2 };
                    let degenerate = k % 2 == 0 && (a == 0 || special);
                    let ker = x_kernel(which, g, &params);
                    if !degenerate {
                        assert!(ker.is_empty(), "X{which} {g}");
                        continue;
                    }
                    assert_eq!(ker.dim(), 1, "X{which} {g}");
                    let want = Poly::dprime().pow(k / 2) * Poly::x3().pow(r - k);
                    assert!(ker.contains(&QElem::new(g, want).unwrap().coords()));
                    let m = x_matrix(which, g, &params).matrix;
                    assert_eq!(ker.as_columns().hstack(&m).rank(), g.dim(), "ker + im = Q at {g}");
                }
            }
        }
    }

    #[test]
    fn round_trip_and_divisibility() {
        use crate::complex::{slice_basis, Cochain, ComplexKind, SliceSpec};
        for g in Bigrade::all_up_to(6) {
            for d in 0..4 {
                for c in slice_basis(SliceSpec::new(ComplexKind::R, d, g)).elements {
                    let Cochain::Real(m) = c else { unreachable!() };
                    let y = to_y_frame(&m, g).unwrap();
                    assert!(divisibility_criterion(&y));
                    assert_eq!(from_y_frame(&y), Some(m));
                }
                for c in slice_basis(SliceSpec::new(ComplexKind::S, d, g)).elements {
                    let Cochain::Y(y) = c else { unreachable!() };
                    assert!(!divisibility_criterion(&y));
                    assert_eq!(from_y_frame(&y), None);
                }
            }
        }
    }
}
