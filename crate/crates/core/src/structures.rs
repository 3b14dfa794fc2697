//! The two reference structures, their parameter regimes, the closed-form
//! cohomology tables they are verified against, and gl(3) utilities
//! (the map `J`, r-matrices, Yang-Baxter, stabilizers).

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{kernel_basis, rat, Matrix3, RatMatrix, Rational, SubspaceBasis};
use crate::multivector::{schouten, LpOperator, MultiVector, MultivectorError};
use crate::poly::{Bigrade, Exponent, Poly};
use crate::yframe::{y_matrices, y_wedge_basis, AdmissibleParams};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Multivector(#[from] MultivectorError),
    #[error("custom tensor is not a constant combination of Y23, Y31, Y12: {0}")]
    NotAdmissible(String),
    #[error("no closed-form cohomology is available for {0}")]
    TheoremUnavailable(String),
    #[error("regime classification needs a preset family, not a custom tensor")]
    Unsupported,
    #[error("a custom structure needs a tensor")]
    MissingTensor,
    #[error("parameter {0} is too large for the closed-form tables")]
    Overflow(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dh2,
    Dh7,
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Dh2 => "dh2",
            Family::Dh7 => "dh7",
            Family::Custom => "custom",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureParams {
    pub family: Family,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub custom: Option<MultiVector>,
}

impl StructureParams {
    pub fn dh2(a: Rational, b: Rational) -> Self {
        StructureParams { family: Family::Dh2, a, b, c: Rational::zero(), custom: None }
    }

    pub fn dh7(a: Rational, b: Rational, c: Rational) -> Self {
        StructureParams { family: Family::Dh7, a, b, c, custom: None }
    }

    pub fn custom(tensor: MultiVector) -> Self {
        let z = Rational::zero;
        StructureParams { family: Family::Custom, a: z(), b: z(), c: z(), custom: Some(tensor) }
    }

    /// Integer shortcut used throughout the tests.
    pub fn dh2_i(a: i64, b: i64) -> Self {
        Self::dh2(rat(a), rat(b))
    }

    pub fn dh7_i(a: i64, b: i64, c: i64) -> Self {
        Self::dh7(rat(a), rat(b), rat(c))
    }
}

impl fmt::Display for StructureParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::poly::fmt_rational as q;
        match self.family {
            Family::Dh2 => write!(f, "dh2(a={}, b={})", q(&self.a), q(&self.b)),
            Family::Dh7 => write!(f, "dh7(a={}, b={}, c={})", q(&self.a), q(&self.b), q(&self.c)),
            Family::Custom => match &self.custom {
                Some(t) => write!(f, "custom({t})"),
                None => write!(f, "custom(?)"),
            },
        }
    }
}

/// `(alpha, beta, gamma)` with `Lambda = alpha Y23 + beta Y31 + gamma Y12`
/// for the preset families.
pub fn preset_admissible(p: &StructureParams) -> Option<AdmissibleParams> {
    match p.family {
        Family::Dh2 => Some(AdmissibleParams::new(&p.b * rat(2), p.a.clone(), p.b.clone())),
        Family::Dh7 => Some(AdmissibleParams::new(&p.b * rat(2) + &p.c, p.a.clone(), p.b.clone())),
        Family::Custom => None,
    }
}

fn coefficient_table(m: &MultiVector) -> BTreeMap<(usize, Exponent), Rational> {
    let mut out = BTreeMap::new();
    for (i, p) in m.components().iter().enumerate() {
        for (e, c) in p.terms() {
            out.insert((i, *e), c.clone());
        }
    }
    out
}

/// Coordinates of each multivector over the union of their
/// `(component, monomial)` supports, as the columns of a matrix.
pub(crate) fn coefficient_matrix(ms: &[MultiVector]) -> RatMatrix {
    let tables: Vec<_> = ms.iter().map(coefficient_table).collect();
    let mut keys: Vec<(usize, Exponent)> = tables.iter().flat_map(|t| t.keys().copied()).collect();
    keys.sort();
    keys.dedup();
    let cols: Vec<Vec<Rational>> =
        tables.iter().map(|t| keys.iter().map(|k| t.get(k).cloned().unwrap_or_else(Rational::zero)).collect()).collect();
    RatMatrix::from_columns(keys.len(), &cols)
}

/// Writes `tensor` as `alpha Y23 + beta Y31 + gamma Y12`, if possible.
pub fn admissible_decomposition(tensor: &MultiVector) -> Option<AdmissibleParams> {
    if tensor.degree() != 2 {
        return None;
    }
    let mut cols = y_wedge_basis(2);
    cols.push(tensor.clone());
    let m = coefficient_matrix(&cols);
    let lhs = RatMatrix::from_columns(m.rows(), &m.columns()[..3]);
    let x = crate::linalg::solve(&lhs, &m.column(3))?;
    Some(AdmissibleParams::new(x[0].clone(), x[1].clone(), x[2].clone()))
}

/// The exact tensor of a preset, or the validated custom tensor.
pub fn build_structure(p: &StructureParams) -> Result<MultiVector, StructureError> {
    match p.family {
        Family::Custom => {
            let t = p.custom.clone().ok_or(StructureError::MissingTensor)?;
            LpOperator::new(t.clone())?;
            Ok(t)
        }
        _ => {
            let (x1, x2, x3) = (Poly::x1(), Poly::x2(), Poly::x3());
            let e = &(&p.b * rat(2)) + &p.c;
            let lin = |u: &Rational, v: &Rational, s: &Poly, t: &Poly| &s.scale(u) + &t.scale(v);
            Ok(MultiVector::bivector([
                &lin(&e, &-&p.a, &x1, &x2) * &x3,
                &lin(&p.a, &e, &x1, &x2) * &x3,
                Poly::dprime().scale(&p.b),
            ]))
        }
    }
}

/// A resolved structure: the tensor together with its Y-frame coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub params: StructureParams,
    pub tensor: MultiVector,
    pub admissible: AdmissibleParams,
}

impl Structure {
    pub fn new(params: StructureParams) -> Result<Self, StructureError> {
        let tensor = build_structure(&params)?;
        let admissible = match preset_admissible(&params) {
            Some(a) => a,
            None => admissible_decomposition(&tensor).ok_or_else(|| StructureError::NotAdmissible(tensor.to_string()))?,
        };
        Ok(Structure { params, tensor, admissible })
    }
}

/// Parameter regime of the closed-form tables. `A0C0` is structure 2 with
/// `a = 0` (equivalently structure 7 with `a = c = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    ANonzero,
    A0B0,
    A0TwoBPlusC0,
    A0RatioNeg { beta: i64, gamma: i64 },
    A0RatioPos { beta: i64, gamma: i64 },
    A0C0,
}

impl Regime {
    pub fn tag(&self) -> &'static str {
        match self {
            Regime::ANonzero => "A_NONZERO",
            Regime::A0B0 => "A0_B0",
            Regime::A0TwoBPlusC0 => "A0_2BpC0",
            Regime::A0RatioNeg { .. } => "A0_RATIO_NEG",
            Regime::A0RatioPos { .. } => "A0_RATIO_POS",
            Regime::A0C0 => "A0_C0",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regime::A0RatioNeg { beta, gamma } | Regime::A0RatioPos { beta, gamma } => {
                write!(f, "{}(beta={beta}, gamma={gamma})", self.tag())
            }
            _ => f.write_str(self.tag()),
        }
    }
}

fn to_i64(x: &num_bigint::BigInt, name: &str) -> Result<i64, StructureError> {
    x.to_i64().ok_or_else(|| StructureError::Overflow(name.to_string()))
}

/// Irreducible `(beta, gamma)` proportional to `(b, c)`; `positive_gamma`
/// selects the positive-denominator normalisation, otherwise the numerator
/// is made positive.
fn ratio_rep(b: &Rational, c: &Rational, positive_gamma: bool) -> Result<(i64, i64), StructureError> {
    let q = b / c;
    let (mut n, mut d) = (q.numer().clone(), q.denom().clone());
    let g = n.gcd(&d);
    n /= &g;
    d /= &g;
    let flip = if positive_gamma { d.is_negative() } else { n.is_negative() };
    if flip {
        n = -n;
        d = -d;
    }
    Ok((to_i64(&n, "beta")?, to_i64(&d, "gamma")?))
}

pub fn classify_regime(p: &StructureParams) -> Result<Regime, StructureError> {
    let (a, b, c) = (&p.a, &p.b, &p.c);
    match p.family {
        Family::Custom => Err(StructureError::Unsupported),
        Family::Dh2 if b.is_zero() => Err(StructureError::TheoremUnavailable(format!(
            "{p}: b = 0 is the diagonal case, outside the scope of these tables"
        ))),
        Family::Dh7 if b.is_zero() && c.is_zero() => Err(StructureError::TheoremUnavailable(format!(
            "{p}: b = c = 0 is the diagonal case, outside the scope of these tables"
        ))),
        _ if !a.is_zero() => Ok(Regime::ANonzero),
        _ if c.is_zero() => Ok(Regime::A0C0),
        _ if b.is_zero() => Ok(Regime::A0B0),
        _ => {
            let s = b * (b * rat(2) + c);
            if s.is_zero() {
                Ok(Regime::A0TwoBPlusC0)
            } else if s.is_negative() {
                let (beta, gamma) = ratio_rep(b, c, true)?;
                Ok(Regime::A0RatioNeg { beta, gamma })
            } else {
                let (beta, gamma) = ratio_rep(b, c, false)?;
                Ok(Regime::A0RatioPos { beta, gamma })
            }
        }
    }
}

/// Whether a Casimir generator sits at numerator grade `(k, r)`; each
/// generator contributes `f D` at the grade of that numerator.
fn casimir_at(regime: &Regime, k: u32, r: u32) -> bool {
    let (k, r) = (k as i64, r as i64);
    match *regime {
        Regime::ANonzero | Regime::A0RatioNeg { .. } => (k, r) == (2, 3),
        // D'^n
        Regime::A0B0 => k >= 2 && k % 2 == 0 && r == k + 1,
        // x3^n
        Regime::A0TwoBPlusC0 => k == 2 && r >= 3,
        // D^m
        Regime::A0C0 => k >= 2 && k % 2 == 0 && 2 * r == 3 * k,
        // D'^(n beta + n gamma / 2) x3^(n beta), n gamma even
        Regime::A0RatioPos { beta, gamma } => {
            if k < 2 || k % 2 != 0 || (r - k - 1) < 0 || (r - k - 1) % beta != 0 {
                return false;
            }
            let n = (r - k - 1) / beta;
            (n * gamma) % 2 == 0 && n * (2 * beta + gamma) == k - 2
        }
    }
}

/// The accidental class `C_gamma Y3` of the negative-ratio regimes, placed
/// at the grade of `D'^(gamma/2)` (the numerator of `D'^(gamma/2-1) d3`).
fn accidental_grade(regime: &Regime) -> Option<u32> {
    match *regime {
        Regime::A0TwoBPlusC0 => Some(2),
        Regime::A0RatioNeg { beta: -1, gamma } if gamma >= 4 && gamma % 2 == 0 => Some(gamma as u32),
        _ => None,
    }
}

/// Dimension of `H^d_kr` of the real complex as stated by the closed-form
/// tables, under the numerator grading.
pub fn expected_dim_for(regime: &Regime, d: usize, grade: Bigrade) -> usize {
    let (k, r) = (grade.k, grade.r);
    let cas = casimir_at(regime, k, r) as usize;
    let sing = !matches!(regime, Regime::ANonzero);
    let acc = (accidental_grade(regime) == Some(k) && k == r) as usize;
    let diag = (*regime == Regime::A0C0 && k == r && k >= 1) as usize;
    match d {
        0 => cas,
        1 => 3 * cas + acc,
        2 => 3 * cas + (sing && k == 0 && r >= 1) as usize + 2 * diag + 2 * acc,
        3 => {
            let top = if sing { k == 0 } else { (k, r) == (0, 0) };
            cas + top as usize + 2 * diag + acc
        }
        _ => 0,
    }
}

pub fn expected_dim(p: &StructureParams, d: usize, grade: Bigrade) -> Result<usize, StructureError> {
    Ok(expected_dim_for(&classify_regime(p)?, d, grade))
}

/// `J(a) = a_ij x_i d_j`.
pub fn j_map(m: &Matrix3) -> MultiVector {
    MultiVector::vector(std::array::from_fn(|j| {
        (0..3).fold(Poly::zero(), |acc, i| &acc + &Poly::var(i).scale(m.get(i, j)))
    }))
}

/// `Ad(A) a = A a A^-1`.
pub fn ad(g: &Matrix3, m: &Matrix3) -> Option<Matrix3> {
    Some(g.mul(m).mul(&g.inverse()?))
}

fn unit_basis() -> Vec<Matrix3> {
    (0..9).map(|p| Matrix3::unit(p / 3, p % 3)).collect()
}

/// An element of the exterior power `wedge^degree gl(3)`, stored over the
/// basis `E_p1 ^ ... ^ E_pn`, `p1 < ... < pn`, with `E_p = E_(p/3, p%3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlWedge {
    degree: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

/// Bi-matrices `r in g ^ g`.
pub type BiMatrix = GlWedge;
/// Elements of `g ^ g ^ g`, the target of `[r, r]`.
pub type TriMatrix = GlWedge;

fn sort_with_sign(mut idx: Vec<usize>) -> Option<(Vec<usize>, i64)> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return None;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((idx, sign))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (0..n)
        .flat_map(|last| {
            combinations(last, k - 1).into_iter().map(move |mut c| {
                c.push(last);
                c
            })
        })
        .collect()
}

impl GlWedge {
    pub fn zero(degree: usize) -> Self {
        GlWedge { degree, terms: BTreeMap::new() }
    }

    fn add_basis(&mut self, idx: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let Some((idx, s)) = sort_with_sign(idx) else {
            return;
        };
        let e = self.terms.entry(idx.clone()).or_insert_with(Rational::zero);
        *e += c * rat(s);
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    /// `m1 ^ ... ^ mn`.
    pub fn wedge_of(ms: &[Matrix3]) -> Self {
        let mut out = GlWedge::zero(ms.len());
        let mut partial: Vec<(Vec<usize>, Rational)> = vec![(vec![], Rational::one())];
        for m in ms {
            let c = m.coords();
            partial = partial
                .into_iter()
                .flat_map(|(idx, coef)| {
                    c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(move |(p, x)| {
                        let mut i = idx.clone();
                        i.push(p);
                        (i, &coef * x)
                    })
                })
                .collect();
        }
        for (idx, c) in partial {
            out.add_basis(idx, c);
        }
        out
    }

    /// `sum c (m ^ n)` in normal form.
    pub fn bimatrix(terms: &[(Matrix3, Matrix3, Rational)]) -> BiMatrix {
        terms.iter().fold(GlWedge::zero(2), |acc, (m, n, c)| acc.add(&GlWedge::wedge_of(&[m.clone(), n.clone()]).scale(c)))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &GlWedge) -> GlWedge {
        assert_eq!(self.degree, o.degree);
        let mut out = self.clone();
        for (i, c) in &o.terms {
            out.add_basis(i.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> GlWedge {
        let mut out = GlWedge::zero(self.degree);
        for (i, c) in &self.terms {
            out.add_basis(i.clone(), c * s);
        }
        out
    }

    /// Coordinates over the `C(9, degree)` sorted basis (36 for bi-matrices,
    /// 84 for tri-matrices).
    pub fn coords(&self) -> Vec<Rational> {
        combinations(9, self.degree)
            .into_iter()
            .map(|i| self.terms.get(&i).cloned().unwrap_or_else(Rational::zero))
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &Rational)> {
        self.terms.iter().map(|(i, c)| (i.as_slice(), c))
    }

    /// Image under `Ad(g)` applied factorwise.
    pub fn ad(&self, g: &Matrix3) -> Option<GlWedge> {
        let basis = unit_basis();
        let images = basis.iter().map(|e| ad(g, e)).collect::<Option<Vec<_>>>()?;
        let mut out = GlWedge::zero(self.degree);
        for (idx, c) in &self.terms {
            let ms: Vec<Matrix3> = idx.iter().map(|&p| images[p].clone()).collect();
            out = out.add(&GlWedge::wedge_of(&ms).scale(c));
        }
        Some(out)
    }
}

/// The wedge-multiplicative extension of [`j_map`].
pub fn j_wedge(w: &GlWedge) -> Result<MultiVector, MultivectorError> {
    let basis: Vec<MultiVector> = unit_basis().iter().map(j_map).collect();
    let mut out = MultiVector::zero(w.degree);
    for (idx, c) in &w.terms {
        let mut t = MultiVector::function(Poly::one());
        for &p in idx {
            t = t.wedge(&basis[p])?;
        }
        out = out.add(&t.scale(c));
    }
    Ok(out)
}

pub fn j_wedge3(t: &TriMatrix) -> Result<MultiVector, MultivectorError> {
    j_wedge(t)
}

/// Algebraic Schouten bracket of two bi-matrices:
/// `[a1^a2, b1^b2] = sum_ij (-1)^(i+j) [ai, bj] ^ a(other) ^ b(other)`.
pub fn bimatrix_bracket(r: &BiMatrix, s: &BiMatrix) -> TriMatrix {
    assert!(r.degree == 2 && s.degree == 2, "bracket is implemented on bi-matrices");
    let basis = unit_basis();
    let mut out = GlWedge::zero(3);
    for (ri, rc) in &r.terms {
        for (si, sc) in &s.terms {
            for i in 0..2 {
                for j in 0..2 {
                    let br = basis[ri[i]].bracket(&basis[si[j]]);
                    if br.is_zero() {
                        continue;
                    }
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    let t = GlWedge::wedge_of(&[br, basis[ri[1 - i]].clone(), basis[si[1 - j]].clone()]);
                    out = out.add(&t.scale(&(rc * sc * rat(sign))));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YangBaxterReport {
    /// `[r, r]` over the 84-element basis of `g^g^g`.
    pub bracket: Vec<Rational>,
    pub is_zero: bool,
    /// Whether `J^3 [r,r] = [J^2 r, J^2 r]`.
    pub j_identity_holds: bool,
}

pub fn yang_baxter_check(r: &BiMatrix) -> Result<YangBaxterReport, MultivectorError> {
    let rr = bimatrix_bracket(r, r);
    let jr = j_wedge(r)?;
    let j_identity_holds = j_wedge3(&rr)? == schouten(&jr, &jr)?;
    Ok(YangBaxterReport { bracket: rr.coords(), is_zero: rr.is_zero(), j_identity_holds })
}

/// The bi-matrix `alpha Y2^Y3 + beta Y3^Y1 + gamma Y1^Y2` built from the
/// commuting Y-matrices.
pub fn commuting_r_matrix(p: &AdmissibleParams) -> BiMatrix {
    let [y1, y2, y3] = y_matrices();
    GlWedge::bimatrix(&[
        (y2.clone(), y3.clone(), p.alpha.clone()),
        (y3, y1.clone(), p.beta.clone()),
        (y1, y2, p.gamma.clone()),
    ])
}

/// `{a in gl(3) : [J a, lambda] = 0}` in the row-major coordinates of `a`.
pub fn stabilizer(lambda: &MultiVector) -> Result<SubspaceBasis, MultivectorError> {
    let cols = unit_basis().iter().map(|e| schouten(&j_map(e), lambda)).collect::<Result<Vec<_>, _>>()?;
    if cols.iter().all(MultiVector::is_zero) {
        return Ok(SubspaceBasis::standard(9));
    }
    Ok(kernel_basis(&coefficient_matrix(&cols)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use crate::multivector::{is_poisson, jacobian_structure};

    fn mv(s: &str) -> MultiVector {
        s.parse().unwrap()
    }

    #[test]
    fn build_structure_examples() {
        let t = build_structure(&StructureParams::dh2_i(1, 1)).unwrap();
        assert_eq!(t, mv("(x1^2 + x2^2)*d12 + x3*(2*x1 - x2)*d23 + x3*(x1 + 2*x2)*d31"));
        for (a, b) in [(1, 1), (0, 1), (-3, 2)] {
            let p2 = build_structure(&StructureParams::dh2_i(a, b)).unwrap();
            let p7 = build_structure(&StructureParams::dh7_i(a, b, 0)).unwrap();
            assert_eq!(p2, p7);
            assert!(is_poisson(&p2));
        }
        for b in [1, -2, 5] {
            let t = build_structure(&StructureParams::dh2_i(0, b)).unwrap();
            assert_eq!(t, jacobian_structure(&Poly::d().scale(&rat(b))));
        }
    }

    #[test]
    fn presets_match_y_decomposition() {
        for p in [StructureParams::dh2_i(1, 1), StructureParams::dh7_i(2, -1, 3), StructureParams::dh7_i(0, 1, -2)] {
            let t = build_structure(&p).unwrap();
            assert_eq!(preset_admissible(&p).unwrap().tensor(), t);
            assert_eq!(admissible_decomposition(&t), preset_admissible(&p));
        }
        assert_eq!(admissible_decomposition(&mv("x1^2*d12")), None);
    }

    #[test]
    fn custom_rejects_non_poisson() {
        let p = StructureParams::custom(mv("x1*x3*d12 + x2^2*d23"));
        assert!(matches!(build_structure(&p), Err(StructureError::Multivector(MultivectorError::NotPoisson(_)))));
    }

    #[test]
    fn classify_examples() {
        let c = |a, b, cc| classify_regime(&StructureParams::dh7_i(a, b, cc)).unwrap();
        assert_eq!(c(0, 1, -2), Regime::A0TwoBPlusC0);
        assert_eq!(c(0, -1, 4), Regime::A0RatioNeg { beta: -1, gamma: 4 });
        assert_eq!(c(0, 1, 1), Regime::A0RatioPos { beta: 1, gamma: 1 });
        assert_eq!(c(1, 1, 1), Regime::ANonzero);
        assert_eq!(c(0, 0, 1), Regime::A0B0);
        assert_eq!(c(0, 2, -6), Regime::A0RatioNeg { beta: -1, gamma: 3 });
        // b(2b+c) = -1 * (-2 - 5) > 0, positive numerator
        assert_eq!(c(0, -1, -5), Regime::A0RatioPos { beta: 1, gamma: 5 });
        let p = StructureParams::dh7(rat(0), ratio(3, 2), rat(-1));
        assert_eq!(classify_regime(&p).unwrap(), Regime::A0RatioPos { beta: 3, gamma: -2 });
        assert_eq!(classify_regime(&StructureParams::dh2_i(0, 1)).unwrap(), Regime::A0C0);
        assert!(matches!(classify_regime(&StructureParams::dh2_i(1, 0)), Err(StructureError::TheoremUnavailable(_))));
        assert!(matches!(classify_regime(&StructureParams::custom(mv("d12"))), Err(StructureError::Unsupported)));
    }

    #[test]
    fn expected_dim_examples() {
        let e = |p: &StructureParams, d, k, r| expected_dim(p, d, Bigrade::new(k, r)).unwrap();
        let p = StructureParams::dh2_i(1, 1);
        assert_eq!(e(&p, 2, 2, 3), 3);
        assert_eq!(e(&p, 3, 0, 0), 1);
        assert_eq!(e(&p, 3, 0, 1), 0);
        assert_eq!(e(&p, 0, 4, 6), 0);
        let p = StructureParams::dh2_i(0, 1);
        assert_eq!(e(&p, 3, 5, 5), 2);
        assert_eq!(e(&p, 0, 4, 6), 1);
        assert_eq!(e(&p, 2, 1, 1), 2);
        assert_eq!(e(&p, 2, 0, 0), 0);
        let p = StructureParams::dh7_i(0, 1, -2);
        assert_eq!(e(&p, 1, 2, 2), 1);
        assert_eq!(e(&p, 2, 2, 2), 2);
        assert_eq!(e(&p, 1, 2, 7), 3);
        let p = StructureParams::dh7_i(0, 1, 1);
        assert_eq!(e(&p, 0, 8, 11), 1);
        assert_eq!(e(&p, 0, 5, 8), 0);
        assert_eq!(e(&p, 0, 2, 3), 1);
        let p = StructureParams::dh7_i(0, -1, 4);
        assert_eq!(e(&p, 3, 4, 4), 1);
        assert_eq!(e(&p, 3, 0, 4), 1);
        assert_eq!(e(&StructureParams::dh7_i(0, -1, 3), 3, 4, 4), 0);
        assert_eq!(e(&StructureParams::dh7_i(0, 0, 1), 0, 6, 7), 1);
    }

    #[test]
    fn j_map_examples() {
        let [y1, y2, y3] = y_matrices();
        assert_eq!(j_map(&y2), mv("x1*d2 - x2*d1"));
        assert_eq!(j_map(&y1), mv("x1*d1 + x2*d2"));
        assert_eq!(j_map(&y3), mv("x3*d3"));
    }

    #[test]
    fn j_is_lie_homomorphism() {
        let basis = unit_basis();
        for m in &basis {
            for n in &basis {
                assert_eq!(j_map(&m.bracket(n)), schouten(&j_map(m), &j_map(n)).unwrap());
            }
        }
    }

    #[test]
    fn commuting_r_matrices_give_presets() {
        for p in [StructureParams::dh2_i(1, 1), StructureParams::dh7_i(1, 2, -3)] {
            let r = commuting_r_matrix(&preset_admissible(&p).unwrap());
            assert_eq!(j_wedge(&r).unwrap(), build_structure(&p).unwrap());
            let yb = yang_baxter_check(&r).unwrap();
            assert!(yb.is_zero && yb.j_identity_holds);
        }
        let yb = yang_baxter_check(&GlWedge::zero(2)).unwrap();
        assert!(yb.is_zero && yb.j_identity_holds);
    }

    #[test]
    fn j_identity_on_non_r_matrix() {
        let r = GlWedge::bimatrix(&[(Matrix3::unit(0, 1), Matrix3::unit(1, 0), rat(1))]);
        let yb = yang_baxter_check(&r).unwrap();
        assert!(yb.j_identity_holds);
        let r = GlWedge::bimatrix(&[
            (Matrix3::unit(0, 1), Matrix3::unit(1, 2), rat(1)),
            (Matrix3::unit(2, 0), Matrix3::unit(0, 0), rat(2)),
        ]);
        let yb = yang_baxter_check(&r).unwrap();
        assert!(!yb.is_zero);
        assert!(yb.j_identity_holds);
        assert_eq!(yb.bracket.len(), 84);
    }

    #[test]
    fn stabilizer_examples() {
        let lam = build_structure(&StructureParams::dh2_i(1, 1)).unwrap();
        let s = stabilizer(&lam).unwrap();
        for y in y_matrices() {
            assert!(s.contains(&y.coords()));
        }
        assert_eq!(s.dim(), 3);
        assert_eq!(stabilizer(&MultiVector::zero(2)).unwrap().dim(), 9);
    }

    #[test]
    fn ad_equivariance() {
        let g = Matrix3::from_i64([[1, 2, 0], [0, 1, -1], [1, 0, 1]]);
        let push = g.inverse().unwrap().transpose();
        let rs = [
            commuting_r_matrix(&preset_admissible(&StructureParams::dh2_i(1, 1)).unwrap()),
            GlWedge::bimatrix(&[(Matrix3::unit(0, 1), Matrix3::unit(2, 2), rat(3))]),
        ];
        for r in rs {
            let lhs = j_wedge(&r).unwrap().pushforward(&push).unwrap();
            assert_eq!(lhs, j_wedge(&r.ad(&g).unwrap()).unwrap());
        }
    }

    #[test]
    fn gl_wedge_normal_form() {
        let (a, b) = (Matrix3::unit(0, 1), Matrix3::unit(2, 0));
        let r = GlWedge::bimatrix(&[(a.clone(), b.clone(), rat(1)), (b.clone(), a.clone(), rat(1))]);
        assert!(r.is_zero());
        assert!(GlWedge::wedge_of(&[a.clone(), a]).is_zero());
        assert_eq!(GlWedge::zero(2).coords().len(), 36);
        assert_eq!(GlWedge::zero(3).coords().len(), 84);
    }
}
