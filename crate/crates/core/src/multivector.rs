//! Polyvector fields on R^3 with polynomial coefficients.
//!
//! Components are stored in the coordinate-frame basis
//! `d0: (f)`, `d1: (d1, d2, d3)`, `d2: (d23, d31, d12)`, `d3: (d123)`.
//! Internally the bracket is computed on the odd-variable model where a
//! multivector is a polynomial in anticommuting `t1, t2, t3` (`ti = di`).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{rat, Matrix3, Rational};
use crate::poly::{Poly, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultivectorError {
    #[error("result would have degree {0}; only degrees 0..=3 exist on R^3")]
    UnsupportedDegree(usize),
    #[error("expected a degree-{expected} multivector, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("tensor is not Poisson: [Λ,Λ] ≠ 0, [Λ,Λ] = {0}")]
    NotPoisson(String),
    #[error("linear map is not invertible")]
    Singular,
    #[error(transparent)]
    Parse(#[from] PolyError),
}

/// Sign of `t_a ^ t_b` relative to the ascending product on `a | b`, or
/// `None` when the masks overlap.
pub(crate) fn wedge_sign(a: u8, b: u8) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    for i in 0..3 {
        if a & (1 << i) != 0 {
            swaps += (b & ((1 << i) - 1)).count_ones();
        }
    }
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Right derivative of the ascending monomial `mask` by `t_i`.
fn right_deriv_sign(mask: u8, i: usize) -> Option<(u8, i64)> {
    if mask & (1 << i) == 0 {
        return None;
    }
    let above = (mask >> (i + 1)).count_ones();
    Some((mask & !(1 << i), if above.is_multiple_of(2) { 1 } else { -1 }))
}

/// `(mask, sign)` of each basis element, in component order.
pub(crate) fn basis_masks(degree: usize) -> &'static [(u8, i64)] {
    match degree {
        0 => &[(0b000, 1)],
        1 => &[(0b001, 1), (0b010, 1), (0b100, 1)],
        // d31 = t3 t1 = -t1 t3
        2 => &[(0b110, 1), (0b101, -1), (0b011, 1)],
        3 => &[(0b111, 1)],
        _ => &[],
    }
}

pub(crate) fn basis_len(degree: usize) -> usize {
    basis_masks(degree).len()
}

const BASIS_NAMES: [&[&str]; 4] = [&[""], &["d1", "d2", "d3"], &["d23", "d31", "d12"], &["d123"]];

type MaskMap = BTreeMap<u8, Poly>;

fn mask_add(acc: &mut MaskMap, mask: u8, p: Poly) {
    if p.is_zero() {
        return;
    }
    let slot = acc.entry(mask).or_default();
    *slot = &*slot + &p;
    if slot.is_zero() {
        acc.remove(&mask);
    }
}

fn mask_wedge(a: &MaskMap, b: &MaskMap) -> MaskMap {
    let mut out = MaskMap::new();
    for (ma, pa) in a {
        for (mb, pb) in b {
            if let Some(s) = wedge_sign(*ma, *mb) {
                mask_add(&mut out, ma | mb, (pa * pb).scale(&rat(s)));
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiVector {
    degree: usize,
    comps: Vec<Poly>,
}

impl MultiVector {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= 3, "multivector degree must be at most 3");
        MultiVector { degree, comps: vec![Poly::zero(); basis_len(degree)] }
    }

    pub fn new(degree: usize, comps: Vec<Poly>) -> Self {
        assert!(degree <= 3, "multivector degree must be at most 3");
        assert_eq!(comps.len(), basis_len(degree), "component count must match degree");
        MultiVector { degree, comps }
    }

    pub fn function(f: Poly) -> Self {
        MultiVector::new(0, vec![f])
    }

    /// `s1 d1 + s2 d2 + s3 d3`.
    pub fn vector(s: [Poly; 3]) -> Self {
        MultiVector::new(1, s.into())
    }

    /// `s1 d23 + s2 d31 + s3 d12`.
    pub fn bivector(s: [Poly; 3]) -> Self {
        MultiVector::new(2, s.into())
    }

    /// `s d123`.
    pub fn trivector(s: Poly) -> Self {
        MultiVector::new(3, vec![s])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    fn to_masks(&self) -> MaskMap {
        let mut m = MaskMap::new();
        for ((mask, sign), p) in basis_masks(self.degree).iter().zip(&self.comps) {
            mask_add(&mut m, *mask, p.scale(&rat(*sign)));
        }
        m
    }

    fn from_masks(degree: usize, m: &MaskMap) -> Self {
        let comps = basis_masks(degree)
            .iter()
            .map(|(mask, sign)| m.get(mask).map_or_else(Poly::zero, |p| p.scale(&rat(*sign))))
            .collect();
        debug_assert!(m.keys().all(|k| k.count_ones() as usize == degree));
        MultiVector { degree, comps }
    }

    pub fn add(&self, o: &MultiVector) -> MultiVector {
        assert_eq!(self.degree, o.degree, "adding multivectors of different degree");
        MultiVector { degree: self.degree, comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &MultiVector) -> MultiVector {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MultiVector {
        MultiVector { degree: self.degree, comps: self.comps.iter().map(|p| -p).collect() }
    }

    pub fn scale(&self, c: &Rational) -> MultiVector {
        MultiVector { degree: self.degree, comps: self.comps.iter().map(|p| p.scale(c)).collect() }
    }

    /// Multiplication by a function.
    pub fn mul_poly(&self, f: &Poly) -> MultiVector {
        MultiVector { degree: self.degree, comps: self.comps.iter().map(|p| p * f).collect() }
    }

    pub fn wedge(&self, o: &MultiVector) -> Result<MultiVector, MultivectorError> {
        let d = self.degree + o.degree;
        if d > 3 {
            return Err(MultivectorError::UnsupportedDegree(d));
        }
        Ok(MultiVector::from_masks(d, &mask_wedge(&self.to_masks(), &o.to_masks())))
    }

    /// Pushforward by the linear map `x -> m x`.
    pub fn pushforward(&self, m: &Matrix3) -> Result<MultiVector, MultivectorError> {
        let inv = m.inverse().ok_or(MultivectorError::Singular)?;
        let subs: [Poly; 3] = std::array::from_fn(|i| {
            (0..3).fold(Poly::zero(), |acc, j| &acc + &Poly::var(j).scale(inv.get(i, j)))
        });
        // t_i -> sum_j m_ji t_j
        let images: Vec<MaskMap> = (0..3)
            .map(|i| {
                let mut mm = MaskMap::new();
                for j in 0..3 {
                    mask_add(&mut mm, 1 << j, Poly::constant(m.get(j, i).clone()));
                }
                mm
            })
            .collect();
        let mut out = MaskMap::new();
        for (mask, p) in self.to_masks() {
            let mut img = MaskMap::from([(0u8, p.compose(&subs))]);
            for (i, im) in images.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    img = mask_wedge(&img, im);
                }
            }
            for (k, q) in img {
                mask_add(&mut out, k, q);
            }
        }
        Ok(MultiVector::from_masks(self.degree, &out))
    }

    /// Parses the multivector grammar, requiring the given degree (a zero
    /// expression is accepted at any degree).
    pub fn parse_with_degree(s: &str, degree: usize) -> Result<MultiVector, MultivectorError> {
        let e = crate::text::parse_expression(s)?;
        match e.degree {
            Some(d) if d != degree => Err(MultivectorError::WrongDegree { expected: degree, found: d }),
            _ => Ok(MultiVector::from_masks(degree, &e.components)),
        }
    }
}

/// The Schouten-Nijenhuis bracket.
///
/// `[P,Q] = sum_i (P <- d/dt_i)(d_i Q) - (-1)^{(p-1)(q-1)} (Q <- d/dt_i)(d_i P)`
/// with right derivatives in the odd variables, so that `[X,f] = X(f)`
/// for a vector field `X` and `[X,Y]` is the Lie bracket.
pub fn schouten(a: &MultiVector, b: &MultiVector) -> Result<MultiVector, MultivectorError> {
    let (p, q) = (a.degree, b.degree);
    if p + q == 0 {
        return Ok(MultiVector::zero(0));
    }
    let deg = p + q - 1;
    if deg > 3 {
        return Err(MultivectorError::UnsupportedDegree(deg));
    }
    let sign = if (p + 1) * (q + 1) % 2 == 0 { 1 } else { -1 };
    let (am, bm) = (a.to_masks(), b.to_masks());
    let mut out = MaskMap::new();
    let mut half = |x: &MaskMap, y: &MaskMap, coeff: i64| {
        for i in 0..3 {
            let mut left = MaskMap::new();
            for (mask, poly) in x {
                if let Some((rest, s)) = right_deriv_sign(*mask, i) {
                    mask_add(&mut left, rest, poly.scale(&rat(s)));
                }
            }
            if left.is_empty() {
                continue;
            }
            let right: MaskMap = y.iter().map(|(m, poly)| (*m, poly.deriv(i))).filter(|(_, d)| !d.is_zero()).collect();
            for (m, poly) in mask_wedge(&left, &right) {
                mask_add(&mut out, m, poly.scale(&rat(coeff)));
            }
        }
    };
    half(&am, &bm, 1);
    // (p-1)(q-1) has the parity of (p+1)(q+1)
    half(&bm, &am, -sign);
    Ok(MultiVector::from_masks(deg, &out))
}

/// `[lambda, c]`; `lambda` must be a bivector.
pub fn lp_coboundary(lambda: &MultiVector, c: &MultiVector) -> Result<MultiVector, MultivectorError> {
    if lambda.degree != 2 {
        return Err(MultivectorError::WrongDegree { expected: 2, found: lambda.degree });
    }
    if c.degree == 3 {
        return Ok(MultiVector::zero(3));
    }
    schouten(lambda, c)
}

pub fn is_poisson(pi: &MultiVector) -> bool {
    pi.degree == 2 && schouten(pi, pi).map(|t| t.is_zero()).unwrap_or(false)
}

/// A bivector that has been checked to be Poisson, with its coboundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpOperator {
    lambda: MultiVector,
}

impl LpOperator {
    pub fn new(lambda: MultiVector) -> Result<Self, MultivectorError> {
        if lambda.degree != 2 {
            return Err(MultivectorError::WrongDegree { expected: 2, found: lambda.degree });
        }
        let jac = schouten(&lambda, &lambda)?;
        if !jac.is_zero() {
            return Err(MultivectorError::NotPoisson(jac.to_string()));
        }
        Ok(LpOperator { lambda })
    }

    pub fn tensor(&self) -> &MultiVector {
        &self.lambda
    }

    pub fn apply(&self, c: &MultiVector) -> MultiVector {
        lp_coboundary(&self.lambda, c).expect("degrees 2 and <= 2 bracket into degree <= 3")
    }
}

/// Antisymmetric coefficient `pi_ij` of a bivector (zero-based indices).
fn bivector_entry(pi: &MultiVector, i: usize, j: usize) -> Poly {
    // components are (pi_23, pi_31, pi_12)
    let (idx, sign) = match (i, j) {
        (1, 2) => (0, 1),
        (2, 1) => (0, -1),
        (2, 0) => (1, 1),
        (0, 2) => (1, -1),
        (0, 1) => (2, 1),
        (1, 0) => (2, -1),
        _ => return Poly::zero(),
    };
    pi.comps[idx].scale(&rat(sign))
}

/// Modular vector field with respect to `d123`: component `j` is
/// `sum_i d_i pi_ji`.
pub fn curl(pi: &MultiVector) -> Result<MultiVector, MultivectorError> {
    if pi.degree != 2 {
        return Err(MultivectorError::WrongDegree { expected: 2, found: pi.degree });
    }
    Ok(MultiVector::vector(std::array::from_fn(|j| {
        (0..3).fold(Poly::zero(), |acc, i| &acc + &bivector_entry(pi, j, i).deriv(i))
    })))
}

/// `d1 h d23 + d2 h d31 + d3 h d12`.
pub fn jacobian_structure(h: &Poly) -> MultiVector {
    MultiVector::bivector([h.deriv(0), h.deriv(1), h.deriv(2)])
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = BASIS_NAMES[self.degree];
        let mut first = true;
        for (p, name) in self.comps.iter().zip(names.iter()) {
            if p.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if name.is_empty() {
                write!(f, "{p}")?;
            } else if p.num_terms() == 1 && p.leading().is_some_and(|(e, c)| e.total() == 0 && c == &rat(1)) {
                write!(f, "{name}")?;
            } else {
                write!(f, "({p})*{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiVector<{}>({})", self.degree, self)
    }
}

impl FromStr for MultiVector {
    type Err = MultivectorError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let e = crate::text::parse_expression(s)?;
        Ok(MultiVector::from_masks(e.degree.unwrap_or(0), &e.components))
    }
}

impl Zero for MultiVector {
    fn zero() -> Self {
        MultiVector::zero(0)
    }
    fn is_zero(&self) -> bool {
        MultiVector::is_zero(self)
    }
}

impl std::ops::Add for MultiVector {
    type Output = MultiVector;
    fn add(self, o: MultiVector) -> MultiVector {
        MultiVector::add(&self, &o)
    }
}
