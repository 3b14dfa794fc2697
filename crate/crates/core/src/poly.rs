//! Sparse polynomials in `x1, x2, x3` with exact rational coefficients.
//!
//! Besides ring arithmetic this module knows the bigrading used throughout
//! the crate: a monomial `x1^i x2^j x3^l` has partial degree `k = i + j` in
//! the plane variables and total degree `r = i + j + l`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{rat, Matrix3, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(pub [u32; 3]);

impl Exponent {
    pub const ONE: Exponent = Exponent([0, 0, 0]);

    pub fn new(i1: u32, i2: u32, i3: u32) -> Self {
        Exponent([i1, i2, i3])
    }

    pub fn bigrade(&self) -> Bigrade {
        let k = self.0[0] + self.0[1];
        Bigrade { k, r: k + self.0[2] }
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn add(&self, o: &Exponent) -> Exponent {
        Exponent([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    fn checked_sub(&self, o: &Exponent) -> Option<Exponent> {
        Some(Exponent([
            self.0[0].checked_sub(o.0[0])?,
            self.0[1].checked_sub(o.0[1])?,
            self.0[2].checked_sub(o.0[2])?,
        ]))
    }
}

/// Partial degree `k` in `(x1, x2)` and total degree `r`, with `k <= r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Bigrade {
    pub k: u32,
    pub r: u32,
}

impl Bigrade {
    pub fn new(k: u32, r: u32) -> Self {
        assert!(k <= r, "bigrade requires k <= r (got k={k}, r={r})");
        Bigrade { k, r }
    }

    /// `Some` only when `0 <= k <= r`; handy for shifted grades.
    pub fn checked(k: i64, r: i64) -> Option<Self> {
        (0 <= k && k <= r).then_some(Bigrade { k: k as u32, r: r as u32 })
    }

    /// Canonical monomial basis `x1^l x2^(k-l) x3^(r-k)`, `l = 0..=k`.
    pub fn monomials(&self) -> Vec<Exponent> {
        (0..=self.k).map(|l| Exponent::new(l, self.k - l, self.r - self.k)).collect()
    }

    pub fn dim(&self) -> usize {
        self.k as usize + 1
    }

    /// All grades with `0 <= k <= r <= rmax`, ordered by `(r, k)`.
    pub fn all_up_to(rmax: u32) -> Vec<Bigrade> {
        (0..=rmax).flat_map(|r| (0..=r).map(move |k| Bigrade { k, r })).collect()
    }
}

impl fmt::Display for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.r)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not bigrade-homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(c, Exponent::ONE)
    }

    pub fn monomial(c: Rational, e: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    /// The coordinate `x_{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Poly::monomial(Rational::one(), Exponent(e))
    }

    pub fn x1() -> Self {
        Poly::var(0)
    }

    pub fn x2() -> Self {
        Poly::var(1)
    }

    pub fn x3() -> Self {
        Poly::var(2)
    }

    /// `D' = x1^2 + x2^2`.
    pub fn dprime() -> Self {
        &Poly::monomial(rat(1), Exponent::new(2, 0, 0)) + &Poly::monomial(rat(1), Exponent::new(0, 2, 0))
    }

    /// `D = (x1^2 + x2^2) x3`.
    pub fn d() -> Self {
        &Poly::dprime() * &Poly::x3()
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lexicographically largest monomial.
    pub fn leading(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect() }
    }

    pub fn mul_monomial(&self, c: &Rational, m: &Exponent) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(e, x)| (e.add(m), x * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut f = *e;
            f.0[i] -= 1;
            out.add_term(f, c * rat(e.0[i] as i64));
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, x: &[Rational; 3]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e.0[i] {
                    t *= &x[i];
                }
            }
            acc + t
        })
    }

    /// Substitutes `x_i -> subs[i]`.
    pub fn compose(&self, subs: &[Poly; 3]) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for i in 0..3 {
                t = &t * &subs[i].pow(e.0[i]);
            }
            out = &out + &t;
        }
        out
    }

    /// Splits into bigrade-homogeneous parts.
    pub fn bigrade_split(&self) -> BTreeMap<Bigrade, Poly> {
        let mut parts: BTreeMap<Bigrade, Poly> = BTreeMap::new();
        for (e, c) in &self.terms {
            parts.entry(e.bigrade()).or_default().add_term(*e, c.clone());
        }
        parts
    }

    /// The common bigrade of all terms; `Ok(None)` for the zero polynomial.
    pub fn bigrade(&self) -> Result<Option<Bigrade>, PolyError> {
        let mut it = self.terms.keys().map(Exponent::bigrade);
        let Some(first) = it.next() else {
            return Ok(None);
        };
        if it.all(|g| g == first) {
            Ok(Some(first))
        } else {
            Err(PolyError::Inhomogeneous(self.to_string()))
        }
    }

    pub fn is_homogeneous_of(&self, g: Bigrade) -> bool {
        self.terms.keys().all(|e| e.bigrade() == g)
    }

    /// Exact quotient `self / divisor` if the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lt_e, lt_c) = divisor.leading().expect("division by the zero polynomial");
        let (lt_e, lt_c) = (*lt_e, lt_c.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((e, c)) = rem.leading() {
            // with a single divisor, a non-divisible leading term rules out divisibility
            let m = e.checked_sub(&lt_e)?;
            let q = c / &lt_c;
            rem = &rem - &divisor.mul_monomial(&q, &m);
            quot.add_term(m, q);
        }
        Some(quot)
    }

    /// `Some(q)` with `self = D' q`, `None` if `D'` does not divide.
    pub fn div_by_dprime(&self) -> Result<Option<Poly>, PolyError> {
        self.bigrade()?;
        Ok(self.div_exact(&Poly::dprime()))
    }

    /// `Some(q)` with `self = D q`, `None` if `D` does not divide.
    pub fn div_by_d(&self) -> Result<Option<Poly>, PolyError> {
        self.bigrade()?;
        Ok(self.div_exact(&Poly::d()))
    }

    /// Evaluates the vector field `sum a_ij x_i d_j` on `self`.
    pub fn apply_linear_field(&self, a: &Matrix3) -> Poly {
        let mut out = Poly::zero();
        for j in 0..3 {
            let dj = self.deriv(j);
            if dj.is_zero() {
                continue;
            }
            for i in 0..3 {
                let c = a.get(i, j);
                if !c.is_zero() {
                    out = &out + &(&dj * &Poly::var(i)).scale(c);
                }
            }
        }
        out
    }
}

/// Divisibility by `x1^2 + x2^2` through alternating coefficient sums.
///
/// Writing each `x3`-stratum as `sum alpha_l x1^l x2^(k-l)`, `D'` divides it
/// exactly when `alpha_0 - alpha_2 + ...` and `alpha_1 - alpha_3 + ...`
/// both vanish. Independent of [`Poly::div_exact`]; used as a cross-check.
pub fn dprime_divides_by_alternating_sums(p: &Poly) -> bool {
    let mut strata: BTreeMap<(u32, u32), [Rational; 2]> = BTreeMap::new();
    for (e, c) in p.terms() {
        let key = (e.0[0] + e.0[1], e.0[2]);
        let sums = strata.entry(key).or_insert_with(|| [Rational::zero(), Rational::zero()]);
        let l = e.0[0];
        let sign = if (l / 2) % 2 == 0 { rat(1) } else { rat(-1) };
        sums[(l % 2) as usize] += sign * c;
    }
    strata.values().all(|s| s[0].is_zero() && s[1].is_zero())
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        &self + &o
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        &self - &o
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        &self * &o
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(e: &Exponent) -> String {
    let mut parts = Vec::new();
    for (i, &n) in e.0.iter().enumerate() {
        match n {
            0 => {}
            1 => parts.push(format!("x{}", i + 1)),
            _ => parts.push(format!("x{}^{}", i + 1, n)),
        }
    }
    parts.join("*")
}

/// Renders as `c*x1^i*x2^j*x3^l + ...`, highest monomial first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = crate::text::parse_expression(s)?;
        match parsed.degree {
            None | Some(0) => Ok(parsed.components.get(&0).cloned().unwrap_or_default()),
            Some(d) => Err(PolyError::Parse { pos: 0, msg: format!("expected a polynomial, found a degree-{d} multivector") }),
        }
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn arb_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), -4i64..=4), 0..max_terms)
            .prop_map(|ts| Poly::from_terms(ts.into_iter().map(|((a, b, c), k)| (Exponent::new(a, b, c), rat(k)))))
    }

    fn arb_homogeneous(k: u32, r: u32) -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-3i64..=3, (k + 1) as usize).prop_map(move |cs| {
            Poly::from_terms(Bigrade::new(k, r).monomials().into_iter().zip(cs).map(|(e, c)| (e, rat(c))))
        })
    }

    fn arb_graded() -> impl Strategy<Value = Poly> {
        (0u32..6, 0u32..4).prop_flat_map(|(k, extra)| {
            prop_oneof![
                arb_homogeneous(k, k + extra),
                arb_homogeneous(k, k + extra).prop_map(|q| &q * &Poly::dprime()),
                arb_homogeneous(k, k + extra).prop_map(|q| &q * &Poly::d()),
            ]
        })
    }

    proptest! {
        #[test]
        fn split_resums(q in arb_poly(3, 8)) {
            let parts = q.bigrade_split();
            let mut sum = Poly::zero();
            for (g, part) in &parts {
                prop_assert!(part.is_homogeneous_of(*g));
                sum = &sum + part;
            }
            prop_assert_eq!(sum, q);
        }

        #[test]
        fn division_multiplies_back(q in arb_graded()) {
            if let Some(s) = q.div_by_dprime().unwrap() {
                prop_assert_eq!(&s * &Poly::dprime(), q.clone());
            }
            if let Some(s) = q.div_by_d().unwrap() {
                prop_assert_eq!(&s * &Poly::d(), q.clone());
            }
        }

        #[test]
        fn d_divides_iff_dprime_then_x3(q in arb_graded()) {
            let by_d = q.div_by_d().unwrap();
            let chained = q.div_by_dprime().unwrap().and_then(|s| s.div_exact(&Poly::x3()));
            prop_assert_eq!(by_d, chained);
        }

        #[test]
        fn alternating_criterion_agrees(q in arb_graded()) {
            prop_assert_eq!(q.div_by_dprime().unwrap().is_some(), dprime_divides_by_alternating_sums(&q));
        }

        #[test]
        fn linear_field_is_derivation(
            a in proptest::collection::vec(-3i64..=3, 9),
            f in arb_poly(2, 4),
            g in arb_poly(2, 4),
        ) {
            let m = Matrix3::from_coords(&a.iter().map(|&x| rat(x)).collect::<Vec<_>>());
            let lhs = (&f * &g).apply_linear_field(&m);
            let rhs = &(&f.apply_linear_field(&m) * &g) + &(&f * &g.apply_linear_field(&m));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_axioms(f in arb_poly(2, 4), g in arb_poly(2, 4), h in arb_poly(2, 4)) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        }

        #[test]
        fn render_roundtrip(f in arb_poly(3, 6)) {
            prop_assert_eq!(f.to_string().parse::<Poly>().unwrap(), f);
        }
    }
}
