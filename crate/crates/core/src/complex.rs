//! Per-bigrade cochain complexes.
//!
//! At a fixed numerator grade `(k, r)` there are three finite complexes:
//! potential cochains `P` (Y-frame cochains with coefficients in `Q_kr`,
//! restricted by the range rules below), real cochains `R` (genuine
//! polynomial cochains) and supplementary cochains `S`, a fixed complement
//! of `R` in `P`. `0 -> R -> P -> S -> 0` is exact and `phi = p_R d_P` on
//! `S` realises the connecting map.
//!
//! Coordinates: a `P`-cochain is the concatenation of the `Q_kr`
//! coordinates of its active components; an `R`-cochain is the list of
//! coefficients of its monomial basis; an `S`-cochain uses the named
//! coefficients `(c, d)`, `(e, f, g, h)`, `(i, j)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    image_basis, inverse, kernel_basis, quotient_basis, rat, solve, LinalgError, RatMatrix, Rational, SubspaceBasis,
};
use crate::multivector::{basis_len, lp_coboundary, MultiVector};
use crate::poly::{Bigrade, Exponent, Poly};
use crate::structures::Structure;
use crate::yframe::{to_y_frame, x_matrix, YCochain};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("internal inconsistency at {grade}, degree {d}: {msg}")]
    Inconsistent { grade: Bigrade, d: usize, msg: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexKind {
    P,
    R,
    S,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 3] = [ComplexKind::P, ComplexKind::R, ComplexKind::S];
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::P => "P",
            ComplexKind::R => "R",
            ComplexKind::S => "S",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SliceSpec {
    pub complex: ComplexKind,
    pub d: usize,
    pub grade: Bigrade,
}

impl SliceSpec {
    pub fn new(complex: ComplexKind, d: usize, grade: Bigrade) -> Self {
        assert!(d <= 3, "cochain degree must be at most 3");
        SliceSpec { complex, d, grade }
    }
}

/// A cochain in either frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cochain {
    Y(YCochain),
    Real(MultiVector),
}

impl Cochain {
    /// Both renderings for real cochains, the Y-frame one otherwise.
    pub fn render_both(&self, grade: Bigrade) -> String {
        match self {
            Cochain::Y(y) => y.to_string(),
            Cochain::Real(m) => match to_y_frame(m, grade) {
                Ok(y) => format!("{m} = {y}"),
                Err(_) => m.to_string(),
            },
        }
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cochain::Y(y) => y.fmt(f),
            Cochain::Real(m) => m.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceBasis {
    pub spec: SliceSpec,
    pub elements: Vec<Cochain>,
}

impl SliceBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }
}

/// Active Y-components of `P^d_kr`. The factors `1 - delta_ij` of the
/// range rules switch individual components off.
pub fn active_components(d: usize, g: Bigrade) -> Vec<usize> {
    let (k, r) = (g.k, g.r);
    let mut out = Vec::new();
    match d {
        0 => {
            if k >= 2 && k < r {
                out.push(0);
            }
        }
        1 => {
            if k >= 1 && k < r {
                out.extend([0, 1]);
            }
            if k >= 2 {
                out.push(2);
            }
        }
        2 => {
            if k >= 1 {
                out.extend([0, 1]);
            }
            if k < r {
                out.push(2);
            }
        }
        3 => out.push(0),
        _ => panic!("cochain degree must be at most 3"),
    }
    out
}

fn p_dim(d: usize, g: Bigrade) -> usize {
    active_components(d, g).len() * g.dim()
}

fn p_coords(c: &YCochain, g: Bigrade) -> Option<Vec<Rational>> {
    let active = active_components(c.degree, g);
    let mut out = Vec::with_capacity(active.len() * g.dim());
    for (i, p) in c.numerators.iter().enumerate() {
        if active.contains(&i) {
            out.extend(c.component(i).coords());
        } else if !p.is_zero() {
            return None;
        }
    }
    Some(out)
}

fn y_from_p_coords(d: usize, g: Bigrade, v: &[Rational]) -> YCochain {
    let active = active_components(d, g);
    let n = g.dim();
    let monos = g.monomials();
    let numerators = (0..basis_len(d))
        .map(|i| match active.iter().position(|&a| a == i) {
            Some(slot) => Poly::from_terms(monos.iter().copied().zip(v[slot * n..(slot + 1) * n].iter().cloned())),
            None => Poly::zero(),
        })
        .collect();
    YCochain { degree: d, grade: g, numerators }
}

fn monomials_of(k: i64, r: i64) -> Vec<Exponent> {
    Bigrade::checked(k, r).map(|g| g.monomials()).unwrap_or_default()
}

/// `(component, coefficient monomials)` blocks of the real basis.
fn real_blocks(d: usize, g: Bigrade) -> Vec<(usize, Vec<Exponent>)> {
    let (k, r) = (g.k as i64, g.r as i64);
    let active = active_components(d, g);
    let on = |i: usize| active.contains(&i);
    let mut out = Vec::new();
    match d {
        0 => {
            if on(0) {
                out.push((0, monomials_of(k - 2, r - 3)));
            }
        }
        1 => {
            if on(0) {
                out.push((0, monomials_of(k - 1, r - 2)));
                out.push((1, monomials_of(k - 1, r - 2)));
            }
            if on(2) {
                out.push((2, monomials_of(k - 2, r - 2)));
            }
        }
        2 => {
            if on(0) {
                out.push((0, monomials_of(k - 1, r - 1)));
                out.push((1, monomials_of(k - 1, r - 1)));
            }
            if on(2) {
                out.push((2, monomials_of(k, r - 1)));
            }
        }
        _ => out.push((0, monomials_of(k, r))),
    }
    out
}

fn real_basis(d: usize, g: Bigrade) -> Vec<MultiVector> {
    let n = basis_len(d);
    real_blocks(d, g)
        .into_iter()
        .flat_map(|(i, monos)| {
            monos.into_iter().map(move |e| {
                let mut comps = vec![Poly::zero(); n];
                comps[i] = Poly::monomial(rat(1), e);
                MultiVector::new(d, comps)
            })
        })
        .collect()
}

fn supp_basis(d: usize, g: Bigrade) -> Vec<YCochain> {
    let (k, r) = (g.k, g.r);
    let active = active_components(d, g);
    let on = |i: usize| active.contains(&i);
    let xk = || Poly::monomial(rat(1), Exponent::new(k, 0, r - k));
    let xk1y = || Poly::monomial(rat(1), Exponent::new(k.saturating_sub(1), 1, r - k));
    let single = |slot: usize, p: Poly| {
        let mut nums = vec![Poly::zero(); basis_len(d)];
        nums[slot] = p;
        YCochain { degree: d, grade: g, numerators: nums }
    };
    let mut out = Vec::new();
    match d {
        0 if on(0) => {
            out.push(single(0, xk()));
            out.push(single(0, xk1y()));
        }
        1 => {
            if on(0) {
                out.push(single(0, xk()));
                out.push(single(1, xk()));
            }
            if on(2) {
                out.push(single(2, xk()));
                out.push(single(2, xk1y()));
            }
        }
        2 if on(0) => {
            out.push(single(0, xk()));
            out.push(single(1, xk()));
        }
        _ => {}
    }
    out
}

fn potential_basis(d: usize, g: Bigrade) -> Vec<YCochain> {
    let dim = p_dim(d, g);
    (0..dim)
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            v[i] = rat(1);
            y_from_p_coords(d, g, &v)
        })
        .collect()
}

pub fn slice_basis(spec: SliceSpec) -> SliceBasis {
    let (d, g) = (spec.d, spec.grade);
    let elements = match spec.complex {
        ComplexKind::P => potential_basis(d, g).into_iter().map(Cochain::Y).collect(),
        ComplexKind::R => real_basis(d, g).into_iter().map(Cochain::Real).collect(),
        ComplexKind::S => supp_basis(d, g).into_iter().map(Cochain::Y).collect(),
    };
    SliceBasis { spec, elements }
}

/// The matrices `mu_0 .. mu_3` used by the closed-form coboundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliMatrices {
    pub mu: [RatMatrix; 4],
}

impl PauliMatrices {
    pub fn new() -> Self {
        PauliMatrices {
            mu: [
                RatMatrix::from_i64(&[&[1, 0], &[0, 1]]),
                RatMatrix::from_i64(&[&[0, 1], &[1, 0]]),
                RatMatrix::from_i64(&[&[0, 1], &[-1, 0]]),
                RatMatrix::from_i64(&[&[1, 0], &[0, -1]]),
            ],
        }
    }

    /// `(-1)^(ij+1) [delta_ij mu_0 + eps_ijk mu_k]` for `i, j` in `1..=3`.
    pub fn product_rule(&self, i: usize, j: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(2, 2);
        if i == j {
            m = m.add(&self.mu[0]);
        }
        for k in 1..=3 {
            let eps = levi_civita(i, j, k);
            if eps != 0 {
                m = m.add(&self.mu[k].scale(&rat(eps)));
            }
        }
        let sign = if (i * j + 1).is_multiple_of(2) { 1 } else { -1 };
        m.scale(&rat(sign))
    }
}

impl Default for PauliMatrices {
    fn default() -> Self {
        Self::new()
    }
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (2, 1, 3) | (1, 3, 2) => -1,
        _ => 0,
    }
}

/// All matrices of one grade.
#[derive(Clone, Debug)]
pub struct GradeComplex {
    pub grade: Bigrade,
    /// `R^d -> P^d`.
    pub iota: Vec<RatMatrix>,
    /// `S^d -> P^d`.
    pub sigma: Vec<RatMatrix>,
    /// `P^d -> R^d`.
    pub p_r: Vec<RatMatrix>,
    /// `P^d -> S^d`.
    pub p_s: Vec<RatMatrix>,
    /// Coboundaries `C^d -> C^(d+1)` for `d = 0, 1, 2`.
    pub d_p: Vec<RatMatrix>,
    pub d_r: Vec<RatMatrix>,
    pub d_s: Vec<RatMatrix>,
    /// `phi: S^d -> R^(d+1)` for `d = 0, 1, 2`.
    pub phi: Vec<RatMatrix>,
    real: Vec<Vec<MultiVector>>,
}

fn potential_coboundary(g: Bigrade, s: &Structure) -> Result<Vec<RatMatrix>, ComplexError> {
    let n = g.dim();
    let x = [1, 2, 3].map(|i| x_matrix(i, g, &s.admissible).matrix);
    let neg = |m: &RatMatrix| m.scale(&rat(-1));
    // full block matrices on all components, rows = output components
    let blocks: [Vec<Vec<Option<RatMatrix>>>; 3] = [
        vec![vec![Some(x[0].clone())], vec![Some(x[1].clone())], vec![Some(x[2].clone())]],
        vec![
            vec![None, Some(neg(&x[2])), Some(x[1].clone())],
            vec![Some(x[2].clone()), None, Some(neg(&x[0]))],
            vec![Some(neg(&x[1])), Some(x[0].clone()), None],
        ],
        vec![vec![Some(x[0].clone()), Some(x[1].clone()), Some(x[2].clone())]],
    ];
    let mut out = Vec::with_capacity(3);
    for (d, b) in blocks.iter().enumerate() {
        let (src, dst) = (active_components(d, g), active_components(d + 1, g));
        let mut m = RatMatrix::zeros(dst.len() * n, src.len() * n);
        for (bi, row) in b.iter().enumerate() {
            for (bj, blk) in row.iter().enumerate() {
                let Some(blk) = blk else { continue };
                let Some(sj) = src.iter().position(|&c| c == bj) else { continue };
                match dst.iter().position(|&c| c == bi) {
                    Some(di) => m.set_block(di * n, sj * n, blk),
                    None if blk.is_zero() => {}
                    None => {
                        return Err(ComplexError::Inconsistent {
                            grade: g,
                            d,
                            msg: format!("coboundary leaves the potential space through component {bi}"),
                        })
                    }
                }
            }
        }
        out.push(m);
    }
    Ok(out)
}

fn real_coords(m: &MultiVector, index: &BTreeMap<(usize, Exponent), usize>, dim: usize) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::zero(); dim];
    for (i, p) in m.components().iter().enumerate() {
        for (e, c) in p.terms() {
            v[*index.get(&(i, *e))?] = c.clone();
        }
    }
    Some(v)
}

impl GradeComplex {
    pub fn new(g: Bigrade, s: &Structure) -> Result<Self, ComplexError> {
        let incons = |d: usize, msg: &str| ComplexError::Inconsistent { grade: g, d, msg: msg.to_string() };
        let real: Vec<Vec<MultiVector>> = (0..4).map(|d| real_basis(d, g)).collect();
        let mut iota = Vec::new();
        let mut sigma = Vec::new();
        let mut p_r = Vec::new();
        let mut p_s = Vec::new();
        for d in 0..4 {
            let pd = p_dim(d, g);
            let cols = real[d]
                .iter()
                .map(|m| to_y_frame(m, g).ok().and_then(|y| p_coords(&y, g)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| incons(d, "real basis element outside the potential space"))?;
            let io = RatMatrix::from_columns(pd, &cols);
            let scols = supp_basis(d, g)
                .iter()
                .map(|y| p_coords(y, g))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| incons(d, "supplementary element outside the potential space"))?;
            let si = RatMatrix::from_columns(pd, &scols);
            let inv = inverse(&io.hstack(&si)).ok_or_else(|| incons(d, "R + S is not a direct sum equal to P"))?;
            let nr = io.cols();
            let rows_r: Vec<usize> = (0..nr).collect();
            let rows_s: Vec<usize> = (nr..pd).collect();
            let all: Vec<usize> = (0..pd).collect();
            p_r.push(inv.select(&rows_r, &all));
            p_s.push(inv.select(&rows_s, &all));
            iota.push(io);
            sigma.push(si);
        }
        let d_p = potential_coboundary(g, s)?;
        let mut d_r = Vec::new();
        let mut d_s = Vec::new();
        let mut phi = Vec::new();
        for d in 0..3 {
            // Y-frame route: d_R = iota^-1 d_P iota, with a vanishing S-part
            let image = d_p[d].mul(&iota[d]);
            if !p_s[d + 1].mul(&image).is_zero() {
                return Err(incons(d, "potential coboundary of a real cochain is not real"));
            }
            let via_y = p_r[d + 1].mul(&image);
            // coordinate-frame route through the Schouten bracket
            let index: BTreeMap<(usize, Exponent), usize> = real_blocks(d + 1, g)
                .into_iter()
                .flat_map(|(i, monos)| monos.into_iter().map(move |e| (i, e)))
                .enumerate()
                .map(|(n, key)| (key, n))
                .collect();
            let dim_next = real[d + 1].len();
            let cols = real[d]
                .iter()
                .map(|m| {
                    let img = lp_coboundary(&s.tensor, m).expect("degree <= 2 input");
                    real_coords(&img, &index, dim_next)
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| incons(d, "Schouten image has monomials outside the real basis"))?;
            let via_schouten = RatMatrix::from_columns(dim_next, &cols);
            if via_schouten != via_y {
                return Err(incons(d, "real coboundary differs between the coordinate and Y-frame routes"));
            }
            d_r.push(via_schouten);
            let ds = d_p[d].mul(&sigma[d]);
            d_s.push(p_s[d + 1].mul(&ds));
            phi.push(p_r[d + 1].mul(&ds));
        }
        Ok(GradeComplex { grade: g, iota, sigma, p_r, p_s, d_p, d_r, d_s, phi, real })
    }

    pub fn dim(&self, kind: ComplexKind, d: usize) -> usize {
        match kind {
            ComplexKind::P => self.iota[d].rows(),
            ComplexKind::R => self.iota[d].cols(),
            ComplexKind::S => self.sigma[d].cols(),
        }
    }

    /// `C^d -> C^(d+1)`; for `d = 3` the empty map into the zero space.
    pub fn coboundary(&self, kind: ComplexKind, d: usize) -> RatMatrix {
        if d >= 3 {
            return RatMatrix::zeros(0, self.dim(kind, d));
        }
        match kind {
            ComplexKind::P => self.d_p[d].clone(),
            ComplexKind::R => self.d_r[d].clone(),
            ComplexKind::S => self.d_s[d].clone(),
        }
    }

    fn incoming(&self, kind: ComplexKind, d: usize) -> RatMatrix {
        if d == 0 {
            RatMatrix::zeros(self.dim(kind, 0), 0)
        } else {
            self.coboundary(kind, d - 1)
        }
    }

    /// `phi: S^d -> R^(d+1)`, empty for `d = 3`.
    pub fn phi_matrix(&self, d: usize) -> RatMatrix {
        if d >= 3 {
            RatMatrix::zeros(0, self.dim(ComplexKind::S, d))
        } else {
            self.phi[d].clone()
        }
    }

    pub fn cochain(&self, kind: ComplexKind, d: usize, v: &[Rational]) -> Cochain {
        match kind {
            ComplexKind::P => Cochain::Y(y_from_p_coords(d, self.grade, v)),
            ComplexKind::S => Cochain::Y(y_from_p_coords(d, self.grade, &self.sigma[d].mul_vec(v))),
            ComplexKind::R => Cochain::Real(
                self.real[d]
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .fold(MultiVector::zero(d), |acc, (m, c)| acc.add(&m.scale(c))),
            ),
        }
    }

    /// Coordinates of a real cochain of this grade in the real basis.
    pub fn real_coords(&self, m: &MultiVector) -> Option<Vec<Rational>> {
        let d = m.degree();
        let index: BTreeMap<(usize, Exponent), usize> = real_blocks(d, self.grade)
            .into_iter()
            .flat_map(|(i, monos)| monos.into_iter().map(move |e| (i, e)))
            .enumerate()
            .map(|(n, key)| (key, n))
            .collect();
        real_coords(m, &index, self.real[d].len())
    }

    pub fn cohomology(&self, kind: ComplexKind, d: usize) -> Result<SliceCohomology, ComplexError> {
        let z = kernel_basis(&self.coboundary(kind, d));
        let b = image_basis(&self.incoming(kind, d));
        let q = quotient_basis(&z, &b)?;
        let representatives = q.vectors.iter().map(|v| self.cochain(kind, d, v)).collect();
        Ok(SliceCohomology {
            spec: SliceSpec::new(kind, d, self.grade),
            dim: q.dim(),
            representatives,
            coords: q,
            boundaries: b,
        })
    }

    /// `d^2 = 0` in all three complexes.
    pub fn check_square_zero(&self) -> bool {
        ComplexKind::ALL
            .iter()
            .all(|&k| (0..3).all(|d| self.coboundary(k, d + 1).mul(&self.coboundary(k, d)).is_zero()))
    }

    /// `iota` and `p_S` are chain maps and `phi d_S = - d_R phi`.
    pub fn check_chain_maps(&self) -> bool {
        (0..3).all(|d| {
            self.d_p[d].mul(&self.iota[d]) == self.iota[d + 1].mul(&self.d_r[d])
                && self.p_s[d + 1].mul(&self.d_p[d]) == self.d_s[d].mul(&self.p_s[d])
        }) && (0..3).all(|d| {
            let lhs = self.phi_matrix(d + 1).mul(&self.d_s[d]);
            let rhs = self.coboundary(ComplexKind::R, d + 1).mul(&self.phi[d]).scale(&rat(-1));
            lhs == rhs
        })
    }

    /// Matrix of the map induced on cohomology by a chain map `f`.
    fn induced(&self, f: &RatMatrix, src: &SliceCohomology, dst: &SliceCohomology) -> Result<RatMatrix, ComplexError> {
        let basis = dst.coords.as_columns().hstack(&dst.boundaries.as_columns());
        let mut cols = Vec::with_capacity(src.dim);
        for z in &src.coords.vectors {
            let img = f.mul_vec(z);
            let x = solve(&basis, &img).ok_or_else(|| ComplexError::Inconsistent {
                grade: self.grade,
                d: dst.spec.d,
                msg: format!("image of a {} cocycle is not a {} cocycle", src.spec.complex, dst.spec.complex),
            })?;
            cols.push(x[..dst.dim].to_vec());
        }
        Ok(RatMatrix::from_columns(dst.dim, &cols))
    }

    pub fn les_check(&self) -> Result<LesReport, ComplexError> {
        let coh: Vec<[SliceCohomology; 3]> = (0..4)
            .map(|d| {
                Ok([
                    self.cohomology(ComplexKind::R, d)?,
                    self.cohomology(ComplexKind::P, d)?,
                    self.cohomology(ComplexKind::S, d)?,
                ])
            })
            .collect::<Result<_, ComplexError>>()?;
        // maps along H0R -> H0P -> H0S -> H1R -> ... -> H3S
        let mut maps = Vec::new();
        let mut nodes = Vec::new();
        for d in 0..4 {
            let [hr, hp, hs] = &coh[d];
            nodes.push((format!("H{d}(R)"), hr.dim));
            nodes.push((format!("H{d}(P)"), hp.dim));
            nodes.push((format!("H{d}(S)"), hs.dim));
            maps.push(self.induced(&self.iota[d], hr, hp)?);
            maps.push(self.induced(&self.p_s[d], hp, hs)?);
            if d < 3 {
                maps.push(self.induced(&self.phi[d], hs, &coh[d + 1][0])?);
            } else {
                maps.push(RatMatrix::zeros(0, hs.dim));
            }
        }
        let ranks: Vec<usize> = maps.iter().map(RatMatrix::rank).collect();
        let mut report_nodes = Vec::new();
        for (n, (name, dim)) in nodes.into_iter().enumerate() {
            let rank_in = if n == 0 { 0 } else { ranks[n - 1] };
            let rank_out = ranks[n];
            let composes = n == 0 || maps[n].mul(&maps[n - 1]).is_zero();
            report_nodes.push(LesNode { name, dim, rank_in, rank_out, exact: composes && rank_in + rank_out == dim });
        }
        let short_exact = (0..4).all(|d| {
            self.dim(ComplexKind::P, d) == self.dim(ComplexKind::R, d) + self.dim(ComplexKind::S, d)
        });
        // dim H^d(R) = (dim H^(d-1)(S) - dim ker phi#) + dim ker (p_S)#
        let dirsum = (0..4)
            .map(|d| {
                let from_s = if d == 0 { 0 } else { ranks[3 * (d - 1) + 2] };
                let ker_p = coh[d][1].dim - ranks[3 * d + 1];
                coh[d][0].dim == from_s + ker_p
            })
            .collect();
        let exact = short_exact && report_nodes.iter().all(|n| n.exact);
        Ok(LesReport { grade: self.grade, nodes: report_nodes, short_exact, dirsum, exact })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCohomology {
    pub spec: SliceSpec,
    pub dim: usize,
    pub representatives: Vec<Cochain>,
    /// Coordinates of the representatives.
    pub coords: SubspaceBasis,
    /// Basis of the coboundaries in the same coordinates.
    pub boundaries: SubspaceBasis,
}

impl SliceCohomology {
    /// Class of the cocycle `v` in the basis of representatives, or `None`
    /// if `v` is not a cocycle of this slice.
    pub fn class_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let basis = self.coords.as_columns().hstack(&self.boundaries.as_columns());
        solve(&basis, v).map(|x| x[..self.dim].to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesNode {
    pub name: String,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LesReport {
    pub grade: Bigrade,
    pub nodes: Vec<LesNode>,
    pub short_exact: bool,
    pub dirsum: Vec<bool>,
    pub exact: bool,
}

impl LesReport {
    pub fn passed(&self) -> bool {
        self.exact && self.dirsum.iter().all(|&b| b)
    }
}

pub fn coboundary_matrix(kind: ComplexKind, d: usize, g: Bigrade, s: &Structure) -> Result<RatMatrix, ComplexError> {
    Ok(GradeComplex::new(g, s)?.coboundary(kind, d))
}

pub fn phi_matrix(d: usize, g: Bigrade, s: &Structure) -> Result<RatMatrix, ComplexError> {
    Ok(GradeComplex::new(g, s)?.phi_matrix(d))
}

pub fn slice_cohomology(kind: ComplexKind, d: usize, g: Bigrade, s: &Structure) -> Result<SliceCohomology, ComplexError> {
    GradeComplex::new(g, s)?.cohomology(kind, d)
}

pub fn les_check(g: Bigrade, s: &Structure) -> Result<LesReport, ComplexError> {
    GradeComplex::new(g, s)?.les_check()
}

/// Cohomology of every slice with `r <= rmax`, sorted by `(d, k, r)` and
/// then by complex. Grades are computed in parallel.
pub fn cohomology_table(s: &Structure, rmax: u32, kinds: &[ComplexKind]) -> Result<Vec<SliceCohomology>, ComplexError> {
    let per_grade: Vec<Vec<SliceCohomology>> = Bigrade::all_up_to(rmax)
        .into_par_iter()
        .map(|g| {
            let gc = GradeComplex::new(g, s)?;
            let mut v = Vec::new();
            for &kind in kinds {
                for d in 0..4 {
                    v.push(gc.cohomology(kind, d)?);
                }
            }
            Ok(v)
        })
        .collect::<Result<_, ComplexError>>()?;
    let mut all: Vec<SliceCohomology> = per_grade.into_iter().flatten().collect();
    all.sort_by_key(|c| (c.spec.d, c.spec.grade.k, c.spec.grade.r, c.spec.complex));
    Ok(all)
}

/// Closed-form `S`-maps of structure 2 with parameters `(a, b)`, in the
/// coordinates `(c, d)`, `(e, f, g, h)`, `(i, j)`.
pub mod closed_form {
    use super::*;

    /// `d_S` on `S^0`: rows `(e, f, g, h)`, valid for `2 <= k <= r - 1`.
    pub fn d_s0(a: &Rational, b: &Rational, g: Bigrade) -> RatMatrix {
        let mu = PauliMatrices::new().mu;
        let (k, r) = (g.k as i64, g.r as i64);
        let top = mu[1].scale(&(b * rat(2 * (r - k)))).sub(&mu[3].scale(&(a * rat(r - k - 1))));
        let bottom = mu[0].scale(&(a * rat(k - 2))).sub(&mu[2].scale(&(b * rat(2 * k))));
        top.vstack(&bottom)
    }

    /// `d_S` on `S^1`: rows `(i, j)`, columns the active ones among
    /// `(e, f, g, h)`; valid for `k >= 1`.
    pub fn d_s1(a: &Rational, b: &Rational, g: Bigrade) -> RatMatrix {
        let mu = PauliMatrices::new().mu;
        let (k, r) = (g.k as i64, g.r as i64);
        let left = mu[0].scale(&(b * rat(2 * k))).sub(&mu[2].scale(&(a * rat(k - 2))));
        let right = mu[1].scale(&(a * rat(r - k - 1))).add(&mu[3].scale(&(b * rat(2 * (r - k)))));
        match (k < r, k >= 2) {
            (true, true) => left.hstack(&right),
            (true, false) => left,
            (false, true) => right,
            (false, false) => RatMatrix::zeros(2, 0),
        }
    }

    /// `phi` on `S^2_rr`: the `Y123` numerator `x^(r-1) [(a i - b r j) x - b r i y]`.
    pub fn phi2(a: &Rational, b: &Rational, r: u32) -> [Poly; 2] {
        let br = b * rat(r as i64);
        let x = |e| Poly::monomial(rat(1), e);
        let xr = x(Exponent::new(r, 0, 0));
        let xr1y = x(Exponent::new(r - 1, 1, 0));
        [&xr.scale(a) - &xr1y.scale(&br), xr.scale(&-br)]
    }

    /// `phi` on `S^1_rr` for `a = 0`, images of `g` and `h`.
    pub fn phi1_a0(b: &Rational, r: u32) -> [MultiVector; 2] {
        let m = |e1: u32, e2: u32| Poly::monomial(rat(1), Exponent::new(e1, e2, 0));
        let rr = rat(r as i64);
        let g_img = MultiVector::bivector([m(r - 1, 0).scale(&rr), Poly::zero(), Poly::zero()]);
        let h_img = MultiVector::bivector([m(r - 2, 1).scale(&(rr - rat(1))), m(r - 1, 0), Poly::zero()]);
        [g_img.scale(&-b), h_img.scale(&-b)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::StructureParams;

    fn dh2(a: i64, b: i64) -> Structure {
        Structure::new(StructureParams::dh2_i(a, b)).unwrap()
    }

    fn g(k: u32, r: u32) -> Bigrade {
        Bigrade::new(k, r)
    }

    #[test]
    fn slice_basis_examples() {
        assert_eq!(slice_basis(SliceSpec::new(ComplexKind::S, 0, g(3, 5))).dim(), 2);
        assert_eq!(slice_basis(SliceSpec::new(ComplexKind::S, 3, g(2, 4))).dim(), 0);
        assert_eq!(slice_basis(SliceSpec::new(ComplexKind::P, 2, g(1, 1))).dim(), 4);
        assert_eq!(slice_basis(SliceSpec::new(ComplexKind::P, 0, g(3, 3))).dim(), 0);
    }

    #[test]
    fn short_exact_dims() {
        for gr in Bigrade::all_up_to(9) {
            for d in 0..4 {
                let dim = |kind| slice_basis(SliceSpec::new(kind, d, gr)).dim();
                assert_eq!(dim(ComplexKind::P), dim(ComplexKind::R) + dim(ComplexKind::S), "{gr} d={d}");
            }
        }
    }

    #[test]
    fn pauli_table() {
        let p = PauliMatrices::new();
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(p.mu[i].mul(&p.mu[j]), p.product_rule(i, j), "mu{i} mu{j}");
            }
        }
    }

    #[test]
    fn two_routes_agree_and_square_zero() {
        for s in [dh2(1, 1), dh2(0, 1), dh2(-2, 3)] {
            for gr in Bigrade::all_up_to(6) {
                let gc = GradeComplex::new(gr, &s).unwrap();
                assert!(gc.check_square_zero(), "{gr}");
                assert!(gc.check_chain_maps(), "{gr}");
            }
        }
    }

    #[test]
    fn s_coboundary_example() {
        let s = dh2(0, 1);
        let m = coboundary_matrix(ComplexKind::S, 0, g(2, 3), &s).unwrap();
        // (c, d) -> (2d, 2c, -4d, 4c)
        assert_eq!(m, RatMatrix::from_i64(&[&[0, 2], &[2, 0], &[0, -4], &[4, 0]]));
        for d in 2..4 {
            assert!(coboundary_matrix(ComplexKind::S, d, g(3, 4), &s).unwrap().is_zero());
        }
    }

    #[test]
    fn closed_forms_agree() {
        for (a, b) in [(1, 1), (0, 1), (3, -2), (-1, 5)] {
            let s = dh2(a, b);
            let (qa, qb) = (rat(a), rat(b));
            for gr in Bigrade::all_up_to(7) {
                let gc = GradeComplex::new(gr, &s).unwrap();
                if gc.dim(ComplexKind::S, 0) > 0 {
                    assert_eq!(gc.d_s[0], closed_form::d_s0(&qa, &qb, gr), "d_S0 {gr}");
                }
                if gc.dim(ComplexKind::S, 1) > 0 {
                    assert_eq!(gc.d_s[1], closed_form::d_s1(&qa, &qb, gr), "d_S1 {gr}");
                }
                if gr.k == gr.r && gr.r >= 1 {
                    let want = closed_form::phi2(&qa, &qb, gr.r);
                    for (col, w) in want.iter().enumerate() {
                        let img = gc.cochain(ComplexKind::R, 3, &gc.phi[2].column(col));
                        assert_eq!(img, Cochain::Real(MultiVector::trivector(w.clone())), "phi2 {gr}");
                    }
                }
                if gr.k == gr.r && gr.r >= 2 && a == 0 {
                    let want = closed_form::phi1_a0(&qb, gr.r);
                    for (col, w) in want.iter().enumerate() {
                        let img = gc.cochain(ComplexKind::R, 2, &gc.phi[1].column(col));
                        assert_eq!(img, Cochain::Real(w.clone()), "phi1 {gr}");
                    }
                }
            }
        }
    }

    #[test]
    fn cohomology_examples() {
        let h = slice_cohomology(ComplexKind::R, 2, g(1, 1), &dh2(0, 1)).unwrap();
        assert_eq!(h.dim, 2);
        let gc = GradeComplex::new(g(1, 1), &dh2(0, 1)).unwrap();
        for rep in ["d23", "d31"] {
            let v = gc.real_coords(&rep.parse().unwrap()).unwrap();
            assert!(h.class_of(&v).is_some_and(|c| c.iter().any(|x| !x.is_zero())));
        }
        assert_eq!(slice_cohomology(ComplexKind::R, 2, g(1, 1), &dh2(1, 1)).unwrap().dim, 0);
        let h = slice_cohomology(ComplexKind::R, 3, g(0, 0), &dh2(1, 1)).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.representatives, vec![Cochain::Real("d123".parse().unwrap())]);
    }

    #[test]
    fn les_examples() {
        let rep = les_check(g(1, 1), &dh2(1, 1)).unwrap();
        assert!(rep.passed(), "{rep:?}");
        for m in 2..6 {
            let s = dh2(0, 1);
            let gc = GradeComplex::new(g(m, m), &s).unwrap();
            let rep = gc.les_check().unwrap();
            assert!(rep.passed());
            // phi# injective on H1(S)
            let hs = gc.cohomology(ComplexKind::S, 1).unwrap();
            assert_eq!(hs.dim, 2);
            assert_eq!(rep.nodes[5].rank_out, 2);
        }
    }

    #[test]
    fn table_is_sorted_and_deterministic() {
        let s = dh2(1, 1);
        let t = cohomology_table(&s, 4, &[ComplexKind::R]).unwrap();
        let keys: Vec<_> = t.iter().map(|c| (c.spec.d, c.spec.grade.k, c.spec.grade.r)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(t, cohomology_table(&s, 4, &[ComplexKind::R]).unwrap());
    }
}
