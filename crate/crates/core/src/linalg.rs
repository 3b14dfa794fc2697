//! Exact dense linear algebra over the rationals.
//!
//! Elimination runs fraction-free on integer rows (Bareiss-style forward
//! pass) and only the final back substitution touches rationals. Pivots are
//! always the first nonzero entry in column order, so every basis returned
//! here is deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("vector {index} of the subspace is not contained in the ambient span")]
    NotContained { index: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Builds a `rows x cols` matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = RatMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        RatMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// The submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> RatMatrix {
        let mut out = RatMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn rank(&self) -> usize {
        rank_and_rref(self).rank
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// A 3x3 rational matrix, used for elements of gl(3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix3(pub [[Rational; 3]; 3]);

impl Matrix3 {
    pub fn zero() -> Self {
        Matrix3(std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero())))
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = Rational::one();
        }
        m
    }

    /// Matrix unit `E_ij` (zero-based indices).
    pub fn unit(i: usize, j: usize) -> Self {
        let mut m = Self::zero();
        m.0[i][j] = Rational::one();
        m
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Matrix3(rows.map(|r| r.map(rat)))
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.0[i][j]
    }

    pub fn mul(&self, other: &Matrix3) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| {
            std::array::from_fn(|j| (0..3).fold(Rational::zero(), |acc, k| acc + &self.0[i][k] * &other.0[k][j]))
        }))
    }

    pub fn add(&self, other: &Matrix3) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] + &other.0[i][j])))
    }

    pub fn sub(&self, other: &Matrix3) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] - &other.0[i][j])))
    }

    pub fn scale(&self, s: &Rational) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] * s)))
    }

    /// Commutator `mn - nm`.
    pub fn bracket(&self, other: &Matrix3) -> Matrix3 {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Matrix3 {
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn det(&self) -> Rational {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    pub fn inverse(&self) -> Option<Matrix3> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let m = &self.0;
        let cof = |i: usize, j: usize| {
            let (r0, r1) = ((i + 1) % 3, (i + 2) % 3);
            let (c0, c1) = ((j + 1) % 3, (j + 2) % 3);
            &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
        };
        // adjugate is the transposed cofactor matrix
        Some(Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i) / &det))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    /// Row-major coordinates in the basis `E_11, E_12, ..., E_33`.
    pub fn coords(&self) -> Vec<Rational> {
        self.0.iter().flatten().cloned().collect()
    }

    pub fn from_coords(c: &[Rational]) -> Matrix3 {
        assert_eq!(c.len(), 9);
        Matrix3(std::array::from_fn(|i| std::array::from_fn(|j| c[3 * i + j].clone())))
    }
}

/// A list of coordinate vectors in `Q^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Rational>>,
}

impl SubspaceBasis {
    pub fn empty(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, vectors: Vec::new() }
    }

    pub fn standard(ambient_dim: usize) -> Self {
        let vectors = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        SubspaceBasis { ambient_dim, vectors }
    }

    pub fn new(ambient_dim: usize, vectors: Vec<Vec<Rational>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient_dim), "vector length differs from ambient dimension");
        SubspaceBasis { ambient_dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The vectors as columns of an `ambient_dim x dim` matrix.
    pub fn as_columns(&self) -> RatMatrix {
        RatMatrix::from_columns(self.ambient_dim, &self.vectors)
    }

    pub fn is_independent(&self) -> bool {
        self.as_columns().rank() == self.dim()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut red = Reducer::new(self.ambient_dim);
        for b in &self.vectors {
            red.insert(b);
        }
        red.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Result of [`rank_and_rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowEchelon {
    pub rank: usize,
    pub rref: RatMatrix,
    pub pivots: Vec<usize>,
}

fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free forward elimination. Returns the echelon rows (only the
/// first `pivots.len()` rows are meaningful) and pivot columns.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &lead * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "non-exact Bareiss step");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank_and_rref(m: &RatMatrix) -> RowEchelon {
    let (ech, pivots) = bareiss_echelon(integer_rows(m), m.cols());
    let rank = pivots.len();
    let mut rref = RatMatrix::zeros(m.rows(), m.cols());
    for (i, row) in ech.iter().take(rank).enumerate() {
        let p = &row[pivots[i]];
        for j in pivots[i]..m.cols() {
            if !row[j].is_zero() {
                rref[(i, j)] = Rational::new(row[j].clone(), p.clone());
            }
        }
    }
    // back substitution, bottom pivot first
    for i in (0..rank).rev() {
        let pc = pivots[i];
        for k in 0..i {
            let f = rref[(k, pc)].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..m.cols() {
                let v = &rref[(i, j)] * &f;
                if !v.is_zero() {
                    rref[(k, j)] -= v;
                }
            }
        }
    }
    RowEchelon { rank, rref, pivots }
}

pub fn kernel_basis(m: &RatMatrix) -> SubspaceBasis {
    let RowEchelon { rref, pivots, .. } = rank_and_rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rref[(i, f)].clone();
            }
            v
        })
        .collect();
    SubspaceBasis { ambient_dim: n, vectors }
}

/// Column space of `m`, spanned by the pivot columns of `m` itself.
pub fn image_basis(m: &RatMatrix) -> SubspaceBasis {
    let RowEchelon { pivots, .. } = rank_and_rref(m);
    SubspaceBasis { ambient_dim: m.rows(), vectors: pivots.iter().map(|&j| m.column(j)).collect() }
}

/// Vectors of `z` completing a basis of `b` to a basis of `span(z)`.
pub fn quotient_basis(z: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis, LinalgError> {
    if z.ambient_dim != b.ambient_dim {
        return Err(LinalgError::DimensionMismatch { expected: z.ambient_dim, found: b.ambient_dim });
    }
    let mut zred = Reducer::new(z.ambient_dim);
    for v in &z.vectors {
        zred.insert(v);
    }
    for (index, v) in b.vectors.iter().enumerate() {
        if !zred.reduce(v).iter().all(Zero::is_zero) {
            return Err(LinalgError::NotContained { index });
        }
    }
    let mut acc = Reducer::new(z.ambient_dim);
    for v in &b.vectors {
        acc.insert(v);
    }
    let vectors = z.vectors.iter().filter(|v| acc.insert(v)).cloned().collect();
    Ok(SubspaceBasis { ambient_dim: z.ambient_dim, vectors })
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(m.rows(), m.cols(), "inverse of a non-square matrix");
    let n = m.rows();
    let RowEchelon { rank, rref, .. } = rank_and_rref(&m.hstack(&RatMatrix::identity(n)));
    if rank < n || (0..n).any(|i| rref[(i, i)].is_zero()) {
        return None;
    }
    let mut out = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = rref[(i, n + j)].clone();
        }
    }
    Some(out)
}

/// Some `x` with `m x = v`, or `None` when the system is inconsistent.
pub fn solve(m: &RatMatrix, v: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(v.len(), m.rows(), "right-hand side length must equal row count");
    let aug = m.hstack(&RatMatrix::from_columns(m.rows(), &[v.to_vec()]));
    let RowEchelon { rref, pivots, .. } = rank_and_rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rref[(i, m.cols())].clone();
    }
    Some(x)
}

/// Incremental echelon set used for span membership and basis extension.
#[derive(Clone, Debug)]
pub struct Reducer {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Reducer {
    pub fn new(dim: usize) -> Self {
        Reducer { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if w[*p].is_zero() {
                continue;
            }
            let f = w[*p].clone();
            for (wj, rj) in w.iter_mut().zip(row) {
                if !rj.is_zero() {
                    *wj -= &f * rj;
                }
            }
        }
        w
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (rj, wj) in row.iter_mut().zip(&w) {
                    if !wj.is_zero() {
                        *rj -= &f * wj;
                    }
                }
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Characteristic polynomial `det(lambda I - m)` by Faddeev-LeVerrier.
/// Coefficients are returned lowest degree first; the leading one is 1.
pub fn char_poly(m: &RatMatrix) -> Vec<Rational> {
    assert_eq!(m.rows(), m.cols(), "characteristic polynomial needs a square matrix");
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        let c_prev = coeffs[n - k + 1].clone();
        for i in 0..n {
            next[(i, i)] += &c_prev;
        }
        mk = next;
        coeffs[n - k] = -(m.mul(&mk).trace()) / rat(k as i64);
    }
    coeffs
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}
