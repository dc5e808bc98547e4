//! Exact rational scalars and dense linear algebra.
//!
//! Everything downstream (cocycle systems, lower central series, centers,
//! isomorphism solves) reduces to row reduction over the rationals. Storage is
//! dense; elimination skips zero entries, which keeps the very sparse cocycle
//! systems cheap without any sparse-matrix machinery.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// An exact rational number, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// A coordinate vector over [`Scalar`].
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid rational literal {0:?}")]
    BadScalar(String),
}

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-3/2"`, `" 4/6 "` (normalized to `2/3`).
pub fn parse_scalar(s: &str) -> Result<Scalar, LinalgError> {
    let t = s.trim();
    let bad = || LinalgError::BadScalar(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Scalar::from_integer(n))
        }
    }
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Scalar::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `y += c * x`
pub fn axpy(y: &mut [Scalar], c: &Scalar, x: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += c * xi;
        }
    }
}

pub fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
    x.iter()
        .zip(y)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
}

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vector]) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self, LinalgError> {
        Ok(Matrix::from_rows(rows, columns)?.transpose())
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data: Vec<Vector> = rows
            .iter()
            .map(|r| r.iter().map(|&x| scalar(x)).collect())
            .collect();
        Matrix::from_rows(cols, &data).expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.entries)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                let dst = &mut out.entries[r * other.cols..(r + 1) * other.cols];
                axpy(dst, a, other.row(k));
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// `self^k` for a square matrix (`k = 0` gives the identity).
    pub fn pow(&self, k: usize) -> Matrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self[(r, c)].clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let red = rref(&aug);
        if red.pivots.len() < n || red.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.matrix[(r, n + c)].clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && rank(self) == self.rows
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self[(r, c)].clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other[(r, c)].clone());
            }
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

/// Row-reduces a list of equal-length rows; returns only the nonzero rows of
/// the reduced form plus their pivot columns.
///
/// Pivot choice: leftmost column with a nonzero entry, topmost such row.
pub(crate) fn rref_rows(mut rows: Vec<Vector>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    rows.retain(|r| !is_zero_vector(r));
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows.len() {
            break;
        }
        let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, p);
        let inv = rows[lead][col].recip();
        if !inv.is_one() {
            for x in rows[lead].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let support: Vec<usize> = (col..cols).filter(|&c| !rows[lead][c].is_zero()).collect();
        let (before, rest) = rows.split_at_mut(lead);
        let (pivot_row, after) = rest.split_first_mut().expect("lead row exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &c in &support {
                let delta = &f * &pivot_row[c];
                row[c] -= delta;
            }
        }
        pivots.push(col);
        lead += 1;
    }
    rows.truncate(lead);
    (rows, pivots)
}

/// Reduced row echelon form; pivots are normalized to 1. Zero rows are kept at
/// the bottom so the shape matches the input.
pub fn rref(m: &Matrix) -> Rref {
    let (rows, pivots) = rref_rows(m.row_vectors(), m.cols);
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, x) in row.into_iter().enumerate() {
            out.set(r, c, x);
        }
    }
    Rref {
        matrix: out,
        pivots,
    }
}

pub fn rank(m: &Matrix) -> usize {
    rref_rows(m.row_vectors(), m.cols).1.len()
}

/// A sparse row: `(column, value)` pairs, strictly increasing columns, no zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `a - f·b` for sparse rows.
fn sparse_sub(a: &SparseRow, f: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -(f * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - f * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a system given as sparse rows, by forward elimination against
/// monic pivot rows. Suited to large, very sparse systems where full
/// Gauss-Jordan reduction fills in.
pub fn sparse_rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut pivots: std::collections::HashMap<usize, SparseRow> = std::collections::HashMap::new();
    for mut row in rows {
        row.retain(|(_, v)| !v.is_zero());
        while let Some((lead, f)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = sparse_sub(&row, &f, p),
                None => {
                    let inv = f.recip();
                    for e in row.iter_mut() {
                        e.1 *= &inv;
                    }
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Basis of the right null space: one vector per free column, in increasing
/// column order, with that free variable set to 1 and the others to 0.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let (rows, pivots) = rref_rows(m.row_vectors(), m.cols);
    kernel_from_rref(&rows, &pivots, m.cols)
}

pub(crate) fn kernel_from_rref(rows: &[Vector], pivots: &[usize], cols: usize) -> Vec<Vector> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = zero_vector(cols);
            v[free] = Scalar::one();
            for (row, &p) in rows.iter().zip(pivots) {
                if !row[free].is_zero() {
                    v[p] = -row[free].clone();
                }
            }
            v
        })
        .collect()
}

/// One solution of `m x = rhs` (free variables zero), or `None` when the
/// system is inconsistent.
pub fn solve(m: &Matrix, rhs: &[Scalar]) -> Result<Option<Vector>, LinalgError> {
    if rhs.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let cols = m.cols;
    let aug: Vec<Vector> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let (rows, pivots) = rref_rows(aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = zero_vector(cols);
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    Ok(Some(x))
}

/// All solutions of `m x = rhs` as a particular solution (free variables
/// zero) plus a kernel basis, or `None` when inconsistent.
pub fn solve_affine(
    m: &Matrix,
    rhs: &[Scalar],
) -> Result<Option<(Vector, Vec<Vector>)>, LinalgError> {
    if rhs.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let cols = m.cols;
    let aug: Vec<Vector> = (0..m.rows)
        .map(|r| {
            let mut row = m.row(r).to_vec();
            row.push(rhs[r].clone());
            row
        })
        .collect();
    let (rows, pivots) = rref_rows(aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return Ok(None);
    }
    let mut x = zero_vector(cols);
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[cols].clone();
    }
    let trimmed: Vec<Vector> = rows
        .into_iter()
        .map(|mut r| {
            r.truncate(cols);
            r
        })
        .collect();
    Ok(Some((x, kernel_from_rref(&trimmed, &pivots, cols))))
}

/// A linear subspace of `Q^ambient`, stored by its canonical (rref) basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span<I>(ambient: usize, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = Vector>,
    {
        let rows: Vec<Vector> = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|v| v.len() == ambient));
        let (basis, pivots) = rref_rows(rows, ambient);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    /// The null space of `m`, as a subspace of `Q^cols`.
    pub fn kernel_of(m: &Matrix) -> Subspace {
        Subspace::span(m.cols(), kernel_basis(m))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical residue of `v` modulo this subspace: zero exactly when `v`
    /// lies in it, and zero at every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -r[p].clone();
                axpy(&mut r, &c, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// Basis vectors of `sup` whose pivots are not pivots of `self`; these
    /// span a complement of `self` inside `sup`. Requires `self ⊆ sup`.
    pub fn complement_in(&self, sup: &Subspace) -> Vec<Vector> {
        debug_assert!(self.is_subspace_of(sup));
        sup.basis
            .iter()
            .zip(&sup.pivots)
            .filter(|(_, p)| !self.pivots.contains(p))
            .map(|(b, _)| b.clone())
            .collect()
    }

    /// Coordinates of `v` in the rref basis, or `None` if `v` is not inside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|v| {
                let parts: Vec<String> = v.iter().map(format_scalar).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        write!(f, "Subspace<{}>{{{}}}", self.ambient, rows.join(", "))
    }
}
