//! Second cohomology of a Leibniz algebra with coefficients in a trivial
//! module.
//!
//! A scalar bilinear form `θ` is stored as the `n × n` matrix
//! `θ(e_p, e_q)`; flattened row-major it is a vector of length `n²` with
//! `θ(e_p, e_q)` at index `p·n + q`. Forms with values in
//! `V = ⟨x_1, …, x_k⟩` are `k`-tuples of scalar forms.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{
    format_scalar, is_zero_vector, rref_rows, scalar, solve, unit_vector, zero_vector, Matrix,
    Scalar, Subspace, Vector,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("form has dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("component {component} is not a cocycle: identity fails at (e{}, e{}, e{})", .i + 1, .j + 1, .k + 1)]
    NotACocycle {
        component: usize,
        i: usize,
        j: usize,
        k: usize,
    },
}

/// A scalar bilinear form on an `n`-dimensional space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearForm {
    values: Matrix,
}

impl BilinearForm {
    pub fn zero(n: usize) -> Self {
        BilinearForm {
            values: Matrix::zeros(n, n),
        }
    }

    /// The form with `θ(e_p, e_q) = 1` and all other values zero.
    pub fn elementary(n: usize, p: usize, q: usize) -> Self {
        let mut f = Self::zero(n);
        f.values.set(p, q, scalar(1));
        f
    }

    pub fn from_matrix(values: Matrix) -> Self {
        assert!(values.is_square(), "bilinear form needs a square matrix");
        BilinearForm { values }
    }

    /// Inverse of [`BilinearForm::as_vector`].
    pub fn from_vector(n: usize, v: Vector) -> Self {
        BilinearForm {
            values: Matrix::new(n, n, v).expect("vector of length n²"),
        }
    }

    pub fn dim(&self) -> usize {
        self.values.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.values
    }

    pub fn get(&self, p: usize, q: usize) -> &Scalar {
        &self.values[(p, q)]
    }

    pub fn set(&mut self, p: usize, q: usize, c: Scalar) {
        self.values.set(p, q, c);
    }

    /// Row-major values, `θ(e_p, e_q)` at `p·n + q`.
    pub fn as_vector(&self) -> &[Scalar] {
        self.values.entries()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_zero()
    }

    /// `θ(x, y) = xᵀ Θ y`.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let n = self.dim();
        let mut s = Scalar::zero();
        for p in 0..n {
            if x[p].is_zero() {
                continue;
            }
            for q in 0..n {
                if !y[q].is_zero() {
                    s += &x[p] * &y[q] * self.get(p, q);
                }
            }
        }
        s
    }

    /// Nonzero values as `(p, q, c)`.
    pub fn support(&self) -> Vec<(usize, usize, Scalar)> {
        let n = self.dim();
        let mut out = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if !self.get(p, q).is_zero() {
                    out.push((p, q, self.get(p, q).clone()));
                }
            }
        }
        out
    }

    pub fn linear_combination<'a, I>(n: usize, terms: I) -> BilinearForm
    where
        I: IntoIterator<Item = (&'a Scalar, &'a BilinearForm)>,
    {
        let mut v = zero_vector(n * n);
        for (c, f) in terms {
            crate::linalg::axpy(&mut v, c, f.as_vector());
        }
        BilinearForm::from_vector(n, v)
    }
}

impl fmt::Debug for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .support()
            .into_iter()
            .map(|(p, q, c)| format!("θ(e{}, e{}) = {}", p + 1, q + 1, format_scalar(&c)))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(", "))
        }
    }
}

/// A bilinear map `L × L → V`, one scalar form per coordinate of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    dim: usize,
    components: Vec<BilinearForm>,
}

impl Cocycle {
    /// Checks every component against the cocycle identity of `a`.
    pub fn new(a: &Algebra, components: Vec<BilinearForm>) -> Result<Self, CohomologyError> {
        for (c, form) in components.iter().enumerate() {
            if form.dim() != a.dim() {
                return Err(CohomologyError::DimensionMismatch {
                    expected: a.dim(),
                    found: form.dim(),
                });
            }
            if let Some((i, j, k)) = cocycle_defects(a, form).first().copied() {
                return Err(CohomologyError::NotACocycle {
                    component: c,
                    i,
                    j,
                    k,
                });
            }
        }
        Ok(Cocycle {
            dim: a.dim(),
            components,
        })
    }

    pub fn new_unchecked(dim: usize, components: Vec<BilinearForm>) -> Self {
        assert!(components.iter().all(|f| f.dim() == dim));
        Cocycle { dim, components }
    }

    pub fn zero(dim: usize, k: usize) -> Self {
        Cocycle {
            dim,
            components: vec![BilinearForm::zero(dim); k],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `dim V`
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[BilinearForm] {
        &self.components
    }

    pub fn into_components(self) -> Vec<BilinearForm> {
        self.components
    }

    /// `θ(e_p, e_q)` as a vector in `V`.
    pub fn value(&self, p: usize, q: usize) -> Vector {
        self.components
            .iter()
            .map(|f| f.get(p, q).clone())
            .collect()
    }
}

/// A subspace of scalar bilinear forms, given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainSpace {
    dim: usize,
    basis: Vec<BilinearForm>,
}

impl CochainSpace {
    fn from_subspace(n: usize, s: &Subspace) -> Self {
        CochainSpace {
            dim: n,
            basis: s
                .basis()
                .iter()
                .map(|v| BilinearForm::from_vector(n, v.clone()))
                .collect(),
        }
    }

    /// Dimension of the underlying algebra.
    pub fn algebra_dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the space of forms.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[BilinearForm] {
        &self.basis
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(
            self.dim * self.dim,
            self.basis.iter().map(|f| f.as_vector().to_vec()),
        )
    }

    /// `V`-valued version: for each basis form `h` and each coordinate `j`
    /// of `V`, the cocycle with `h` in component `j` and zero elsewhere.
    pub fn tensor(&self, k: usize) -> Vec<Cocycle> {
        let mut out = Vec::with_capacity(self.len() * k);
        for h in &self.basis {
            for j in 0..k {
                let mut components = vec![BilinearForm::zero(self.dim); k];
                components[j] = h.clone();
                out.push(Cocycle::new_unchecked(self.dim, components));
            }
        }
        out
    }
}

/// Coefficients of the cocycle identity
/// `θ(e_i, [e_j, e_k]) − θ([e_i, e_j], e_k) + θ([e_i, e_k], e_j) = 0`
/// as a row over the unknowns `θ(e_p, e_q)`.
fn cocycle_row(a: &Algebra, i: usize, j: usize, k: usize) -> Vector {
    let n = a.dim();
    let mut row = zero_vector(n * n);
    for l in 0..n {
        let jk = a.structure_constant(j, k, l);
        if !jk.is_zero() {
            row[i * n + l] += jk;
        }
        let ij = a.structure_constant(i, j, l);
        if !ij.is_zero() {
            row[l * n + k] -= ij;
        }
        let ik = a.structure_constant(i, k, l);
        if !ik.is_zero() {
            row[l * n + j] += ik;
        }
    }
    row
}

/// The `n³ × n²` system whose kernel is `ZL²(L)`; one row per ordered basis
/// triple `(i, j, k)`, row index `(i·n + j)·n + k`.
pub fn cocycle_condition_matrix(a: &Algebra) -> Matrix {
    let n = a.dim();
    let mut rows = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                rows.push(cocycle_row(a, i, j, k));
            }
        }
    }
    Matrix::from_rows(n * n, &rows).expect("rows of length n²")
}

/// Basis triples on which `θ` violates the cocycle identity.
pub fn cocycle_defects(a: &Algebra, theta: &BilinearForm) -> Vec<(usize, usize, usize)> {
    let n = a.dim();
    let v = theta.as_vector();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = cocycle_row(a, i, j, k);
                if !crate::linalg::dot(&row, v).is_zero() {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

pub fn is_cocycle(a: &Algebra, theta: &BilinearForm) -> bool {
    theta.dim() == a.dim() && cocycle_defects(a, theta).is_empty()
}

fn cocycle_subspace(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let row = cocycle_row(a, i, j, k);
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let (reduced, pivots) = rref_rows(rows, n * n);
    let kernel = crate::linalg::kernel_from_rref(&reduced, &pivots, n * n);
    Subspace::span(n * n, kernel)
}

fn coboundary_subspace(a: &Algebra) -> Subspace {
    let n = a.dim();
    // φ = e_m^*: θ(e_p, e_q) = c[p][q][m]
    let forms = (0..n).map(|m| {
        let mut v = zero_vector(n * n);
        for p in 0..n {
            for q in 0..n {
                v[p * n + q] = a.structure_constant(p, q, m).clone();
            }
        }
        v
    });
    Subspace::span(n * n, forms)
}

/// `ZL²(L)` with scalar coefficients, in canonical row-reduced form.
pub fn cocycle_space(a: &Algebra) -> CochainSpace {
    CochainSpace::from_subspace(a.dim(), &cocycle_subspace(a))
}

/// `BL²(L)`: the forms `(x, y) ↦ φ([x, y])`.
pub fn coboundary_space(a: &Algebra) -> CochainSpace {
    CochainSpace::from_subspace(a.dim(), &coboundary_subspace(a))
}

/// `(dim ZL², dim BL², dim HL²)` with scalar coefficients.
pub fn cohomology_dims(a: &Algebra) -> (usize, usize, usize) {
    let z = cocycle_subspace(a).dim();
    let b = coboundary_subspace(a).dim();
    (z, b, z - b)
}

/// Representatives of a basis of `HL²(L)`. See [`Cohomology`].
pub fn cohomology_basis(a: &Algebra) -> CochainSpace {
    Cohomology::compute(a).representatives
}

/// `ZL²`, `BL²` and representatives of `HL²`, computed once.
///
/// The representatives are chosen from elementary forms `θ(e_p, e_q) = 1`
/// where possible: elementary cocycles are scanned by second argument
/// ascending and first argument descending, and each one independent of
/// `BL²` and the ones already taken is kept. Any remaining gap is filled from
/// the row-reduced basis of `ZL²`. The chosen forms are listed by
/// `(q, p)`, elementary ones first.
#[derive(Debug, Clone)]
pub struct Cohomology {
    algebra: Algebra,
    dim: usize,
    cocycles: Subspace,
    coboundaries: Subspace,
    representatives: CochainSpace,
}

impl Cohomology {
    pub fn compute(a: &Algebra) -> Self {
        let n = a.dim();
        let z = cocycle_subspace(a);
        let b = coboundary_subspace(a);
        let target = z.dim() - b.dim();

        let mut taken = b.clone();
        let mut elementary: Vec<(usize, usize)> = Vec::new();
        'scan: for q in 0..n {
            for p in (0..n).rev() {
                if elementary.len() == target {
                    break 'scan;
                }
                let e = unit_vector(n * n, p * n + q);
                if z.contains(&e) && !taken.contains(&e) {
                    taken = taken.sum(&Subspace::span(n * n, [e]));
                    elementary.push((p, q));
                }
            }
        }
        elementary.sort_by_key(|&(p, q)| (q, p));
        let mut forms: Vec<BilinearForm> = elementary
            .iter()
            .map(|&(p, q)| BilinearForm::elementary(n, p, q))
            .collect();
        for v in taken.complement_in(&z) {
            forms.push(BilinearForm::from_vector(n, v));
        }
        debug_assert_eq!(forms.len(), target);
        Cohomology {
            algebra: a.clone(),
            dim: n,
            cocycles: z,
            coboundaries: b,
            representatives: CochainSpace {
                dim: n,
                basis: forms,
            },
        }
    }

    /// Uses the row-reduced complement of `BL²` in `ZL²` as representatives.
    pub fn compute_rref(a: &Algebra) -> Self {
        let n = a.dim();
        let z = cocycle_subspace(a);
        let b = coboundary_subspace(a);
        let forms = b
            .complement_in(&z)
            .into_iter()
            .map(|v| BilinearForm::from_vector(n, v))
            .collect();
        Cohomology {
            algebra: a.clone(),
            dim: n,
            cocycles: z,
            coboundaries: b,
            representatives: CochainSpace {
                dim: n,
                basis: forms,
            },
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn cocycles(&self) -> CochainSpace {
        CochainSpace::from_subspace(self.dim, &self.cocycles)
    }

    pub fn coboundaries(&self) -> CochainSpace {
        CochainSpace::from_subspace(self.dim, &self.coboundaries)
    }

    pub fn representatives(&self) -> &CochainSpace {
        &self.representatives
    }

    pub fn dim_z(&self) -> usize {
        self.cocycles.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.coboundaries.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_cocycle(&self, theta: &BilinearForm) -> bool {
        theta.dim() == self.dim && self.cocycles.contains(theta.as_vector())
    }

    pub fn is_coboundary(&self, theta: &BilinearForm) -> bool {
        theta.dim() == self.dim && self.coboundaries.contains(theta.as_vector())
    }

    /// Coordinates `λ` with `θ = Σ λ_m h_m + (coboundary)`.
    pub fn class_of(&self, theta: &BilinearForm) -> Result<Vector, CohomologyError> {
        if theta.dim() != self.dim {
            return Err(CohomologyError::DimensionMismatch {
                expected: self.dim,
                found: theta.dim(),
            });
        }
        if !self.cocycles.contains(theta.as_vector()) {
            return Err(self.first_defect(theta, 0));
        }
        let h = self.representatives.len();
        let mut columns: Vec<Vector> = self
            .representatives
            .basis()
            .iter()
            .map(|f| f.as_vector().to_vec())
            .collect();
        columns.extend(self.coboundaries.basis().iter().cloned());
        let m = Matrix::from_columns(self.dim * self.dim, &columns).expect("columns of length n²");
        let x = solve(&m, theta.as_vector())
            .expect("consistent shapes")
            .expect("ZL² = H ⊕ BL²");
        Ok(x[..h].to_vec())
    }

    /// Class coordinates of every component, as a `k × dim HL²` matrix.
    pub fn class_matrix(&self, theta: &Cocycle) -> Result<Matrix, CohomologyError> {
        let mut rows = Vec::with_capacity(theta.k());
        for (c, f) in theta.components().iter().enumerate() {
            rows.push(self.class_of(f).map_err(|e| match e {
                CohomologyError::NotACocycle { i, j, k, .. } => CohomologyError::NotACocycle {
                    component: c,
                    i,
                    j,
                    k,
                },
                other => other,
            })?);
        }
        Ok(Matrix::from_rows(self.dim_h(), &rows).expect("rows of length dim HL²"))
    }

    fn first_defect(&self, theta: &BilinearForm, component: usize) -> CohomologyError {
        let (i, j, k) = cocycle_defects(&self.algebra, theta)[0];
        CohomologyError::NotACocycle { component, i, j, k }
    }
}

/// `φ` with `θ(x, y) = φ([x, y])` (free coordinates zero), if `θ` is a
/// coboundary.
pub fn coboundary_primitive(a: &Algebra, theta: &BilinearForm) -> Option<Vector> {
    let n = a.dim();
    let mut m = Matrix::zeros(n * n, n);
    for p in 0..n {
        for q in 0..n {
            for (l, c) in a.product(p, q).iter().enumerate() {
                if !c.is_zero() {
                    m.set(p * n + q, l, c.clone());
                }
            }
        }
    }
    solve(&m, theta.as_vector()).expect("consistent shapes")
}

/// Coordinates of `θ` in the representatives of [`Cohomology::compute`].
pub fn cohomology_class(a: &Algebra, theta: &BilinearForm) -> Result<Vector, CohomologyError> {
    Cohomology::compute(a).class_of(theta)
}
