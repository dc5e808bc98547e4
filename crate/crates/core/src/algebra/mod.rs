//! Finite-dimensional algebras given by structure constants, and their
//! structural invariants.
//!
//! Basis indices are 0-based in the API (`e_1` of a multiplication table is
//! index `0`); text output and file formats use 1-based indices.

mod charseq;
mod grading;
mod series;

pub use charseq::{
    characteristic_sequence, jordan_type_nilpotent, left_mult_operator, right_mult_operator,
    Certainty, CharSeq, CharacteristicSequence,
};
pub use grading::{natural_gradation, GradedAlgebra};
pub use series::{
    center, classify_shape, left_annihilator, lower_central_series, nilindex, right_annihilator,
    squares_span, Shape,
};

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{axpy, format_scalar, is_zero_vector, zero_vector, Matrix, Scalar, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("vector length {found} does not match algebra dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Leibniz identity fails on {count} basis triple(s), first at {first}")]
    NotLeibniz {
        count: usize,
        first: LeibnizViolation,
    },
    #[error("algebra is not nilpotent")]
    NotNilpotent,
    #[error("change-of-basis matrix is not invertible")]
    Singular,
}

/// Whether the Leibniz identity was verified when the algebra was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validity {
    Checked,
    Raw,
}

/// `[e_i, [e_j, e_k]] - [[e_i, e_j], e_k] + [[e_i, e_k], e_j]` for a basis
/// triple where it is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizViolation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub defect: Vector,
}

impl fmt::Display for LeibnizViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.defect.iter().map(format_scalar).collect();
        write!(
            f,
            "(e{}, e{}, e{}) defect ({})",
            self.i + 1,
            self.j + 1,
            self.k + 1,
            d.join(", ")
        )
    }
}

/// An algebra on the basis `e_0, …, e_{n-1}` with
/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Algebra {
    dim: usize,
    sc: Vec<Scalar>,
    name: Option<String>,
    validity: Validity,
}

/// Accumulates structure constants; `build` verifies the Leibniz identity.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    dim: usize,
    sc: Vec<Scalar>,
    name: Option<String>,
}

impl AlgebraBuilder {
    pub fn new(dim: usize) -> Self {
        AlgebraBuilder {
            dim,
            sc: vec![Scalar::zero(); dim * dim * dim],
            name: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Adds `c · e_k` to `[e_i, e_j]`.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        let n = self.dim;
        assert!(i < n && j < n && k < n, "basis index out of range");
        self.sc[(i * n + j) * n + k] += c;
        self
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) -> &mut Self {
        let n = self.dim;
        assert!(i < n && j < n && k < n, "basis index out of range");
        self.sc[(i * n + j) * n + k] = c;
        self
    }

    /// Sets `[e_i, e_j] = v`.
    pub fn set_product(&mut self, i: usize, j: usize, v: &[Scalar]) -> &mut Self {
        let n = self.dim;
        assert_eq!(v.len(), n);
        self.sc[(i * n + j) * n..(i * n + j + 1) * n].clone_from_slice(v);
        self
    }

    pub fn build(self) -> Result<Algebra, AlgebraError> {
        let mut a = self.build_raw();
        let violations = a.check_leibniz();
        if let Some(first) = violations.first() {
            return Err(AlgebraError::NotLeibniz {
                count: violations.len(),
                first: first.clone(),
            });
        }
        a.validity = Validity::Checked;
        Ok(a)
    }

    /// Skips the Leibniz check; for exhibiting non-examples.
    pub fn build_raw(self) -> Algebra {
        Algebra {
            dim: self.dim,
            sc: self.sc,
            name: self.name,
            validity: Validity::Raw,
        }
    }
}

impl Algebra {
    pub fn builder(dim: usize) -> AlgebraBuilder {
        AlgebraBuilder::new(dim)
    }

    /// The abelian algebra of dimension `n` (all brackets zero).
    pub fn abelian(n: usize) -> Algebra {
        Algebra {
            dim: n,
            sc: vec![Scalar::zero(); n * n * n],
            name: Some(format!("C^{n}")),
            validity: Validity::Checked,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Algebra {
        self.name = Some(name.into());
        self
    }

    pub fn validity(&self) -> Validity {
        self.validity
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim;
        &self.sc[(i * n + j) * n + k]
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.sc[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Back to a builder holding the same constants.
    pub fn to_builder(&self) -> AlgebraBuilder {
        AlgebraBuilder {
            dim: self.dim,
            sc: self.sc.clone(),
            name: self.name.clone(),
        }
    }

    /// Nonzero structure constants as `(i, j, k, c)`, in index order.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    fn check_len(&self, v: &[Scalar]) -> Result<(), AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                axpy(&mut out, &(xi * yj), self.product(i, j));
            }
        }
        out
    }

    /// `[x, e_j]`
    pub(crate) fn bracket_with_basis_right(&self, x: &[Scalar], j: usize) -> Vector {
        let mut out = zero_vector(self.dim);
        for (i, xi) in x.iter().enumerate() {
            axpy(&mut out, xi, self.product(i, j));
        }
        out
    }

    /// `[e_i, x]`
    pub(crate) fn bracket_with_basis_left(&self, i: usize, x: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.dim);
        for (j, xj) in x.iter().enumerate() {
            axpy(&mut out, xj, self.product(i, j));
        }
        out
    }

    /// All basis triples on which the Leibniz identity
    /// `[x,[y,z]] = [[x,y],z] - [[x,z],y]` fails. By trilinearity an empty
    /// result means the identity holds on the whole algebra.
    pub fn check_leibniz(&self) -> Vec<LeibnizViolation> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut defect = self.bracket_with_basis_left(i, self.product(j, k));
                    let ij = self.bracket_with_basis_right(self.product(i, j), k);
                    let ik = self.bracket_with_basis_right(self.product(i, k), j);
                    axpy(&mut defect, &-Scalar::one(), &ij);
                    axpy(&mut defect, &Scalar::one(), &ik);
                    if !is_zero_vector(&defect) {
                        out.push(LeibnizViolation { i, j, k, defect });
                    }
                }
            }
        }
        out
    }

    pub fn is_leibniz(&self) -> bool {
        self.check_leibniz().is_empty()
    }

    /// The same algebra written in a new basis: column `j` of `p` holds the
    /// old coordinates of the new basis vector `e'_j`. The linear map with
    /// matrix `p` is then an isomorphism from the result onto `self`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra, AlgebraError> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: p.rows().max(p.cols()),
            });
        }
        let inv = p.inverse().ok_or(AlgebraError::Singular)?;
        let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
        let mut b = AlgebraBuilder::new(n);
        for i in 0..n {
            for j in 0..n {
                let v = self.bracket_unchecked(&cols[i], &cols[j]);
                let w = inv.mul_vec(&v).expect("square");
                b.set_product(i, j, &w);
            }
        }
        let mut out = b.build_raw();
        out.validity = self.validity;
        out.name = self.name.clone();
        Ok(out)
    }

    /// `self ⊕ other` with the basis of `self` first.
    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let (n, m) = (self.dim, other.dim);
        let mut b = AlgebraBuilder::new(n + m);
        for (i, j, k, c) in self.nonzero_constants() {
            b.set(i, j, k, c);
        }
        for (i, j, k, c) in other.nonzero_constants() {
            b.set(n + i, n + j, n + k, c);
        }
        let mut out = b.build_raw();
        out.validity = if self.validity == Validity::Checked && other.validity == Validity::Checked
        {
            Validity::Checked
        } else {
            Validity::Raw
        };
        out.name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a} + {b}")),
            _ => None,
        };
        out
    }

    /// `self ⊕ C^k`.
    pub fn with_abelian(&self, k: usize) -> Algebra {
        if k == 0 {
            return self.clone();
        }
        self.direct_sum(&Algebra::abelian(k))
    }
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Algebra({}, dim {}) {}",
            self.name.as_deref().unwrap_or("unnamed"),
            self.dim,
            self
        )
    }
}

/// Multiplication table in the usual notation, omitting zero products.
impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim;
        let mut first = true;
        write!(f, "{{")?;
        for i in 0..n {
            for j in 0..n {
                let p = self.product(i, j);
                if is_zero_vector(p) {
                    continue;
                }
                if !first {
                    write!(f, "; ")?;
                }
                first = false;
                write!(f, "[e{}, e{}] = {}", i + 1, j + 1, format_vector_terms(p))?;
            }
        }
        write!(f, "}}")
    }
}

/// `2e3 - 1/2e5` style rendering of a coordinate vector.
pub fn format_vector_terms(v: &[Scalar]) -> String {
    let mut terms = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let coeff = if c.is_one() {
            String::new()
        } else if *c == -Scalar::one() {
            "-".to_string()
        } else {
            format_scalar(c)
        };
        terms.push(format!("{coeff}e{}", k + 1));
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ").replace("+ -", "- ")
    }
}
