use std::fmt;

use thiserror::Error;

use crate::algebra::Algebra;
use crate::linalg::{unit_vector, Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("matrix is {rows}×{cols}, algebras have dimensions {a} and {b}")]
    DimensionMismatch {
        rows: usize,
        cols: usize,
        a: usize,
        b: usize,
    },
}

/// Outcome of [`verify_isomorphism`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoCheck {
    Holds,
    NotInvertible,
    /// `p[e_i, e_j] ≠ [p e_i, p e_j]` for this basis pair (0-based).
    FailsAt {
        i: usize,
        j: usize,
        lhs: Vector,
        rhs: Vector,
    },
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IsoCheck::Holds)
    }
}

impl fmt::Display for IsoCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoCheck::Holds => f.write_str("isomorphism verified"),
            IsoCheck::NotInvertible => f.write_str("matrix is not invertible"),
            IsoCheck::FailsAt { i, j, .. } => {
                write!(f, "homomorphism fails at (e{}, e{})", i + 1, j + 1)
            }
        }
    }
}

/// Whether `p` (column `j` = image of `e_j`) is an isomorphism `a → b`:
/// invertible with `p[x, y]_a = [px, py]_b` on all basis pairs.
pub fn verify_isomorphism(a: &Algebra, b: &Algebra, p: &Matrix) -> Result<IsoCheck, IsoError> {
    let n = a.dim();
    if b.dim() != n || p.rows() != n || p.cols() != n {
        return Err(IsoError::DimensionMismatch {
            rows: p.rows(),
            cols: p.cols(),
            a: n,
            b: b.dim(),
        });
    }
    if !p.is_invertible() {
        return Ok(IsoCheck::NotInvertible);
    }
    Ok(first_failure(a, b, p).unwrap_or(IsoCheck::Holds))
}

pub(crate) fn first_failure(a: &Algebra, b: &Algebra, p: &Matrix) -> Option<IsoCheck> {
    let n = a.dim();
    let images: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = p.mul_vec(a.product(i, j)).expect("square");
            let rhs = b
                .bracket(&images[i], &images[j])
                .expect("dimensions checked");
            if lhs != rhs {
                return Some(IsoCheck::FailsAt { i, j, lhs, rhs });
            }
        }
    }
    None
}

/// The permutation matrix sending `e_j` to `e_{perm[j]}`.
pub fn permutation_matrix(perm: &[usize]) -> Matrix {
    let n = perm.len();
    let columns: Vec<Vector> = perm.iter().map(|&t| unit_vector(n, t)).collect();
    Matrix::from_columns(n, &columns).expect("columns of length n")
}
