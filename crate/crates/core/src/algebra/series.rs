use serde::{Deserialize, Serialize};

use super::{Algebra, AlgebraError};
use crate::linalg::{Matrix, Subspace, Vector};

/// `L^1 = L, L^{k+1} = [L^k, L]`, listed down to the first term that repeats
/// (so a nilpotent algebra ends with the zero subspace).
pub fn lower_central_series(a: &Algebra) -> Vec<Subspace> {
    let n = a.dim();
    let mut series = vec![Subspace::full(n)];
    loop {
        let current = series.last().expect("nonempty");
        let next = Subspace::span(
            n,
            current
                .basis()
                .iter()
                .flat_map(|u| (0..n).map(move |j| a.bracket_with_basis_right(u, j))),
        );
        if next == *current {
            return series;
        }
        series.push(next);
    }
}

/// Minimal `s` with `L^s = 0`, or `None` when the series stabilizes at a
/// nonzero subspace.
pub fn nilindex(a: &Algebra) -> Option<usize> {
    let series = lower_central_series(a);
    series.last().filter(|s| s.is_zero()).map(|_| series.len())
}

fn mult_constraints(a: &Algebra, left: bool, right: bool) -> Matrix {
    let n = a.dim();
    let mut rows: Vec<Vector> = Vec::new();
    for j in 0..n {
        for k in 0..n {
            if left {
                // [z, e_j]_k = Σ_i z_i c[i][j][k]
                rows.push(
                    (0..n)
                        .map(|i| a.structure_constant(i, j, k).clone())
                        .collect(),
                );
            }
            if right {
                // [e_j, z]_k = Σ_i z_i c[j][i][k]
                rows.push(
                    (0..n)
                        .map(|i| a.structure_constant(j, i, k).clone())
                        .collect(),
                );
            }
        }
    }
    Matrix::from_rows(n, &rows).expect("rows of length n")
}

/// `{x : [x, L] = 0}`
pub fn left_annihilator(a: &Algebra) -> Subspace {
    Subspace::kernel_of(&mult_constraints(a, true, false))
}

/// `{x : [L, x] = 0}`
pub fn right_annihilator(a: &Algebra) -> Subspace {
    Subspace::kernel_of(&mult_constraints(a, false, true))
}

/// `Z(L) = {z : [z, L] = [L, z] = 0}`.
pub fn center(a: &Algebra) -> Subspace {
    Subspace::kernel_of(&mult_constraints(a, true, true))
}

/// Span of all squares `[x, x]`; by polarization this is spanned by
/// `[e_i, e_i]` and `[e_i, e_j] + [e_j, e_i]`.
pub fn squares_span(a: &Algebra) -> Subspace {
    let n = a.dim();
    let mut gens = Vec::new();
    for i in 0..n {
        gens.push(a.product(i, i).to_vec());
        for j in i + 1..n {
            let v: Vector = a
                .product(i, j)
                .iter()
                .zip(a.product(j, i))
                .map(|(x, y)| x + y)
                .collect();
            gens.push(v);
        }
    }
    Subspace::span(n, gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    NullFiliform,
    Filiform,
    QuasiFiliform,
    Other,
}

impl Shape {
    pub fn label(self) -> &'static str {
        match self {
            Shape::NullFiliform => "null-filiform",
            Shape::Filiform => "filiform",
            Shape::QuasiFiliform => "quasi-filiform",
            Shape::Other => "other",
        }
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// First matching label among null-filiform, filiform, quasi-filiform.
pub fn classify_shape(a: &Algebra) -> Result<Shape, AlgebraError> {
    let series = lower_central_series(a);
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(AlgebraError::NotNilpotent);
    }
    let n = a.dim();
    // dims[i] = dim L^i for i >= 1; terms past the end are zero.
    let dim_at = |i: usize| series.get(i - 1).map_or(0, Subspace::dim);
    if (1..=n + 1).all(|i| dim_at(i) == n + 1 - i) {
        return Ok(Shape::NullFiliform);
    }
    if n >= 2 && (2..=n).all(|i| dim_at(i) == n - i) {
        return Ok(Shape::Filiform);
    }
    if n >= 3 && dim_at(n - 2) != 0 && dim_at(n - 1) == 0 {
        return Ok(Shape::QuasiFiliform);
    }
    Ok(Shape::Other)
}
