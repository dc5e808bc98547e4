use super::{lower_central_series, Algebra, AlgebraBuilder, AlgebraError};
use crate::linalg::{Matrix, Subspace, Vector};

/// `GrL = L_1 ⊕ L_2 ⊕ …` with `L_i = L^i / L^{i+1}`, realized on an adapted
/// basis of `L`.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    /// `dim L_i` for `i = 1, 2, …`
    pub layer_dims: Vec<usize>,
    /// Layer (1-based) of each adapted basis vector.
    pub degrees: Vec<usize>,
    /// Columns are the adapted basis in the original coordinates.
    pub basis: Matrix,
    /// The original algebra written in the adapted basis.
    pub filtered: Algebra,
    /// The associated graded algebra on the adapted basis.
    pub algebra: Algebra,
}

impl GradedAlgebra {
    /// Whether the adapted basis already grades `L`, i.e. the filtered and
    /// graded tables coincide (so `L ≅ GrL`).
    pub fn is_graded_in_adapted_basis(&self) -> bool {
        self.filtered.sc == self.algebra.sc
    }

    /// Basis triples `(i, j, k)` with a nonzero `e_k` component in
    /// `[e_i, e_j]` although `deg k ≠ deg i + deg j`.
    pub fn layer_violations(&self) -> Vec<(usize, usize, usize)> {
        layer_violations(&self.algebra, &self.degrees)
    }
}

pub(crate) fn layer_violations(a: &Algebra, degrees: &[usize]) -> Vec<(usize, usize, usize)> {
    a.nonzero_constants()
        .into_iter()
        .filter(|(i, j, k, _)| degrees[*k] != degrees[*i] + degrees[*j])
        .map(|(i, j, k, _)| (i, j, k))
        .collect()
}

/// Builds the associated graded algebra. Each layer is represented by the
/// unit vectors on the non-pivot coordinates of `L^{i+1}` inside `L^i`.
pub fn natural_gradation(a: &Algebra) -> Result<GradedAlgebra, AlgebraError> {
    let n = a.dim();
    let series = lower_central_series(a);
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(AlgebraError::NotNilpotent);
    }
    let mut columns: Vec<Vector> = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    let mut layer_dims = Vec::new();
    for (i, pair) in series.windows(2).enumerate() {
        let section = pair[1].complement_in(&pair[0]);
        layer_dims.push(section.len());
        degrees.extend(std::iter::repeat_n(i + 1, section.len()));
        columns.extend(section);
    }
    let basis = Matrix::from_columns(n, &columns).expect("columns of length n");
    let filtered = a.change_basis(&basis)?;

    let mut b = AlgebraBuilder::new(n);
    for (i, j, k, c) in filtered.nonzero_constants() {
        if degrees[k] == degrees[i] + degrees[j] {
            b.set(i, j, k, c);
        }
    }
    let mut graded = b.build_raw();
    graded.validity = filtered.validity;
    if let Some(name) = a.name() {
        graded.name = Some(format!("Gr({name})"));
    }
    Ok(GradedAlgebra {
        layer_dims,
        degrees,
        basis,
        filtered,
        algebra: graded,
    })
}
