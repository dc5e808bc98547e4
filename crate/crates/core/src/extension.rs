//! Central extensions `L_θ = L ⊕ V` with `[x + u, y + v] = [x, y] + θ(x, y)`,
//! and splitting off abelian summands that sit inside `V`.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{center, Algebra, AlgebraBuilder, AlgebraError};
use crate::cohomology::{
    coboundary_primitive, cocycle_defects, BilinearForm, Cocycle, Cohomology, CohomologyError,
};
use crate::linalg::{rref, scalar, unit_vector, zero_vector, Matrix, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("cocycle has dimension {found}, base algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Cocycle(#[from] CohomologyError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("subspace is not central")]
    NotCentral,
}

/// A base algebra together with a `V`-valued cocycle on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionSpec {
    base: Algebra,
    cocycle: Cocycle,
}

impl ExtensionSpec {
    pub fn new(base: Algebra, cocycle: Cocycle) -> Result<Self, ExtensionError> {
        if cocycle.dim() != base.dim() {
            return Err(ExtensionError::DimensionMismatch {
                expected: base.dim(),
                found: cocycle.dim(),
            });
        }
        for (c, form) in cocycle.components().iter().enumerate() {
            if let Some((i, j, k)) = cocycle_defects(&base, form).first().copied() {
                return Err(CohomologyError::NotACocycle {
                    component: c,
                    i,
                    j,
                    k,
                }
                .into());
            }
        }
        Ok(ExtensionSpec { base, cocycle })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn cocycle(&self) -> &Cocycle {
        &self.cocycle
    }

    pub fn k(&self) -> usize {
        self.cocycle.k()
    }
}

/// `L_θ` on the basis `e_1, …, e_n, x_1, …, x_k`.
pub fn central_extension(spec: &ExtensionSpec) -> Result<Algebra, ExtensionError> {
    Ok(extension_table(spec).build()?)
}

fn extension_table(spec: &ExtensionSpec) -> AlgebraBuilder {
    let n = spec.base.dim();
    let k = spec.k();
    let mut b = Algebra::builder(n + k);
    for (i, j, l, c) in spec.base.nonzero_constants() {
        b.set(i, j, l, c);
    }
    for (m, form) in spec.cocycle.components().iter().enumerate() {
        for (p, q, c) in form.support() {
            b.set(p, q, n + m, c);
        }
    }
    if let Some(name) = spec.base.name() {
        b = b.name(format!("{name}_θ"));
    }
    b
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CentralityReport {
    /// `V ⊆ Z(L_θ)`
    pub v_central: bool,
    /// `V = Z(L_θ)`
    pub v_equals_center: bool,
}

pub fn centrality_report(spec: &ExtensionSpec) -> Result<CentralityReport, ExtensionError> {
    let ext = central_extension(spec)?;
    let n = spec.base.dim();
    let total = ext.dim();
    let v = Subspace::span(total, (n..total).map(|i| unit_vector(total, i)));
    let z = center(&ext);
    Ok(CentralityReport {
        v_central: v.is_subspace_of(&z),
        v_equals_center: v == z,
    })
}

/// Outcome of [`reduce_extension`].
///
/// With `y_c = Σ_m adapted_v_basis[m][c] x_m`, the cocycle in the basis `y`
/// has components `θ'_c`; for `c ≥ class_rank` these are coboundaries
/// `φ_c ∘ [·,·]` and are absorbed by the section `e'_i = e_i + Σ φ_c(e_i) y_c`.
/// Then `y_c` for `c ≥ class_rank` span an abelian direct summand.
#[derive(Debug, Clone)]
pub struct SplitReport {
    /// Dimension of the span of the classes `[θ^(1)], …, [θ^(k)]`.
    pub class_rank: usize,
    /// `k − class_rank`
    pub abelian_summand_dim: usize,
    /// `k × k`, column `c` is `y_c` in the coordinates `x_1, …, x_k`.
    pub adapted_v_basis: Matrix,
    /// The first `class_rank` components `θ'_c`, whose classes are
    /// independent.
    pub reduced_cocycle: Cocycle,
    /// `φ_c` for `c = class_rank, …, k − 1`.
    pub section_shift: Vec<Vector>,
    /// `L_{θ_red} ⊕ C^{k − class_rank}`.
    pub reduced_algebra: Algebra,
    /// Isomorphism from `reduced_algebra` onto `L_θ`; column `j` holds the
    /// image of the `j`-th basis vector in the coordinates of `L_θ`.
    pub witness: Matrix,
}

impl SplitReport {
    pub fn is_split(&self) -> bool {
        self.abelian_summand_dim >= 1
    }
}

pub fn reduce_extension(spec: &ExtensionSpec) -> Result<SplitReport, ExtensionError> {
    let coh = Cohomology::compute(&spec.base);
    reduce_with(spec, &coh)
}

/// [`reduce_extension`] with a precomputed cohomology of the base.
pub fn reduce_with(spec: &ExtensionSpec, coh: &Cohomology) -> Result<SplitReport, ExtensionError> {
    let n = spec.base.dim();
    let k = spec.k();
    let h = coh.dim_h();
    let lambda = coh.class_matrix(&spec.cocycle)?;

    // rref [Λ | I] = [TΛ | T]; the rows of TΛ past its rank vanish.
    let mut aug = Matrix::zeros(k, h + k);
    for r in 0..k {
        for c in 0..h {
            aug.set(r, c, lambda[(r, c)].clone());
        }
        aug.set(r, h + r, scalar(1));
    }
    let reduced = rref(&aug);
    let d = reduced.pivots.iter().filter(|&&p| p < h).count();
    let mut t = Matrix::zeros(k, k);
    for r in 0..k {
        for c in 0..k {
            t.set(r, c, reduced.matrix[(r, h + c)].clone());
        }
    }
    let t_inv = t.inverse().expect("row operations are invertible");

    let components = spec.cocycle.components();
    let transformed: Vec<BilinearForm> = (0..k)
        .map(|r| BilinearForm::linear_combination(n, t.row(r).iter().zip(components)))
        .collect();
    let mut shifts = Vec::with_capacity(k - d);
    for form in &transformed[d..] {
        shifts.push(coboundary_primitive(&spec.base, form).expect("zero class means coboundary"));
    }

    let reduced_cocycle = Cocycle::new_unchecked(n, transformed[..d].to_vec());
    let reduced_spec = ExtensionSpec {
        base: spec.base.clone(),
        cocycle: reduced_cocycle.clone(),
    };
    let reduced_algebra = extension_table(&reduced_spec)
        .build()?
        .direct_sum(&Algebra::abelian(k - d));

    let total = n + k;
    let mut columns: Vec<Vector> = Vec::with_capacity(total);
    for i in 0..n {
        let mut col = unit_vector(total, i);
        for (s, phi) in shifts.iter().enumerate() {
            if phi[i].is_zero() {
                continue;
            }
            for m in 0..k {
                col[n + m] += &phi[i] * &t_inv[(m, d + s)];
            }
        }
        columns.push(col);
    }
    for c in 0..k {
        let mut col = zero_vector(total);
        for m in 0..k {
            col[n + m] = t_inv[(m, c)].clone();
        }
        columns.push(col);
    }
    let witness = Matrix::from_columns(total, &columns).expect("columns of length n + k");

    Ok(SplitReport {
        class_rank: d,
        abelian_summand_dim: k - d,
        adapted_v_basis: t_inv,
        reduced_cocycle,
        section_shift: shifts,
        reduced_algebra,
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCheck {
    pub split: bool,
    /// A central vector of `L_θ` spanning an abelian direct summand.
    pub witness: Option<Vector>,
}

pub fn is_split(spec: &ExtensionSpec) -> Result<SplitCheck, ExtensionError> {
    let report = reduce_extension(spec)?;
    let witness = report
        .is_split()
        .then(|| report.witness.column(report.witness.cols() - 1));
    Ok(SplitCheck {
        split: report.is_split(),
        witness,
    })
}

/// Presents `a` as a central extension of `a / v` for a central subspace `v`.
/// The quotient is realized on the unit vectors of the non-pivot coordinates
/// of `v`; the returned matrix has those vectors followed by the basis of `v`
/// as columns, and is an isomorphism from the extension onto `a`.
pub fn split_off_central(
    a: &Algebra,
    v: &Subspace,
) -> Result<(ExtensionSpec, Matrix), ExtensionError> {
    let n = a.dim();
    if v.ambient_dim() != n {
        return Err(ExtensionError::DimensionMismatch {
            expected: n,
            found: v.ambient_dim(),
        });
    }
    if !v.is_subspace_of(&center(a)) {
        return Err(ExtensionError::NotCentral);
    }
    let mut columns = v.complement_in(&Subspace::full(n));
    let m = columns.len();
    let k = v.dim();
    columns.extend(v.basis().iter().cloned());
    let p = Matrix::from_columns(n, &columns).expect("columns of length n");
    let adapted = a.change_basis(&p)?;

    let mut quotient = Algebra::builder(m);
    let mut forms = vec![BilinearForm::zero(m); k];
    for (i, j, l, c) in adapted.nonzero_constants() {
        // brackets involving v vanish, so i, j < m here
        if l < m {
            quotient.set(i, j, l, c);
        } else {
            forms[l - m].set(i, j, c);
        }
    }
    let quotient = quotient.build()?;
    let spec = ExtensionSpec::new(quotient, Cocycle::new_unchecked(m, forms))?;
    Ok((spec, p))
}
