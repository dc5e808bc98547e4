use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{
    center, characteristic_sequence, classify_shape, left_annihilator, lower_central_series,
    right_annihilator, squares_span, Algebra, AlgebraError, Certainty, CharSeq, Shape,
};
use crate::cohomology::cohomology_dims;
use crate::linalg::{sparse_rank, Scalar, SparseRow, Subspace};

/// Isomorphism invariants of a nilpotent algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    /// `dim L^1, dim L^2, …` down to the first zero term.
    pub lcs_dims: Vec<usize>,
    pub nilindex: usize,
    pub center_dim: usize,
    pub charseq: CharSeq,
    pub charseq_certainty: Certainty,
    /// `dim {x : [x, L] = 0}`
    pub left_annihilator_dim: usize,
    /// `dim {x : [L, x] = 0}`
    pub right_annihilator_dim: usize,
    pub shape: Shape,
    /// `dim span{[x, x]}`
    pub squares_dim: usize,
    pub derivations_dim: usize,
    /// `dim HL²(L)` with scalar coefficients.
    pub h2_dim: usize,
}

/// How two fingerprints relate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    /// Only uncertified characteristic sequences differ.
    Tie,
    /// The named invariant differs, so the algebras are not isomorphic.
    Distinguished(&'static str),
}

impl Comparison {
    pub fn is_distinguished(&self) -> bool {
        matches!(self, Comparison::Distinguished(_))
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Equal => f.write_str("equal"),
            Comparison::Tie => f.write_str("tie"),
            Comparison::Distinguished(field) => write!(f, "distinguished by {field}"),
        }
    }
}

impl Fingerprint {
    /// Field-by-field comparison. Differing characteristic sequences only
    /// separate the algebras when the smaller one is certified exact, since
    /// an uncertified value is only a lower bound.
    pub fn compare(&self, other: &Fingerprint) -> Comparison {
        let fields = [
            ("dim", self.dim == other.dim),
            ("lcs-dims", self.lcs_dims == other.lcs_dims),
            ("nilindex", self.nilindex == other.nilindex),
            ("center-dim", self.center_dim == other.center_dim),
            (
                "left-annihilator-dim",
                self.left_annihilator_dim == other.left_annihilator_dim,
            ),
            (
                "right-annihilator-dim",
                self.right_annihilator_dim == other.right_annihilator_dim,
            ),
            ("shape", self.shape == other.shape),
            ("squares-dim", self.squares_dim == other.squares_dim),
            (
                "derivations-dim",
                self.derivations_dim == other.derivations_dim,
            ),
            ("h2-dim", self.h2_dim == other.h2_dim),
        ];
        if let Some((field, _)) = fields.iter().find(|(_, same)| !same) {
            return Comparison::Distinguished(field);
        }
        if self.charseq == other.charseq {
            return Comparison::Equal;
        }
        // The smaller value is a lower bound for its algebra's true value;
        // if it is exact, the other algebra provably has a larger one.
        let lo = if self.charseq < other.charseq {
            self
        } else {
            other
        };
        if lo.charseq_certainty == Certainty::Exact {
            return Comparison::Distinguished("charseq");
        }
        Comparison::Tie
    }
}

/// `dim Der(L)` where `D[x, y] = [Dx, y] + [x, Dy]`.
pub fn derivations_dim(a: &Algebra) -> usize {
    let n = a.dim();
    // unknown D[r][c] at index r·n + c; column c is D e_c
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for t in 0..n {
                let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                let mut add =
                    |idx: usize, c: Scalar| *row.entry(idx).or_insert_with(Scalar::zero) += c;
                for (l, c) in a.product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        add(t * n + l, c.clone());
                    }
                }
                for r in 0..n {
                    let rj = a.structure_constant(r, j, t);
                    if !rj.is_zero() {
                        add(r * n + i, -rj);
                    }
                    let ir = a.structure_constant(i, r, t);
                    if !ir.is_zero() {
                        add(r * n + j, -ir);
                    }
                }
                rows.push(row.into_iter().collect::<SparseRow>());
            }
        }
    }
    // short rows first keeps fill-in down
    rows.sort_by_key(Vec::len);
    n * n - sparse_rank(rows)
}

pub fn fingerprint(a: &Algebra) -> Result<Fingerprint, AlgebraError> {
    let series = lower_central_series(a);
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(AlgebraError::NotNilpotent);
    }
    let cs = characteristic_sequence(a)?;
    Ok(Fingerprint {
        dim: a.dim(),
        lcs_dims: series.iter().map(Subspace::dim).collect(),
        nilindex: series.len(),
        center_dim: center(a).dim(),
        charseq: cs.seq,
        charseq_certainty: cs.certainty,
        left_annihilator_dim: left_annihilator(a).dim(),
        right_annihilator_dim: right_annihilator(a).dim(),
        shape: classify_shape(a)?,
        squares_dim: squares_span(a).dim(),
        derivations_dim: derivations_dim(a),
        h2_dim: cohomology_dims(a).2,
    })
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lcs: Vec<String> = self.lcs_dims.iter().map(usize::to_string).collect();
        write!(
            f,
            "dim {} lcs [{}] nilindex {} center {} charseq {}{} ann {}/{} {} squares {} der {} h2 {}",
            self.dim,
            lcs.join(","),
            self.nilindex,
            self.center_dim,
            self.charseq,
            if self.charseq_certainty == Certainty::Exact {
                ""
            } else {
                "?"
            },
            self.left_annihilator_dim,
            self.right_annihilator_dim,
            self.shape,
            self.squares_dim,
            self.derivations_dim,
            self.h2_dim
        )
    }
}
