use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{lower_central_series, Algebra, AlgebraError};
use crate::linalg::{scalar, unit_vector, Matrix, Scalar, Subspace, Vector};

/// Jordan block sizes of a nilpotent operator, weakly decreasing. Ordered
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CharSeq(pub Vec<usize>);

impl CharSeq {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for CharSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certainty {
    /// The witness attains `rank(R_x^s) = dim L^{s+1}` for every `s`, the
    /// largest ranks any `R_x` can have, so no sequence is larger.
    Exact,
    /// Best value over the sampled candidates; larger values are possible in
    /// principle but not generically.
    LowerBound,
}

impl Certainty {
    pub fn label(self) -> &'static str {
        match self {
            Certainty::Exact => "exact",
            Certainty::LowerBound => "lower-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicSequence {
    pub seq: CharSeq,
    pub witness: Vector,
    pub certainty: Certainty,
}

/// Matrix of `y ↦ [y, x]`.
pub fn right_mult_operator(a: &Algebra, x: &[Scalar]) -> Result<Matrix, AlgebraError> {
    mult_operator(a, x, false)
}

/// Matrix of `y ↦ [x, y]`.
pub fn left_mult_operator(a: &Algebra, x: &[Scalar]) -> Result<Matrix, AlgebraError> {
    mult_operator(a, x, true)
}

fn mult_operator(a: &Algebra, x: &[Scalar], left: bool) -> Result<Matrix, AlgebraError> {
    let n = a.dim();
    if x.len() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        // column j is the image of e_j
        let image = if left {
            a.bracket_with_basis_right(x, j)
        } else {
            a.bracket_with_basis_left(j, x)
        };
        for (k, c) in image.into_iter().enumerate() {
            m.set(k, j, c);
        }
    }
    Ok(m)
}

/// `rank(m^s)` for `s = 0, 1, …` until the rank stops changing, as the
/// dimensions of the images `m^s(V)`. Keeping each image in reduced form avoids
/// the coefficient growth of explicit powers.
fn rank_sequence(m: &Matrix) -> Vec<usize> {
    let mut image = Subspace::full(m.rows());
    let mut ranks = vec![image.dim()];
    loop {
        let next = image.basis().iter().map(|v| m.mul_vec(v).expect("square"));
        image = Subspace::span(m.rows(), next);
        let r = image.dim();
        let last = *ranks.last().expect("nonempty");
        ranks.push(r);
        if r == last || r == 0 {
            return ranks;
        }
    }
}

fn partition_from_ranks(ranks: &[usize]) -> CharSeq {
    // at_least[s] = number of blocks of size >= s + 1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for s in (0..at_least.len()).rev() {
        let next = at_least.get(s + 1).copied().unwrap_or(0);
        for _ in 0..at_least[s] - next {
            parts.push(s + 1);
        }
    }
    CharSeq(parts)
}

/// Jordan block sizes of a nilpotent matrix, from the ranks of its powers.
pub fn jordan_type_nilpotent(m: &Matrix) -> Result<CharSeq, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    let ranks = rank_sequence(m);
    if *ranks.last().expect("nonempty") != 0 {
        return Err(AlgebraError::NotNilpotent);
    }
    Ok(partition_from_ranks(&ranks))
}

const RANDOM_CANDIDATES: usize = 32;
const SEED: u64 = 0x5eed_c4a2;

/// `C(L) = max C(x)` over `x ∉ L²`, taken over basis vectors, the sums and
/// differences of two basis vectors, and a fixed pseudo-random sample. The
/// sweep stops as soon as a candidate is certified maximal.
pub fn characteristic_sequence(a: &Algebra) -> Result<CharacteristicSequence, AlgebraError> {
    let n = a.dim();
    let series = lower_central_series(a);
    if !series.last().is_some_and(Subspace::is_zero) {
        return Err(AlgebraError::NotNilpotent);
    }
    if n == 0 {
        return Ok(CharacteristicSequence {
            seq: CharSeq(vec![]),
            witness: vec![],
            certainty: Certainty::Exact,
        });
    }
    let l2 = &series[1];
    // ranks[s] of R_x^s can never exceed dim L^{s+1}.
    let ceiling: Vec<usize> = series.iter().map(Subspace::dim).collect();

    let mut best: Option<(CharSeq, Vector)> = None;
    for x in candidates(n) {
        if l2.contains(&x) {
            continue;
        }
        let ranks = rank_sequence(&right_mult_operator(a, &x)?);
        if *ranks.last().expect("nonempty") != 0 {
            return Err(AlgebraError::NotNilpotent);
        }
        let seq = partition_from_ranks(&ranks);
        let exact = (0..ranks.len().max(ceiling.len()))
            .all(|s| ranks.get(s).copied().unwrap_or(0) == ceiling.get(s).copied().unwrap_or(0));
        if exact {
            return Ok(CharacteristicSequence {
                seq,
                witness: x,
                certainty: Certainty::Exact,
            });
        }
        if best.as_ref().is_none_or(|(b, _)| seq > *b) {
            best = Some((seq, x));
        }
    }
    let (seq, witness) = best.expect("a nilpotent algebra has elements outside L²");
    Ok(CharacteristicSequence {
        seq,
        witness,
        certainty: Certainty::LowerBound,
    })
}

fn candidates(n: usize) -> impl Iterator<Item = Vector> {
    let basis = (0..n).map(move |i| unit_vector(n, i));
    let pairs = (0..n).flat_map(move |i| {
        (i + 1..n).flat_map(move |j| {
            [1i64, -1].into_iter().map(move |sign| {
                let mut v = unit_vector(n, i);
                v[j] = scalar(sign);
                v
            })
        })
    });
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random = (0..RANDOM_CANDIDATES).map(move |_| {
        (0..n)
            .map(|_| scalar(rng.gen_range(-3i64..=3)))
            .collect::<Vector>()
    });
    basis
        .chain(pairs)
        .chain(random)
        .filter(|v| v.iter().any(|c| !c.is_zero()))
}
