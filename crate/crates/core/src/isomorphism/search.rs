use itertools::Itertools;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fingerprint::{fingerprint, Comparison};
use super::verify::{first_failure, verify_isomorphism};
use crate::algebra::{natural_gradation, Algebra, AlgebraError, GradedAlgebra};
use crate::linalg::{axpy, ratio, scalar, solve_affine, Matrix, Scalar, Vector};

pub const DEFAULT_BUDGET: usize = 10_000;
pub const DEFAULT_SEED: u64 = 0x1e1b_2014;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A verified isomorphism `a → b` (column `j` = image of `e_j`).
    Found(Matrix),
    /// The named invariant differs.
    Distinguished(String),
    /// Neither found nor ruled out within the budget.
    Undetermined { tried: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Maximal number of candidate generator maps to try.
    pub budget: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

pub fn search_isomorphism(
    a: &Algebra,
    b: &Algebra,
    budget: usize,
) -> Result<SearchOutcome, AlgebraError> {
    search_isomorphism_with(
        a,
        b,
        &SearchOptions {
            budget,
            ..SearchOptions::default()
        },
    )
}

/// Looks for an isomorphism between nilpotent algebras.
///
/// Any isomorphism maps `L^i` onto `L^i`, so in filtration-adapted bases it is
/// block lower triangular, and a homomorphism is determined by the images of
/// the generators (the first layer). For each candidate block `M` on the
/// first layer the remaining entries are found level by level: the part of
/// the map raising degree by `k` enters the homomorphism equations
/// `p[z, g] = [pz, pg]` (with `g` a generator) projected to degree
/// `deg z + 1 + k` linearly, so each level is one linear solve. Candidates for
/// `M` are permutations with scalings, small triangular matrices, then seeded
/// random matrices, where the random trials also randomize free variables.
pub fn search_isomorphism_with(
    a: &Algebra,
    b: &Algebra,
    opts: &SearchOptions,
) -> Result<SearchOutcome, AlgebraError> {
    let fa = fingerprint(a)?;
    let fb = fingerprint(b)?;
    if let Comparison::Distinguished(field) = fa.compare(&fb) {
        return Ok(SearchOutcome::Distinguished(field.to_string()));
    }
    if a.dim() == 0 {
        return Ok(SearchOutcome::Found(Matrix::zeros(0, 0)));
    }
    let ga = natural_gradation(a)?;
    let gb = natural_gradation(b)?;
    let ctx = Context::new(&ga, &gb);
    let r = ga.layer_dims.first().copied().unwrap_or(0);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut tried = 0;
    let structured = permutation_scalings(r).chain(triangular(r));
    for m in structured {
        if tried >= opts.budget {
            return Ok(SearchOutcome::Undetermined { tried });
        }
        tried += 1;
        if let Some(p) = ctx.extend(&m, None) {
            return Ok(SearchOutcome::Found(ctx.to_original(&ga, &gb, &p, a, b)));
        }
    }
    while tried < opts.budget {
        tried += 1;
        let m = random_invertible(r, &mut rng);
        if let Some(p) = ctx.extend(&m, Some(&mut rng)) {
            return Ok(SearchOutcome::Found(ctx.to_original(&ga, &gb, &p, a, b)));
        }
    }
    Ok(SearchOutcome::Undetermined { tried })
}

struct Context<'a> {
    a: &'a Algebra,
    b: &'a Algebra,
    deg_a: &'a [usize],
    deg_b: &'a [usize],
    gens: Vec<usize>,
    gens_b: Vec<usize>,
    levels: usize,
}

impl<'a> Context<'a> {
    fn new(ga: &'a GradedAlgebra, gb: &'a GradedAlgebra) -> Self {
        let gens = (0..ga.degrees.len())
            .filter(|&i| ga.degrees[i] == 1)
            .collect();
        let gens_b = (0..gb.degrees.len())
            .filter(|&i| gb.degrees[i] == 1)
            .collect();
        Context {
            a: &ga.filtered,
            b: &gb.filtered,
            deg_a: &ga.degrees,
            deg_b: &gb.degrees,
            gens,
            gens_b,
            levels: ga.layer_dims.len(),
        }
    }

    fn unknown(&self, k: usize, r: usize, c: usize) -> bool {
        self.deg_b[r] == self.deg_a[c] + k && !(k == 0 && self.deg_a[c] == 1)
    }

    /// Completes the first-layer block `m` to a homomorphism in adapted
    /// coordinates, if the level-by-level solves succeed.
    fn extend(&self, m: &Matrix, mut rng: Option<&mut ChaCha8Rng>) -> Option<Matrix> {
        let n = self.a.dim();
        let mut f = Matrix::zeros(n, n);
        for (row, &rb) in self.gens_b.iter().enumerate() {
            for (col, &ca) in self.gens.iter().enumerate() {
                f.set(rb, ca, m[(row, col)].clone());
            }
        }
        for k in 0..self.levels {
            let unknowns: Vec<(usize, usize)> = (0..n)
                .cartesian_product(0..n)
                .filter(|&(r, c)| self.unknown(k, r, c))
                .collect();
            if unknowns.is_empty() {
                continue;
            }
            let index = |r: usize, c: usize| unknowns.iter().position(|&u| u == (r, c));
            let images: Vec<Vector> = (0..n).map(|j| f.column(j)).collect();
            let mut rows: Vec<Vector> = Vec::new();
            let mut rhs: Vec<Scalar> = Vec::new();
            for z in 0..n {
                for &g in &self.gens {
                    let targets: Vec<usize> = (0..n)
                        .filter(|&t| self.deg_b[t] == self.deg_a[z] + 1 + k)
                        .collect();
                    if targets.is_empty() {
                        continue;
                    }
                    let w = self.a.product(z, g);
                    let fw = f.mul_vec(w).expect("square");
                    let fzfg = self.b.bracket_unchecked(&images[z], &images[g]);
                    // [e_r, F g] and [F z, e_r] for every r
                    let left: Vec<Vector> = (0..n)
                        .map(|r| self.b.bracket_with_basis_left(r, &images[g]))
                        .collect();
                    let right: Vec<Vector> = (0..n)
                        .map(|r| self.b.bracket_with_basis_right(&images[z], r))
                        .collect();
                    for &t in &targets {
                        let mut row = vec![Scalar::zero(); unknowns.len()];
                        for (c, wc) in w.iter().enumerate() {
                            if !wc.is_zero() {
                                if let Some(u) = index(t, c) {
                                    row[u] += wc;
                                }
                            }
                        }
                        for r in 0..n {
                            if let Some(u) = index(r, z) {
                                row[u] -= &left[r][t];
                            }
                            if let Some(u) = index(r, g) {
                                row[u] -= &right[r][t];
                            }
                        }
                        let residual = &fw[t] - &fzfg[t];
                        if row.iter().all(Zero::is_zero) {
                            if !residual.is_zero() {
                                return None;
                            }
                            continue;
                        }
                        rows.push(row);
                        rhs.push(-residual);
                    }
                }
            }
            let x = if rows.is_empty() {
                vec![Scalar::zero(); unknowns.len()]
            } else {
                let sys = Matrix::from_rows(unknowns.len(), &rows).expect("uniform rows");
                let (mut x, kernel) = solve_affine(&sys, &rhs).expect("shapes agree")?;
                if let Some(rng) = rng.as_deref_mut() {
                    for v in &kernel {
                        let c = scalar(rng.gen_range(-2i64..=2));
                        axpy(&mut x, &c, v);
                    }
                }
                x
            };
            for (&(r, c), v) in unknowns.iter().zip(x) {
                f.set(r, c, v);
            }
        }
        if !f.is_invertible() || first_failure(self.a, self.b, &f).is_some() {
            return None;
        }
        Some(f)
    }

    fn to_original(
        &self,
        ga: &GradedAlgebra,
        gb: &GradedAlgebra,
        p: &Matrix,
        a: &Algebra,
        b: &Algebra,
    ) -> Matrix {
        let inv = ga.basis.inverse().expect("adapted basis");
        let out = gb
            .basis
            .mul(p)
            .and_then(|m| m.mul(&inv))
            .expect("square matrices");
        debug_assert!(verify_isomorphism(a, b, &out).is_ok_and(|c| c.holds()));
        out
    }
}

const SCALES: [(i64, i64); 5] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2)];

fn permutation_scalings(r: usize) -> impl Iterator<Item = Matrix> {
    (0..r).permutations(r).flat_map(move |perm| {
        (0..r)
            .map(|_| 0..SCALES.len())
            .multi_cartesian_product()
            .map(move |scales| {
                let mut m = Matrix::zeros(r, r);
                for (col, &row) in perm.iter().enumerate() {
                    let (num, den) = SCALES[scales[col]];
                    m.set(row, col, ratio(num, den));
                }
                m
            })
    })
}

/// Lower and upper triangular matrices with diagonal in {1, -1, 2} and
/// off-diagonal entries in {-1, 0, 1}.
fn triangular(r: usize) -> impl Iterator<Item = Matrix> {
    let off: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let diag = [1i64, -1, 2];
    [false, true].into_iter().flat_map(move |upper| {
        let off = off.clone();
        (0..r)
            .map(|_| 0..diag.len())
            .multi_cartesian_product()
            .cartesian_product(
                (0..off.len())
                    .map(|_| -1i64..=1)
                    .multi_cartesian_product()
                    .collect::<Vec<_>>(),
            )
            .filter(|(_, o)| o.iter().any(|&x| x != 0))
            .map(move |(d, o)| {
                let mut m = Matrix::zeros(r, r);
                for i in 0..r {
                    m.set(i, i, scalar(diag[d[i]]));
                }
                for (&(i, j), &x) in off.iter().zip(&o) {
                    if upper {
                        m.set(j, i, scalar(x));
                    } else {
                        m.set(i, j, scalar(x));
                    }
                }
                m
            })
    })
}

fn random_invertible(r: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let mut m = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                m.set(i, j, scalar(rng.gen_range(-3i64..=3)));
            }
        }
        if m.is_invertible() {
            return m;
        }
    }
}
