//! Explicit basis changes from the one-dimensional extension classification
//! of `F_n^1` and `F_n^2`, at rational parameter points.
//!
//! A change of basis `e'_j = Σ_i c_ij e_i` of an algebra `A` producing the
//! table `B` is the isomorphism `B → A` with matrix `c`, so each [`Witness`]
//! stores `from` = the table obtained, `to` = the table started from.

use num_traits::{One, Zero};

use super::{make, CatalogError, Family, FamilySpec};
use crate::algebra::{Algebra, AlgebraBuilder};
use crate::cohomology::{BilinearForm, Cocycle};
use crate::extension::{central_extension, ExtensionSpec};
use crate::isomorphism::{verify_isomorphism, IsoCheck};
use crate::linalg::{scalar, to_f64, Matrix, Scalar};

#[derive(Debug, Clone)]
pub struct Witness {
    pub name: String,
    pub from: Algebra,
    pub to: Algebra,
    pub map: Matrix,
}

impl Witness {
    pub fn check(&self) -> IsoCheck {
        verify_isomorphism(&self.from, &self.to, &self.map).expect("witness dimensions agree")
    }
}

/// The extension of `base_n` (`F1` or `F2`) by
/// `α_1 θ(e_2,e_1) + α_2 θ(e_n,e_1) + α_3 θ(e_1,e_2) + α_4 θ(e_2,e_2)`,
/// on the basis `e_1, …, e_n, x`.
pub fn one_dim_extension(
    base: Family,
    n: usize,
    alpha: &[Scalar; 4],
) -> Result<Algebra, CatalogError> {
    let b = make(&FamilySpec::new(base, n))?;
    let reps = [(1, 0), (n - 1, 0), (0, 1), (1, 1)].map(|(p, q)| BilinearForm::elementary(n, p, q));
    let theta = BilinearForm::linear_combination(n, alpha.iter().zip(&reps));
    let spec = ExtensionSpec::new(b, Cocycle::new_unchecked(n, vec![theta]))
        .expect("listed representatives are cocycles");
    Ok(central_extension(&spec).expect("cocycle checked"))
}

/// The extension after `e'_1 = e_1, e'_i = e_{i+1} (2 <= i <= n-1), e'_n = e_2,
/// e'_{n+1} = x` when `α_2 = 0`:
/// `[e_i, e_1] = e_{i+1}` for `i <= n-2`, `[e_n, e_1] = ε e_2 + α_1 e_{n+1}`,
/// `[e_1, e_n] = α_3 e_{n+1}`, `[e_n, e_n] = α_4 e_{n+1}` with `ε = 1` for `F1`
/// and `0` for `F2`.
pub fn permuted_extension(
    base: Family,
    n: usize,
    a1: &Scalar,
    a3: &Scalar,
    a4: &Scalar,
) -> Algebra {
    let mut b = AlgebraBuilder::new(n + 1);
    for i in 0..n - 2 {
        b.set(i, 0, i + 1, Scalar::one());
    }
    if base == Family::F1 {
        b.set(n - 1, 0, 1, Scalar::one());
    }
    b.set(n - 1, 0, n, a1.clone());
    b.set(0, n - 1, n, a3.clone());
    b.set(n - 1, n - 1, n, a4.clone());
    b.build().expect("permuted extension table is Leibniz")
}

/// Matrix whose column `j` (1-based) is `Σ c e_i` over the listed `(i, c)`;
/// unlisted columns are unit vectors.
fn change(dim: usize, columns: &[(usize, Vec<(usize, Scalar)>)]) -> Matrix {
    let mut m = Matrix::identity(dim);
    for (j, col) in columns {
        m.set(j - 1, j - 1, Scalar::zero());
        for (i, c) in col {
            let cur = m[(i - 1, j - 1)].clone();
            m.set(i - 1, j - 1, cur + c);
        }
    }
    m
}

/// `e'_1 = e_1, e'_i = e_{i+1} (2 <= i <= n-1), e'_n = e_2, e'_{n+1} = x`.
fn permutation(n: usize) -> Matrix {
    let one = Scalar::one;
    let mut cols = vec![(1, vec![(1, one())])];
    for i in 2..n {
        cols.push((i, vec![(i + 1, one())]));
    }
    cols.push((n, vec![(2, one())]));
    change(n + 1, &cols)
}

fn ints<const K: usize>(v: [i64; K]) -> [Scalar; K] {
    v.map(scalar)
}

/// Witnesses for the one-dimensional extensions of `base_n`.
pub fn one_dim_witnesses(base: Family, n: usize) -> Result<Vec<Witness>, CatalogError> {
    let m = n + 1;
    let one = Scalar::one;
    let mut out = Vec::new();

    // filiform case: e'_2 = e_2 - α_1 e_n, e'_{n+1} = x
    let [a1, a3, a4] = ints([2, 1, -1]);
    let to = one_dim_extension(base, n, &[a1.clone(), one(), a3.clone(), a4.clone()])?;
    let from = match base {
        Family::F1 => make(&FamilySpec::f1_tail(m, a4.clone(), a3.clone()))?,
        _ => make(&FamilySpec::f2_tail(m, a3.clone(), a4.clone()))?,
    };
    out.push(Witness {
        name: format!(
            "{base}_{n}: e'_2 = e_2 - 2e_{n} onto {}",
            from.name().unwrap_or("")
        ),
        from,
        to,
        map: change(m, &[(2, vec![(2, one()), (n, -a1)])]),
    });

    // quasi-filiform case: the permutation, at points matching listed tables
    let points: Vec<([i64; 3], FamilySpec)> = match base {
        Family::F1 => {
            let mut v = Vec::new();
            for l in [-1, 0, 1] {
                v.push(([1, l, 0], spec(Family::L3Lambda, m, &[l])?));
            }
            v.push(([1, 0, 2], spec(Family::L4Lambda, m, &[2])?));
            for (l, mu) in [(1, 1), (2, 4)] {
                v.push(([1, l, mu], spec(Family::L5LambdaMu, m, &[l, mu])?));
            }
            v
        }
        _ => {
            let mut v = Vec::new();
            for l in [0, 1, -1, 2] {
                v.push(([1, l, 0], spec(Family::L1Lambda, m, &[l])?));
            }
            for l in [0, 1] {
                v.push(([1, l, 1], spec(Family::L2Lambda, m, &[l])?));
            }
            v
        }
    };
    for ([a1, a3, a4], target) in points {
        let [a1, a3, a4] = ints([a1, a3, a4]);
        out.push(Witness {
            name: format!(
                "{base}_{n} (α1, α3, α4) = ({a1}, {a3}, {a4}): permutation onto {target}"
            ),
            from: make(&target)?,
            to: one_dim_extension(base, n, &[a1, Scalar::zero(), a3, a4])?,
            map: permutation(n),
        });
    }

    // α_1 = 0: e'_1 = e_1 + e_n, e'_2 = c e_2 + (α_3 + α_4) e_{n+1}, e'_i = c e_i
    let [a3, a4] = ints([1, 2]);
    let zero = Scalar::zero();
    let s = &a3 + &a4;
    let (c, from) = match base {
        Family::F1 => (
            scalar(2),
            permuted_extension(base, n, &(&a4 - &a3), &(scalar(2) * &s), &(scalar(4) * &a4)),
        ),
        _ => (one(), permuted_extension(base, n, &a4, &s, &a4)),
    };
    let mut cols = vec![
        (1, vec![(1, one()), (n, one())]),
        (2, vec![(2, c.clone()), (m, s.clone())]),
    ];
    for i in 3..=n {
        cols.push((i, vec![(i, c.clone())]));
    }
    out.push(Witness {
        name: format!("{base}_{n} α1 = 0, (α3, α4) = ({a3}, {a4}): e'_1 = e_1 + e_{n}"),
        from,
        to: permuted_extension(base, n, &zero, &a3, &a4),
        map: change(m, &cols),
    });

    // the remaining α_1 = 0 tables onto L^1 and L^2
    match base {
        Family::F1 => {
            let a = scalar(3);
            let four_a = scalar(4) * &a;
            let mut cols = vec![(n, vec![(1, one()), (n, -one())])];
            cols.push((m, vec![(m, -four_a.clone())]));
            out.push(Witness {
                name: format!("{base}_{n} α3 = α4 = {a}: e'_n = e_1 - e_n onto L1_{m}"),
                from: make(&FamilySpec::new(Family::L1, m))?,
                to: permuted_extension(base, n, &zero, &four_a, &four_a),
                map: change(m, &cols),
            });
        }
        _ => {
            let a3 = scalar(2);
            out.push(Witness {
                name: format!("{base}_{n} α3 = {a3}, α4 = 0: e'_{m} = α3 e_{m} onto L2_{m}"),
                from: make(&FamilySpec::new(Family::L2, m))?,
                to: permuted_extension(base, n, &zero, &a3, &zero),
                map: change(m, &[(m, vec![(m, a3.clone())])]),
            });
        }
    }
    Ok(out)
}

fn spec(family: Family, n: usize, values: &[i64]) -> Result<FamilySpec, CatalogError> {
    let v: Vec<Scalar> = values.iter().map(|&x| scalar(x)).collect();
    FamilySpec::from_values(family, n, &v)
}

/// The scaling `e'_1 = A e_1, e'_i = A^{i-1} e_i` (`e'_2 = A e_2`) with
/// `A = α_3^{1/(n-2)}`, normalizing `F_{n+1}^1(0, …, 0, 0, α_3)` to
/// `F_{n+1}^1(0, …, 0, 0, 1)`, evaluated in floating point. Returns the largest
/// entry of `p[e_i, e_j] - [p e_i, p e_j]`. This is not an exact check.
pub fn float_scaling_residual(n: usize, alpha3: &Scalar) -> Result<f64, CatalogError> {
    let m = n + 1;
    let from = make(&FamilySpec::f1_tail(m, Scalar::zero(), Scalar::one()))?;
    let to = make(&FamilySpec::f1_tail(m, Scalar::zero(), alpha3.clone()))?;
    let a = to_f64(alpha3).powf(1.0 / (n as f64 - 2.0));
    let diag: Vec<f64> = (1..=m)
        .map(|i| if i <= 2 { a } else { a.powi(i as i32 - 1) })
        .collect();
    let sc = |alg: &Algebra, i: usize, j: usize, k: usize| to_f64(alg.structure_constant(i, j, k));
    let mut worst = 0.0f64;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                // p is diagonal: (p[e_i,e_j])_k = d_k c^k_ij, [p e_i, p e_j]_k = d_i d_j c'^k_ij
                let lhs = diag[k] * sc(&from, i, j, k);
                let rhs = diag[i] * diag[j] * sc(&to, i, j, k);
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    Ok(worst)
}

/// The same scaling at an `α_3` whose root is rational, as an exact witness.
pub fn exact_scaling_witness(n: usize, root: &Scalar) -> Result<Witness, CatalogError> {
    let m = n + 1;
    let mut alpha3 = Scalar::one();
    for _ in 0..n - 2 {
        alpha3 *= root;
    }
    let mut map = Matrix::zeros(m, m);
    let mut power = root.clone();
    for i in 0..m {
        if i >= 2 {
            power *= root;
        }
        map.set(i, i, power.clone());
    }
    Ok(Witness {
        name: format!("F1_{m}(0, …, 0, 0, {alpha3}) scaled by A = {root}"),
        from: make(&FamilySpec::f1_tail(m, Scalar::zero(), Scalar::one()))?,
        to: make(&FamilySpec::f1_tail(m, Scalar::zero(), alpha3))?,
        map,
    })
}
