use crate::algebra::Algebra;
use crate::linalg::{scalar, Scalar};

use super::{make, CatalogError, Family, FamilySpec};

/// One algebra from a classification list. Continuous parameters are
/// represented by a few rational sample values, one entry each.
#[derive(Debug, Clone)]
pub struct ListedClass {
    pub label: String,
    pub spec: Option<FamilySpec>,
    pub algebra: Algebra,
}

fn entry(spec: FamilySpec) -> Result<ListedClass, CatalogError> {
    Ok(ListedClass {
        label: spec.to_string(),
        algebra: make(&spec)?,
        spec: Some(spec),
    })
}

fn ints(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| scalar(v)).collect()
}

fn with_values(family: Family, n: usize, values: &[i64]) -> Result<ListedClass, CatalogError> {
    entry(FamilySpec::from_values(family, n, &ints(values))?)
}

/// Sample points for "any value" and "nonzero" parameters.
const ANY: [i64; 4] = [0, 1, -1, 2];
const NONZERO: [i64; 3] = [1, -1, 2];

/// The algebras the classification lists for `k`-dimensional central
/// extensions of `base` (`F1` or `F2`) of dimension `n`. For `k = 1` the split
/// extension `F_n ⊕ C` is included; for `k >= 2` only the non-split ones are
/// listed, and for `k >= 5` the list is empty since every extension splits.
pub fn listed_extensions(
    base: Family,
    n: usize,
    k: usize,
) -> Result<Vec<ListedClass>, CatalogError> {
    use Family::*;
    if !matches!(base, F1 | F2) {
        return Err(CatalogError::UnknownFamily(format!(
            "{base} has no listed extensions"
        )));
    }
    let m = n + 1;
    let mut out = Vec::new();
    match (base, k) {
        (_, 1) => {
            let b = make(&FamilySpec::new(base, n))?;
            out.push(ListedClass {
                label: format!("{base}_{n} + C"),
                spec: None,
                algebra: b.with_abelian(1),
            });
            if base == F1 {
                for (a4, a3) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                    out.push(entry(FamilySpec::f1_tail(m, scalar(a4), scalar(a3)))?);
                }
                for l in [-1, 0, 1] {
                    out.push(with_values(L3Lambda, m, &[l])?);
                }
                for l in NONZERO {
                    out.push(with_values(L4Lambda, m, &[l])?);
                }
                for (l, mu) in [(1, 1), (2, 4)] {
                    out.push(with_values(L5LambdaMu, m, &[l, mu])?);
                }
                out.push(with_values(L1, m, &[])?);
            } else {
                for (b_m, g) in [(0, 0), (0, 1), (1, 0)] {
                    out.push(entry(FamilySpec::f2_tail(m, scalar(b_m), scalar(g)))?);
                }
                for l in ANY {
                    out.push(with_values(L1Lambda, m, &[l])?);
                }
                for l in [0, 1] {
                    out.push(with_values(L2Lambda, m, &[l])?);
                }
                out.push(with_values(L2, m, &[])?);
            }
        }
        (F1, 2) => {
            for v in [[1, 0, 0, 0], [1, 1, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0]] {
                out.push(with_values(L, n, &v)?);
            }
            for b4 in NONZERO {
                out.push(with_values(L, n, &[1, 0, 0, b4])?);
            }
            for v in [[0, 1, -1, 0], [0, 1, 1, 1], [0, 1, 2, 4]] {
                out.push(with_values(L, n, &v)?);
            }
            for b4 in [0, -1, 2] {
                out.push(with_values(M, n, &[1, b4])?);
            }
            for v in [[0, 0], [0, 1], [0, 2], [2, 1], [2, 2], [1, 1]] {
                out.push(with_values(M, n, &v)?);
            }
            out.push(with_values(L1, n + 2, &[])?);
            for l in [-1, 0, 1] {
                out.push(with_values(L3Lambda, n + 2, &[l])?);
            }
            for l in NONZERO {
                out.push(with_values(L4Lambda, n + 2, &[l])?);
            }
            for (l, mu) in [(1, 1), (2, 4)] {
                out.push(with_values(L5LambdaMu, n + 2, &[l, mu])?);
            }
            out.push(with_values(LStar, n, &[])?);
        }
        (F2, 2) => {
            out.push(with_values(N, n, &[1, 0, 0, 0])?);
            // printed as "N(0, 1, β_3, 0), α_4 ∈ {0, 1}, β_3 ≠ 0"
            for a4 in [0, 1] {
                for b3 in NONZERO {
                    out.push(with_values(N, n, &[0, a4, b3, 0])?);
                }
            }
            for v in [[1, 0, 0, 1], [0, 1, 0, 0], [0, 1, 1, 1]] {
                out.push(with_values(N, n, &v)?);
            }
            for v in [[0, 0, 1, 0], [0, 0, 1, 1]] {
                out.push(with_values(R, n, &v)?);
            }
            for b4 in ANY {
                out.push(with_values(R, n, &[0, 1, 1, b4])?);
            }
            out.push(with_values(R, n, &[1, 0, 0, 1])?);
            for l in ANY {
                out.push(with_values(L1Lambda, n + 2, &[l])?);
            }
            for l in [0, 1] {
                out.push(with_values(L2Lambda, n + 2, &[l])?);
            }
            out.push(with_values(L2, n + 2, &[])?);
            out.push(with_values(NStar, n, &[])?);
        }
        (F1, 3) => {
            for v in [
                [0, 0, 0],
                [1, 0, 0],
                [0, 0, 1],
                [1, 0, 1],
                [0, 0, 2],
                [1, 0, 2],
            ] {
                out.push(with_values(P, n, &v)?);
            }
            for g4 in [0, -1, 2] {
                out.push(with_values(P, n, &[0, 1, g4])?);
            }
            for v in [[0, 2, 1], [0, 2, 2], [0, 1, 1]] {
                out.push(with_values(P, n, &v)?);
            }
            out.push(with_values(PStar, n, &[])?);
        }
        (F2, 3) => {
            for v in [
                [0, 0, 0, 1, 0],
                [1, 0, 0, 1, 0],
                [0, 0, 0, 1, 1],
                [1, 0, 0, 1, 1],
            ] {
                out.push(with_values(Q, n, &v)?);
            }
            for g4 in ANY {
                out.push(with_values(Q, n, &[0, 0, 1, 1, g4])?);
            }
            out.push(with_values(Q, n, &[0, 1, 0, 0, 1])?);
            out.push(with_values(QStar, n, &[])?);
        }
        (F1, 4) => out.push(with_values(Ext4F1, n, &[])?),
        (F2, 4) => out.push(with_values(Ext4F2, n, &[])?),
        _ => {}
    }
    Ok(out)
}
