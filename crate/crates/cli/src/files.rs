//! JSON file formats. Rationals are written as strings (`"-3/2"`), indices are
//! 1-based, and records are kept sorted so that writing a file read from
//! canonical output reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use leibniz_core::algebra::Algebra;
use leibniz_core::cohomology::{BilinearForm, Cocycle};
use leibniz_core::linalg::{format_scalar, parse_scalar, Matrix, Scalar};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: malformed JSON: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FileError {
    FileError::Invalid(msg.into())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("file types serialize");
    s.push('\n');
    s
}

fn rational(s: &str, what: &str) -> Result<Scalar, FileError> {
    parse_scalar(s).map_err(|_| invalid(format!("{what}: {s:?} is not a rational literal")))
}

fn check_index(i: usize, dim: usize, what: &str) -> Result<usize, FileError> {
    if i == 0 || i > dim {
        return Err(invalid(format!("{what}: index {i} outside 1..={dim}")));
    }
    Ok(i - 1)
}

/// `[e_i, e_j]` gains `c e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

/// A multiplication table. Products not listed are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub brackets: Vec<BracketRecord>,
}

impl AlgebraFile {
    pub fn read(path: &Path) -> Result<Self, FileError> {
        let f: AlgebraFile = read_json(path)?;
        f.to_algebra()
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Ok(f)
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        let brackets = a
            .nonzero_constants()
            .into_iter()
            .map(|(i, j, k, c)| BracketRecord {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                c: format_scalar(&c),
            })
            .collect();
        let mut f = AlgebraFile {
            dim: a.dim(),
            name: a.name().map(str::to_string),
            params: BTreeMap::new(),
            brackets,
        };
        f.canonicalize();
        f
    }

    pub fn with_params(mut self, params: &BTreeMap<String, Scalar>) -> Self {
        self.params = params
            .iter()
            .map(|(k, v)| (k.clone(), format_scalar(v)))
            .collect();
        self
    }

    /// Sorts the records, normalizes the rationals and drops zero entries.
    pub fn canonicalize(&mut self) {
        for r in &mut self.brackets {
            if let Ok(c) = parse_scalar(&r.c) {
                r.c = format_scalar(&c);
            }
        }
        for v in self.params.values_mut() {
            if let Ok(c) = parse_scalar(v) {
                *v = format_scalar(&c);
            }
        }
        self.brackets.retain(|r| r.c != "0");
        self.brackets.sort_by_key(|r| (r.i, r.j, r.k));
    }

    /// The table as an algebra; the Leibniz identity is not checked here.
    pub fn to_algebra(&self) -> Result<Algebra, FileError> {
        let mut b = Algebra::builder(self.dim);
        let mut seen = BTreeSet::new();
        for r in &self.brackets {
            let at = format!("bracket ({}, {}, {})", r.i, r.j, r.k);
            let i = check_index(r.i, self.dim, &at)?;
            let j = check_index(r.j, self.dim, &at)?;
            let k = check_index(r.k, self.dim, &at)?;
            if !seen.insert((i, j, k)) {
                return Err(invalid(format!("{at} is listed twice")));
            }
            b.set(i, j, k, rational(&r.c, &at)?);
        }
        if let Some(name) = &self.name {
            b = b.name(name.clone());
        }
        Ok(b.build_raw())
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// `θ^(component)(e_i, e_j) = c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleRecord {
    pub component: usize,
    pub i: usize,
    pub j: usize,
    pub c: String,
}

/// A `k`-tuple of bilinear forms on an algebra of dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleFile {
    pub dim: usize,
    pub k: usize,
    pub entries: Vec<CocycleRecord>,
}

impl CocycleFile {
    pub fn read(path: &Path) -> Result<Self, FileError> {
        let f: CocycleFile = read_json(path)?;
        f.to_cocycle()
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Ok(f)
    }

    pub fn from_cocycle(theta: &Cocycle) -> Self {
        let mut entries = Vec::new();
        for (m, form) in theta.components().iter().enumerate() {
            for (p, q, c) in form.support() {
                entries.push(CocycleRecord {
                    component: m + 1,
                    i: p + 1,
                    j: q + 1,
                    c: format_scalar(&c),
                });
            }
        }
        entries.sort_by_key(|r| (r.component, r.i, r.j));
        CocycleFile {
            dim: theta.dim(),
            k: theta.k(),
            entries,
        }
    }

    /// The forms, without checking the cocycle condition.
    pub fn to_cocycle(&self) -> Result<Cocycle, FileError> {
        if self.k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        let mut forms = vec![BilinearForm::zero(self.dim); self.k];
        let mut seen = BTreeSet::new();
        for r in &self.entries {
            let at = format!("entry (component {}, {}, {})", r.component, r.i, r.j);
            let m = check_index(r.component, self.k, &at)?;
            let p = check_index(r.i, self.dim, &at)?;
            let q = check_index(r.j, self.dim, &at)?;
            if !seen.insert((m, p, q)) {
                return Err(invalid(format!("{at} is listed twice")));
            }
            forms[m].set(p, q, rational(&r.c, &at)?);
        }
        Ok(Cocycle::new_unchecked(self.dim, forms))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

/// A dense matrix, one array of rational strings per row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixFile {
    pub fn read(path: &Path) -> Result<Self, FileError> {
        let f: MatrixFile = read_json(path)?;
        f.to_matrix()
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        Ok(f)
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        MatrixFile {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows())
                .map(|r| m.row(r).iter().map(format_scalar).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<Matrix, FileError> {
        if self.entries.len() != self.rows {
            return Err(invalid(format!(
                "matrix declares {} rows but lists {}",
                self.rows,
                self.entries.len()
            )));
        }
        let mut values = Vec::with_capacity(self.rows * self.cols);
        for (r, row) in self.entries.iter().enumerate() {
            if row.len() != self.cols {
                return Err(invalid(format!(
                    "matrix row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    self.cols
                )));
            }
            for (c, s) in row.iter().enumerate() {
                values.push(rational(
                    s,
                    &format!("matrix entry ({}, {})", r + 1, c + 1),
                )?);
            }
        }
        Ok(Matrix::new(self.rows, self.cols, values).expect("shape checked"))
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use leibniz_core::catalog::{make, Family, FamilySpec};

    #[test]
    fn nf4_has_three_records() {
        let a = make(&FamilySpec::new(Family::NullFiliform, 4)).unwrap();
        let f = AlgebraFile::from_algebra(&a);
        assert_eq!(f.brackets.len(), 3);
        assert_eq!(
            f.brackets[0],
            BracketRecord {
                i: 1,
                j: 1,
                k: 2,
                c: "1".into()
            }
        );
    }

    #[test]
    fn rejects_duplicates_and_bad_indices() {
        let rec = |i, j, k, c: &str| BracketRecord {
            i,
            j,
            k,
            c: c.into(),
        };
        let mut f = AlgebraFile {
            dim: 2,
            name: None,
            params: BTreeMap::new(),
            brackets: vec![rec(1, 1, 2, "1"), rec(1, 1, 2, "2")],
        };
        assert!(f.to_algebra().is_err());
        f.brackets = vec![rec(1, 3, 2, "1")];
        assert!(f.to_algebra().is_err());
        f.brackets = vec![rec(1, 1, 2, "x")];
        assert!(f.to_algebra().is_err());
        f.brackets = vec![rec(1, 1, 2, "2/4")];
        f.canonicalize();
        assert_eq!(f.brackets[0].c, "1/2");
    }

    #[test]
    fn matrix_shape_checked() {
        let f = MatrixFile {
            rows: 2,
            cols: 2,
            entries: vec![vec!["1".into(), "0".into()], vec!["0".into()]],
        };
        assert!(f.to_matrix().is_err());
        let id = Matrix::identity(3);
        assert_eq!(MatrixFile::from_matrix(&id).to_matrix().unwrap(), id);
    }
}
