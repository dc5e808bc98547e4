//! Named algebras: null-filiform, naturally graded filiform, the parametric
//! filiform classes, the naturally graded quasi-filiform algebras of type I,
//! and the central extensions of `F_n^1` and `F_n^2`.
//!
//! Tables use 1-based indices as printed; products not listed are zero.
//! For the extension families `n` is the dimension of the base filiform
//! algebra, so the algebra itself has dimension `n + 2`, `n + 3` or `n + 4`
//! (see [`Family::dim`]).

mod classes;
pub mod witnesses;

pub use classes::{listed_extensions, ListedClass};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraBuilder, AlgebraError};
use itertools::Itertools;

use crate::linalg::{format_scalar, ratio, scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("{family} is defined for n in {range}, got {n}")]
    DimensionOutOfRange {
        family: Family,
        n: usize,
        range: String,
    },
    #[error("{family} has no parameter {name:?}")]
    UnknownParameter { family: Family, name: String },
    #[error("{family} requires parameter {name:?}")]
    MissingParameter { family: Family, name: String },
    #[error("{family}: {name} = {value} is outside {domain}")]
    OutOfDomain {
        family: Family,
        name: String,
        value: String,
        domain: String,
    },
    #[error("{family} takes {expected} parameter values, got {found}")]
    WrongArity {
        family: Family,
        expected: usize,
        found: usize,
    },
    #[error("table of {family} is not a Leibniz algebra: {source}")]
    NotLeibniz {
        family: Family,
        #[source]
        source: AlgebraError,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `NF_n`
    NullFiliform,
    F1,
    F2,
    /// The filiform Lie algebra `F_n^3` with parameter `alpha`.
    F3,
    /// `F_m^1(α_4, …, α_m, θ)` on `e_1..e_m`.
    F1Param,
    /// `F_m^2(β_4, …, β_m, γ)` on `e_1..e_m`.
    F2Param,
    L1,
    L2,
    L1Lambda,
    L2Lambda,
    L3Lambda,
    L4Lambda,
    L5LambdaMu,
    L6,
    /// `L(α_3, α_4, β_3, β_4)`, two-dimensional extensions of `F_n^1`.
    L,
    /// `M(α_4, β_4)`, two-dimensional extensions of `F_n^1`.
    M,
    /// `N(α_3, α_4, β_3, β_4)`, two-dimensional extensions of `F_n^2`.
    N,
    /// `R(α_3, α_4, β_3, β_4)`, two-dimensional extensions of `F_n^2`.
    R,
    /// `P(α_4, β_4, γ_4)`, three-dimensional extensions of `F_n^1`.
    P,
    /// `Q(α_4, β_3, β_4, γ_3, γ_4)`, three-dimensional extensions of `F_n^2`.
    Q,
    LStar,
    NStar,
    PStar,
    QStar,
    /// The four-dimensional non-split extension of `F_n^1`.
    Ext4F1,
    /// The four-dimensional non-split extension of `F_n^2`.
    Ext4F2,
    Abelian,
}

/// Allowed values of one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamDomain {
    Any,
    NonZero,
    OneOf(Vec<Scalar>),
}

impl ParamDomain {
    pub fn contains(&self, x: &Scalar) -> bool {
        match self {
            ParamDomain::Any => true,
            ParamDomain::NonZero => !x.is_zero(),
            ParamDomain::OneOf(values) => values.contains(x),
        }
    }
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamDomain::Any => f.write_str("Q"),
            ParamDomain::NonZero => f.write_str("Q \\ {0}"),
            ParamDomain::OneOf(values) => {
                let v: Vec<String> = values.iter().map(format_scalar).collect();
                write!(f, "{{{}}}", v.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamInfo {
    pub name: String,
    pub domain: ParamDomain,
    /// Omitted values are taken as zero.
    pub optional: bool,
}

/// Registry entry for one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInfo {
    pub family: Family,
    pub id: &'static str,
    pub min_n: usize,
    pub max_n: Option<usize>,
    /// `dim = n + dim_offset`.
    pub dim_offset: usize,
    /// Parameters at the smallest admissible `n`; the filiform parametric
    /// families grow one slot per dimension.
    pub params: Vec<ParamInfo>,
    /// Allowed joint values, when the parameters are not independent.
    pub joint: Option<Vec<Vec<Scalar>>>,
    pub description: &'static str,
}

const ALL: [Family; 27] = [
    Family::NullFiliform,
    Family::F1,
    Family::F2,
    Family::F3,
    Family::F1Param,
    Family::F2Param,
    Family::L1,
    Family::L2,
    Family::L1Lambda,
    Family::L2Lambda,
    Family::L3Lambda,
    Family::L4Lambda,
    Family::L5LambdaMu,
    Family::L6,
    Family::L,
    Family::M,
    Family::N,
    Family::R,
    Family::P,
    Family::Q,
    Family::LStar,
    Family::NStar,
    Family::PStar,
    Family::QStar,
    Family::Ext4F1,
    Family::Ext4F2,
    Family::Abelian,
];

impl Family {
    pub fn all() -> &'static [Family] {
        &ALL
    }

    pub fn id(self) -> &'static str {
        match self {
            Family::NullFiliform => "NF",
            Family::F1 => "F1",
            Family::F2 => "F2",
            Family::F3 => "F3",
            Family::F1Param => "F1param",
            Family::F2Param => "F2param",
            Family::L1 => "L1",
            Family::L2 => "L2",
            Family::L1Lambda => "L1λ",
            Family::L2Lambda => "L2λ",
            Family::L3Lambda => "L3λ",
            Family::L4Lambda => "L4λ",
            Family::L5LambdaMu => "L5λμ",
            Family::L6 => "L6",
            Family::L => "L",
            Family::M => "M",
            Family::N => "N",
            Family::R => "R",
            Family::P => "P",
            Family::Q => "Q",
            Family::LStar => "Lstar",
            Family::NStar => "Nstar",
            Family::PStar => "Pstar",
            Family::QStar => "Qstar",
            Family::Ext4F1 => "Ext4F1",
            Family::Ext4F2 => "Ext4F2",
            Family::Abelian => "abelian",
        }
    }

    pub fn min_n(self) -> usize {
        use Family::*;
        match self {
            NullFiliform | Abelian => 1,
            F1 | F2 | F3 => 3,
            F1Param | F2Param => 4,
            L1 | L2 | L1Lambda | L2Lambda | L3Lambda | L4Lambda | L5LambdaMu | L6 => 5,
            _ => 4,
        }
    }

    /// The printed `L_n^6` table satisfies the Leibniz identity only for
    /// `n = 5`: for larger `n`, `[[e_{n-1}, e_n], e_1] = e_4` breaks it.
    pub fn max_n(self) -> Option<usize> {
        (self == Family::L6).then_some(5)
    }

    pub fn dim_range(self) -> String {
        match self.max_n() {
            Some(max) if max == self.min_n() => format!("{{{max}}}"),
            Some(max) => format!("[{}, {max}]", self.min_n()),
            None => format!("n >= {}", self.min_n()),
        }
    }

    pub fn dim_offset(self) -> usize {
        use Family::*;
        match self {
            L | M | N | R | LStar | NStar => 2,
            P | Q | PStar | QStar => 3,
            Ext4F1 | Ext4F2 => 4,
            _ => 0,
        }
    }

    /// Dimension of the algebra built for index `n`.
    pub fn dim(self, n: usize) -> usize {
        n + self.dim_offset()
    }

    /// Parameter names in the order the tables list them.
    pub fn param_names(self, n: usize) -> Vec<String> {
        use Family::*;
        let names: &[&str] = match self {
            F3 => &["alpha"],
            F1Param => {
                let mut v: Vec<String> = (4..=n).map(|k| format!("alpha{k}")).collect();
                v.push("theta".into());
                return v;
            }
            F2Param => {
                let mut v: Vec<String> = (4..=n).map(|k| format!("beta{k}")).collect();
                v.push("gamma".into());
                return v;
            }
            L1Lambda | L2Lambda | L3Lambda | L4Lambda => &["lambda"],
            L5LambdaMu => &["lambda", "mu"],
            L | N | R => &["alpha3", "alpha4", "beta3", "beta4"],
            M => &["alpha4", "beta4"],
            P => &["alpha4", "beta4", "gamma4"],
            Q => &["alpha4", "beta3", "beta4", "gamma3", "gamma4"],
            _ => &[],
        };
        names.iter().map(|s| s.to_string()).collect()
    }

    pub fn param_domain(self, name: &str) -> ParamDomain {
        let vals = |v: &[i64]| ParamDomain::OneOf(v.iter().map(|&x| scalar(x)).collect());
        match (self, name) {
            (Family::F3, _) | (Family::L2Lambda, _) => vals(&[0, 1]),
            (Family::L3Lambda, _) => vals(&[-1, 0, 1]),
            (Family::L4Lambda, _) => ParamDomain::NonZero,
            (Family::L5LambdaMu, "lambda") => vals(&[1, 2]),
            (Family::L5LambdaMu, _) => vals(&[1, 4]),
            _ => ParamDomain::Any,
        }
    }

    fn joint(self) -> Option<Vec<Vec<Scalar>>> {
        (self == Family::L5LambdaMu)
            .then(|| vec![vec![scalar(1), scalar(1)], vec![scalar(2), scalar(4)]])
    }

    fn params_optional(self) -> bool {
        matches!(self, Family::F1Param | Family::F2Param)
    }

    pub fn info(self) -> FamilyInfo {
        let n = self.min_n();
        FamilyInfo {
            family: self,
            id: self.id(),
            min_n: n,
            max_n: self.max_n(),
            dim_offset: self.dim_offset(),
            params: self
                .param_names(n)
                .into_iter()
                .map(|name| ParamInfo {
                    domain: self.param_domain(&name),
                    name,
                    optional: self.params_optional(),
                })
                .collect(),
            joint: self.joint(),
            description: self.description(),
        }
    }

    fn description(self) -> &'static str {
        use Family::*;
        match self {
            NullFiliform => "null-filiform NF_n",
            F1 => "naturally graded filiform F_n^1",
            F2 => "naturally graded filiform F_n^2",
            F3 => "filiform Lie algebra F_n^3 (alpha = 1 only for even n)",
            F1Param => "filiform F_m^1(alpha4..alpham, theta), optional slots default to 0",
            F2Param => "filiform F_m^2(beta4..betam, gamma), optional slots default to 0",
            L1 => "quasi-filiform L_n^1",
            L2 => "quasi-filiform L_n^2",
            L1Lambda => "quasi-filiform L_n^{1,lambda}",
            L2Lambda => "quasi-filiform L_n^{2,lambda}",
            L3Lambda => "quasi-filiform L_n^{3,lambda}",
            L4Lambda => "quasi-filiform L_n^{4,lambda}",
            L5LambdaMu => "quasi-filiform L_n^{5,lambda,mu}",
            L6 => "quasi-filiform L_n^6 (n = 5 only)",
            L => "L(alpha3, alpha4, beta3, beta4), dimension n+2",
            M => "M(alpha4, beta4), dimension n+2",
            N => "N(alpha3, alpha4, beta3, beta4), dimension n+2",
            R => "R(alpha3, alpha4, beta3, beta4), dimension n+2",
            P => "P(alpha4, beta4, gamma4), dimension n+3",
            Q => "Q(alpha4, beta3, beta4, gamma3, gamma4), dimension n+3",
            LStar => "L*, dimension n+2",
            NStar => "N*, dimension n+2",
            PStar => "P*, dimension n+3",
            QStar => "Q*, dimension n+3",
            Ext4F1 => "four-dimensional non-split extension of F_n^1, dimension n+4",
            Ext4F2 => "four-dimensional non-split extension of F_n^2, dimension n+4",
            Abelian => "abelian C^n",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Family {
    type Err = CatalogError;

    /// Case-insensitive; `lambda`/`mu` may be spelled out (`L5lambdamu`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = |t: &str| {
            t.to_lowercase()
                .replace("lambda", "λ")
                .replace("mu", "μ")
                .replace('*', "star")
        };
        let key = norm(s.trim());
        ALL.iter()
            .copied()
            .find(|f| norm(f.id()) == key)
            .ok_or_else(|| CatalogError::UnknownFamily(s.to_string()))
    }
}

pub fn list_families() -> Vec<FamilyInfo> {
    ALL.iter().map(|f| f.info()).collect()
}

/// A family member: the family, its index `n` and named parameter values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub params: BTreeMap<String, Scalar>,
}

impl FamilySpec {
    pub fn new(family: Family, n: usize) -> Self {
        FamilySpec {
            family,
            n,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: Scalar) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    /// Parameters given positionally in table order.
    pub fn from_values(family: Family, n: usize, values: &[Scalar]) -> Result<Self, CatalogError> {
        let names = family.param_names(n);
        if names.len() != values.len() {
            return Err(CatalogError::WrongArity {
                family,
                expected: names.len(),
                found: values.len(),
            });
        }
        let params = names.into_iter().zip(values.iter().cloned()).collect();
        Ok(FamilySpec { family, n, params })
    }

    /// `F_m^1(0, …, 0, a, b)`: the last two slots are `alpha_m` and `theta`.
    pub fn f1_tail(m: usize, alpha_m: Scalar, theta: Scalar) -> Self {
        FamilySpec::new(Family::F1Param, m)
            .with(&format!("alpha{m}"), alpha_m)
            .with("theta", theta)
    }

    /// `F_m^2(0, …, 0, a, b)`: the last two slots are `beta_m` and `gamma`.
    pub fn f2_tail(m: usize, beta_m: Scalar, gamma: Scalar) -> Self {
        FamilySpec::new(Family::F2Param, m)
            .with(&format!("beta{m}"), beta_m)
            .with("gamma", gamma)
    }

    pub fn dim(&self) -> usize {
        self.family.dim(self.n)
    }

    /// Parameter values in table order, zeros filled in for omitted slots.
    pub fn values(&self) -> Vec<Scalar> {
        self.family
            .param_names(self.n)
            .iter()
            .map(|name| self.params.get(name).cloned().unwrap_or_else(Scalar::zero))
            .collect()
    }

    fn param(&self, name: &str) -> Scalar {
        self.params.get(name).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        let family = self.family;
        if self.n < family.min_n() || family.max_n().is_some_and(|max| self.n > max) {
            return Err(CatalogError::DimensionOutOfRange {
                family,
                n: self.n,
                range: family.dim_range(),
            });
        }
        let names = family.param_names(self.n);
        if let Some(name) = self.params.keys().find(|k| !names.contains(k)) {
            return Err(CatalogError::UnknownParameter {
                family,
                name: name.clone(),
            });
        }
        for name in &names {
            let value = match self.params.get(name) {
                Some(v) => v,
                None if family.params_optional() => continue,
                None => {
                    return Err(CatalogError::MissingParameter {
                        family,
                        name: name.clone(),
                    })
                }
            };
            let domain = family.param_domain(name);
            if !domain.contains(value) {
                return Err(CatalogError::OutOfDomain {
                    family,
                    name: name.clone(),
                    value: format_scalar(value),
                    domain: domain.to_string(),
                });
            }
        }
        if let Some(joint) = family.joint() {
            let values = self.values();
            if !joint.contains(&values) {
                let allowed: Vec<String> = joint
                    .iter()
                    .map(|t| {
                        let t: Vec<String> = t.iter().map(format_scalar).collect();
                        format!("({})", t.join(", "))
                    })
                    .collect();
                return Err(CatalogError::OutOfDomain {
                    family,
                    name: names.join(","),
                    value: format!("({})", self.values_text()),
                    domain: format!("{{{}}}", allowed.join(", ")),
                });
            }
        }
        if family == Family::F3 && self.n % 2 == 1 && !self.param("alpha").is_zero() {
            return Err(CatalogError::OutOfDomain {
                family,
                name: "alpha".into(),
                value: format_scalar(&self.param("alpha")),
                domain: "{0} for odd n".into(),
            });
        }
        Ok(())
    }

    fn values_text(&self) -> String {
        let v: Vec<String> = self.values().iter().map(format_scalar).collect();
        v.join(", ")
    }
}

impl fmt::Display for FamilySpec {
    /// `NF_4`, `L5λμ_7(2, 4)`, `M_5(0, 1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.n)?;
        if !self.family.param_names(self.n).is_empty() {
            write!(f, "({})", self.values_text())?;
        }
        Ok(())
    }
}

/// Admissible members for `n <= max_n`: every discrete parameter value and
/// the values 1, -2, 1/2 for each continuous one. Families with many slots
/// vary one slot at a time around a base point.
pub fn sample_grid(max_n: usize) -> Vec<FamilySpec> {
    let samples = [scalar(1), scalar(-2), ratio(1, 2)];
    let mut out = Vec::new();
    for &f in Family::all() {
        let top = f.max_n().unwrap_or(max_n).min(max_n);
        for n in f.min_n()..=top {
            if let Some(joint) = f.joint() {
                for t in joint {
                    out.push(FamilySpec::from_values(f, n, &t).unwrap());
                }
                continue;
            }
            let names = f.param_names(n);
            let choices: Vec<Vec<Scalar>> = names
                .iter()
                .map(|name| match f.param_domain(name) {
                    ParamDomain::OneOf(v) => v,
                    _ => samples.to_vec(),
                })
                .collect();
            if choices.iter().map(Vec::len).product::<usize>() > 400 {
                for (slot, values) in choices.iter().enumerate() {
                    for v in values {
                        let mut point: Vec<Scalar> = choices.iter().map(|c| c[0].clone()).collect();
                        point[slot] = v.clone();
                        out.push(FamilySpec::from_values(f, n, &point).unwrap());
                    }
                }
                continue;
            }
            let points: Vec<Vec<Scalar>> = if choices.is_empty() {
                vec![vec![]]
            } else {
                choices.into_iter().multi_cartesian_product().collect()
            };
            for p in points {
                let s = FamilySpec::from_values(f, n, &p).unwrap();
                if s.validate().is_ok() {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Builds the algebra after validating `n` and the parameters.
pub fn make(spec: &FamilySpec) -> Result<Algebra, CatalogError> {
    spec.validate()?;
    let mut t = Table::new(spec.dim());
    build_table(spec, &mut t);
    t.b.name(spec.to_string())
        .build()
        .map_err(|source| CatalogError::NotLeibniz {
            family: spec.family,
            source,
        })
}

/// Builder with 1-based indices.
struct Table {
    b: AlgebraBuilder,
}

impl Table {
    fn new(dim: usize) -> Self {
        Table {
            b: AlgebraBuilder::new(dim),
        }
    }

    fn put(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        if !c.is_zero() {
            self.b.add(i - 1, j - 1, k - 1, c);
        }
    }

    fn one(&mut self, i: usize, j: usize, k: usize) {
        self.put(i, j, k, Scalar::one());
    }

    /// `[e_i, e_1] = e_{i+1}` for `from <= i <= to`.
    fn chain(&mut self, from: usize, to: usize) {
        for i in from..=to {
            self.one(i, 1, i + 1);
        }
    }
}

fn build_table(spec: &FamilySpec, t: &mut Table) {
    use Family::*;
    let n = spec.n;
    let p = |name: &str| spec.param(name);
    match spec.family {
        Abelian => {}
        NullFiliform => t.chain(1, n - 1),
        F1 => {
            t.one(1, 1, 3);
            t.chain(2, n - 1);
        }
        F2 => {
            t.one(1, 1, 3);
            t.chain(3, n - 1);
        }
        F3 => {
            let alpha = p("alpha");
            for i in 2..n {
                t.one(i, 1, i + 1);
                t.put(1, i, i + 1, -Scalar::one());
                let sign = if i % 2 == 1 { scalar(1) } else { scalar(-1) };
                t.put(i, n + 1 - i, n, sign * &alpha);
            }
        }
        F1Param => {
            // [e_i, e_2] = Σ_{k=i+2}^{n} α_{k+2-i} e_k; the lowest slot is α_4
            t.one(1, 1, 3);
            t.chain(2, n - 1);
            for k in 4..n {
                t.put(1, 2, k, p(&format!("alpha{k}")));
            }
            t.put(1, 2, n, p("theta"));
            for i in 2..=n - 2 {
                for k in i + 2..=n {
                    t.put(i, 2, k, p(&format!("alpha{}", k + 2 - i)));
                }
            }
        }
        F2Param => {
            t.one(1, 1, 3);
            t.chain(3, n - 1);
            for k in 4..=n {
                t.put(1, 2, k, p(&format!("beta{k}")));
            }
            t.put(2, 2, n, p("gamma"));
            for i in 3..=n - 2 {
                for k in i + 2..=n {
                    t.put(i, 2, k, p(&format!("beta{}", k + 2 - i)));
                }
            }
        }
        L1 => {
            t.chain(1, n - 3);
            t.one(1, n - 1, n);
            t.one(1, n - 1, 2);
            for i in 2..=n - 3 {
                t.one(i, n - 1, i + 1);
            }
        }
        L2 => {
            t.chain(1, n - 3);
            t.one(1, n - 1, n);
        }
        L1Lambda | L2Lambda => {
            t.chain(1, n - 3);
            t.one(n - 1, 1, n);
            t.put(1, n - 1, n, p("lambda"));
            if spec.family == L2Lambda {
                t.one(n - 1, n - 1, n);
            }
        }
        L3Lambda | L4Lambda | L5LambdaMu => {
            t.chain(1, n - 3);
            t.one(n - 1, 1, n);
            t.one(n - 1, 1, 2);
            match spec.family {
                L3Lambda => t.put(1, n - 1, n, p("lambda")),
                L4Lambda => t.put(n - 1, n - 1, n, p("lambda")),
                _ => {
                    t.put(1, n - 1, n, p("lambda"));
                    t.put(n - 1, n - 1, n, p("mu"));
                }
            }
        }
        L6 => {
            t.chain(1, n - 3);
            t.one(n - 1, 1, n);
            t.put(1, n - 1, n, -Scalar::one());
            t.one(n - 1, n - 1, 2);
            t.one(n - 1, n, 3);
        }
        L | N => {
            t.chain(1, n - 1);
            if spec.family == L {
                t.one(n + 1, 1, 2);
            }
            t.one(n + 1, 1, n + 2);
            t.put(1, n + 1, n, p("alpha3"));
            t.put(1, n + 1, n + 2, p("beta3"));
            t.put(n + 1, n + 1, n, p("alpha4"));
            t.put(n + 1, n + 1, n + 2, p("beta4"));
        }
        M => {
            t.chain(1, n - 2);
            t.one(n, 1, 2);
            t.one(n, 1, n + 1);
            t.one(1, n, n + 2);
            t.put(n, n, n + 1, p("alpha4"));
            t.put(n, n, n + 2, p("beta4"));
        }
        R => {
            t.chain(1, n - 2);
            t.one(n, 1, n + 1);
            t.put(1, n, n + 1, p("alpha3"));
            t.put(1, n, n + 2, p("beta3"));
            t.put(n, n, n + 1, p("alpha4"));
            t.put(n, n, n + 2, p("beta4"));
        }
        LStar => {
            t.chain(1, n - 1);
            t.one(1, n + 1, 2);
            t.one(1, n + 1, n + 2);
            for i in 2..n {
                t.one(i, n + 1, i + 1);
            }
            t.one(n + 1, n + 1, n);
        }
        NStar => {
            t.chain(1, n - 1);
            t.one(1, n + 1, n + 2);
            t.one(n + 1, n + 1, n);
        }
        P => {
            t.chain(1, n - 1);
            t.one(n + 1, 1, 2);
            t.one(n + 1, 1, n + 2);
            t.one(1, n + 1, n + 3);
            t.put(n + 1, n + 1, n, p("alpha4"));
            t.put(n + 1, n + 1, n + 2, p("beta4"));
            t.put(n + 1, n + 1, n + 3, p("gamma4"));
        }
        Q => {
            t.chain(1, n - 1);
            t.one(n + 1, 1, n + 2);
            t.put(1, n + 1, n + 2, p("beta3"));
            t.put(1, n + 1, n + 3, p("gamma3"));
            t.put(n + 1, n + 1, n, p("alpha4"));
            t.put(n + 1, n + 1, n + 2, p("beta4"));
            t.put(n + 1, n + 1, n + 3, p("gamma4"));
        }
        PStar | QStar => {
            t.chain(1, n - 2);
            if spec.family == PStar {
                t.one(n, 1, 2);
            }
            t.one(n, 1, n + 1);
            t.one(1, n, n + 2);
            t.one(n, n, n + 3);
        }
        Ext4F1 | Ext4F2 => {
            t.chain(1, n - 2);
            t.one(n - 1, 1, n + 2);
            if spec.family == Ext4F1 {
                t.one(n, 1, 2);
            }
            t.one(n, 1, n + 1);
            t.one(1, n, n + 3);
            t.one(n, n, n + 4);
        }
    }
}
