//! Command-line front end: argument parsing, dispatch and output.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage error, 3 bad input file.

pub mod files;
pub mod reproduce;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use leibniz_core::algebra::Algebra;
use leibniz_core::catalog::{list_families, make, Family, FamilySpec};
use leibniz_core::cohomology::{BilinearForm, CochainSpace, Cocycle, Cohomology};
use leibniz_core::extension::{
    central_extension, centrality_report, reduce_extension, ExtensionSpec,
};
use leibniz_core::isomorphism::{
    fingerprint, search_isomorphism_with, verify_isomorphism, IsoCheck, SearchOptions,
    SearchOutcome, DEFAULT_BUDGET, DEFAULT_SEED,
};
use leibniz_core::linalg::{format_scalar, parse_scalar, Matrix, Scalar};

use files::{AlgebraFile, CocycleFile, FileError, MatrixFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BAD_INPUT: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "leibniz",
    version,
    about = "Exact computations with nilpotent Leibniz algebras"
)]
struct Cli {
    /// Output format. Commands that produce a file default to json, the others to text.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Leibniz identity on every basis triple.
    Validate { file: PathBuf },
    /// Isomorphism invariants of a nilpotent algebra.
    Invariants { file: PathBuf },
    /// Second cohomology with trivial coefficients: dimensions and bases.
    Cohomology {
        /// Algebra file; alternatively use --family and --n.
        file: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        /// Dimension of the coefficient space.
        #[arg(short, long, default_value_t = 1)]
        k: usize,
    },
    /// Build the central extension by a cocycle and emit it as an algebra file.
    Extend {
        file: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        /// Use only the first k components of the cocycle.
        #[arg(short, long)]
        k: Option<usize>,
        /// Write the result here instead of standard output.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether a central extension is split and exhibit the splitting.
    SplitCheck {
        file: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Verify or search for isomorphisms.
    Iso {
        #[command(subcommand)]
        command: IsoCommand,
    },
    /// The built-in families of algebras.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Rerun a classification result and print claim, computed values and verdicts.
    Reproduce {
        /// One of 3.1, 3.2, 4.1, ..., 4.10.
        id: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long)]
        k: Option<usize>,
        #[arg(long, default_value_t = reproduce::Options::default().seed)]
        seed: u64,
        /// Number of random samples, where the experiment draws any.
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum IsoCommand {
    /// Check that the matrix (column j = image of e_j) maps A isomorphically onto B.
    Verify {
        a: PathBuf,
        b: PathBuf,
        matrix: PathBuf,
    },
    /// Look for an isomorphism A → B.
    Search {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// List the families with their parameters.
    List,
    /// Build one member of a family.
    Make {
        family: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated values in table order ("1,-2,1/2") or named ("alpha3=1,beta4=-2").
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, clap::Args)]
struct FamilyArgs {
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    #[arg(long, requires = "family")]
    n: Option<usize>,
    #[arg(long, requires = "family", allow_hyphen_values = true)]
    params: Option<String>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    BadInput(String),
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::BadInput(e.to_string())
    }
}

struct Output {
    text: String,
    json: Value,
    /// Exact JSON text for file outputs, so key order matches the file format.
    raw_json: Option<String>,
    default: Format,
    code: i32,
}

impl Output {
    fn report(text: String, json: Value, code: i32) -> Self {
        Output {
            text,
            json,
            raw_json: None,
            default: Format::Text,
            code,
        }
    }

    fn file(text: String, json_text: String) -> Self {
        Output {
            text,
            json: Value::Null,
            raw_json: Some(json_text),
            default: Format::Json,
            code: EXIT_OK,
        }
    }

    fn render(&self, format: Option<Format>) -> String {
        if self.text.is_empty() && self.json.is_null() && self.raw_json.is_none() {
            return String::new();
        }
        match format.unwrap_or(self.default) {
            Format::Text => self.text.clone(),
            Format::Json if self.raw_json.is_some() => self.raw_json.clone().expect("checked"),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command) {
        Ok(output) => {
            let _ = write!(out, "{}", output.render(cli.format));
            output.code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::BadInput(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_BAD_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Invariants { file } => invariants(&file),
        Command::Cohomology { file, family, k } => cohomology(file.as_deref(), &family, k),
        Command::Extend {
            file,
            cocycle,
            k,
            output,
        } => extend(&file, &cocycle, k, output.as_deref()),
        Command::SplitCheck { file, cocycle } => split_check(&file, &cocycle),
        Command::Iso { command } => match command {
            IsoCommand::Verify { a, b, matrix } => iso_verify(&a, &b, &matrix),
            IsoCommand::Search { a, b, budget, seed } => iso_search(&a, &b, budget, seed),
        },
        Command::Catalog { command } => match command {
            CatalogCommand::List => Ok(catalog_list()),
            CatalogCommand::Make {
                family,
                n,
                params,
                output,
            } => catalog_make(&family, n, params.as_deref(), output.as_deref()),
        },
        Command::Reproduce {
            id,
            n,
            k,
            seed,
            samples,
        } => {
            let opts = reproduce::Options {
                n,
                k,
                seed,
                samples,
            };
            let report = reproduce::reproduce(&id, &opts).map_err(|e| Failure::Usage(e.0))?;
            let code = if report.pass {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            };
            let json = serde_json::to_value(&report).expect("report serializes");
            Ok(Output::report(report.to_text(), json, code))
        }
    }
}

/// Reads an algebra file without requiring the Leibniz identity.
fn read_raw(path: &Path) -> Result<Algebra, Failure> {
    Ok(AlgebraFile::read(path)?.to_algebra()?)
}

/// Reads an algebra file and requires the Leibniz identity.
fn read_algebra(path: &Path) -> Result<Algebra, Failure> {
    let a = read_raw(path)?;
    let violations = a.check_leibniz();
    if let Some(first) = violations.first() {
        return Err(Failure::BadInput(format!(
            "{}: not a Leibniz algebra ({} failing triples, first {first})",
            path.display(),
            violations.len()
        )));
    }
    Ok(a)
}

fn label(a: &Algebra, path: &Path) -> String {
    a.name()
        .map_or_else(|| path.display().to_string(), str::to_string)
}

fn validate(path: &Path) -> Result<Output, Failure> {
    let a = read_raw(path)?;
    let violations = a.check_leibniz();
    let name = label(&a, path);
    let json = json!({
        "algebra": name,
        "dim": a.dim(),
        "leibniz": violations.is_empty(),
        "violations": violations.iter().map(|v| json!({
            "i": v.i + 1, "j": v.j + 1, "k": v.k + 1,
            "defect": v.defect.iter().map(format_scalar).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    let (text, code) = match violations.first() {
        None => (
            format!("{name}: Leibniz identity holds (dim {})\n", a.dim()),
            EXIT_OK,
        ),
        Some(first) => (
            format!(
                "{name}: Leibniz identity fails on {} basis triples, first {first}\n",
                violations.len()
            ),
            EXIT_CHECK_FAILED,
        ),
    };
    Ok(Output::report(text, json, code))
}

fn invariants(path: &Path) -> Result<Output, Failure> {
    let a = read_algebra(path)?;
    let fp = fingerprint(&a).map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))?;
    let name = label(&a, path);
    let mut json = serde_json::to_value(&fp).expect("fingerprint serializes");
    json["algebra"] = json!(name);
    let text = format!(
        "{name}\n  dim {}\n  lower central series dims {:?}\n  nilindex {}\n  shape {}\n  center dim {}\n  characteristic sequence {} ({})\n  left/right annihilator dims {}/{}\n  squares span dim {}\n  derivations dim {}\n  H² dim {}\n",
        fp.dim,
        fp.lcs_dims,
        fp.nilindex,
        fp.shape,
        fp.center_dim,
        fp.charseq,
        fp.charseq_certainty.label(),
        fp.left_annihilator_dim,
        fp.right_annihilator_dim,
        fp.squares_dim,
        fp.derivations_dim,
        fp.h2_dim
    );
    Ok(Output::report(text, json, EXIT_OK))
}

fn form_json(form: &BilinearForm) -> Value {
    Value::Array(
        form.support()
            .into_iter()
            .map(|(p, q, c)| json!({"i": p + 1, "j": q + 1, "c": format_scalar(&c)}))
            .collect(),
    )
}

fn space_json(space: &CochainSpace) -> Value {
    Value::Array(space.basis().iter().map(form_json).collect())
}

fn space_text(title: &str, space: &CochainSpace) -> String {
    let mut s = format!("{title}:\n");
    for form in space.basis() {
        s += &format!("  {form}\n");
    }
    s
}

fn parse_family_spec(family: &str, n: usize, params: Option<&str>) -> Result<FamilySpec, Failure> {
    let f: Family = family.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
    let items: Vec<&str> = params
        .map(|p| {
            p.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect()
        })
        .unwrap_or_default();
    let value = |s: &str| -> Result<Scalar, Failure> {
        parse_scalar(s).map_err(|_| Failure::Usage(format!("{s:?} is not a rational number")))
    };
    let named = items.iter().any(|s| s.contains('='));
    let spec = if named {
        let mut spec = FamilySpec::new(f, n);
        for item in &items {
            let (name, v) = item
                .split_once('=')
                .ok_or_else(|| Failure::Usage("mix of named and positional parameters".into()))?;
            spec = spec.with(name.trim(), value(v)?);
        }
        spec
    } else if items.is_empty() {
        FamilySpec::new(f, n)
    } else {
        let values = items
            .iter()
            .map(|s| value(s))
            .collect::<Result<Vec<_>, _>>()?;
        FamilySpec::from_values(f, n, &values).map_err(|e| Failure::Usage(e.to_string()))?
    };
    spec.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(spec)
}

fn cohomology(file: Option<&Path>, fam: &FamilyArgs, k: usize) -> Result<Output, Failure> {
    if k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    let (a, name) = match (file, &fam.family) {
        (Some(path), _) => {
            let a = read_algebra(path)?;
            let name = label(&a, path);
            (a, name)
        }
        (None, Some(family)) => {
            let n = fam
                .n
                .ok_or_else(|| Failure::Usage("--family needs --n".into()))?;
            let spec = parse_family_spec(family, n, fam.params.as_deref())?;
            let a = make(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
            (a, spec.to_string())
        }
        (None, None) => {
            return Err(Failure::Usage(
                "give an algebra file or --family and --n".into(),
            ))
        }
    };
    let coh = Cohomology::compute(&a);
    let dims = (coh.dim_z() * k, coh.dim_b() * k, coh.dim_h() * k);
    let json = json!({
        "algebra": name,
        "k": k,
        "dims": {"z": dims.0, "b": dims.1, "h": dims.2},
        "cocycles": space_json(&coh.cocycles()),
        "coboundaries": space_json(&coh.coboundaries()),
        "representatives": space_json(coh.representatives()),
    });
    let mut text = format!(
        "{name}, k = {k}: (dim Z², dim B², dim H²) = ({}, {}, {})\nbases below are for one coefficient direction\n",
        dims.0, dims.1, dims.2
    );
    text += &space_text("Z² basis", &coh.cocycles());
    text += &space_text("B² basis", &coh.coboundaries());
    text += &space_text("H² representatives", coh.representatives());
    Ok(Output::report(text, json, EXIT_OK))
}

fn read_spec(file: &Path, cocycle: &Path, k: Option<usize>) -> Result<ExtensionSpec, Failure> {
    let a = read_algebra(file)?;
    let theta = CocycleFile::read(cocycle)?.to_cocycle()?;
    let theta = match k {
        None => theta,
        Some(0) => return Err(Failure::Usage("k must be at least 1".into())),
        Some(k) if k > theta.k() => {
            return Err(Failure::Usage(format!(
                "-k {k} exceeds the {} components in {}",
                theta.k(),
                cocycle.display()
            )))
        }
        Some(k) => Cocycle::new_unchecked(theta.dim(), theta.into_components()[..k].to_vec()),
    };
    if theta.dim() != a.dim() {
        return Err(Failure::BadInput(format!(
            "{} is on dimension {} but the algebra has dimension {}",
            cocycle.display(),
            theta.dim(),
            a.dim()
        )));
    }
    let checked = Cocycle::new(&a, theta.into_components())
        .map_err(|e| Failure::BadInput(format!("{}: {e}", cocycle.display())))?;
    ExtensionSpec::new(a, checked).map_err(|e| Failure::BadInput(e.to_string()))
}

fn emit_algebra(file: AlgebraFile, output: Option<&Path>) -> Result<Output, Failure> {
    let algebra = file.to_algebra()?;
    let text = format!("{algebra}\n");
    let json_text = file.to_json();
    if let Some(path) = output {
        std::fs::write(path, &json_text)
            .map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))?;
        return Ok(Output::report(String::new(), Value::Null, EXIT_OK));
    }
    Ok(Output::file(text, json_text))
}

fn extend(
    file: &Path,
    cocycle: &Path,
    k: Option<usize>,
    output: Option<&Path>,
) -> Result<Output, Failure> {
    let spec = read_spec(file, cocycle, k)?;
    let ext = central_extension(&spec).map_err(|e| Failure::BadInput(e.to_string()))?;
    emit_algebra(AlgebraFile::from_algebra(&ext), output)
}

fn matrix_text(m: &Matrix) -> String {
    (0..m.rows())
        .map(|r| {
            let row: Vec<String> = m.row(r).iter().map(format_scalar).collect();
            format!("  [{}]\n", row.join(", "))
        })
        .collect()
}

fn split_check(file: &Path, cocycle: &Path) -> Result<Output, Failure> {
    let spec = read_spec(file, cocycle, None)?;
    let r = reduce_extension(&spec).map_err(|e| Failure::BadInput(e.to_string()))?;
    let centrality = centrality_report(&spec).map_err(|e| Failure::BadInput(e.to_string()))?;
    let reduced = AlgebraFile::from_algebra(&r.reduced_algebra);
    let json = json!({
        "k": spec.k(),
        "class_rank": r.class_rank,
        "abelian_summand_dim": r.abelian_summand_dim,
        "split": r.is_split(),
        "v_central": centrality.v_central,
        "v_equals_center": centrality.v_equals_center,
        "adapted_v_basis": serde_json::to_value(MatrixFile::from_matrix(&r.adapted_v_basis)).expect("serializes"),
        "reduced_cocycle": serde_json::to_value(CocycleFile::from_cocycle(&r.reduced_cocycle)).expect("serializes"),
        "reduced_algebra": serde_json::to_value(&reduced).expect("serializes"),
        "witness": serde_json::to_value(MatrixFile::from_matrix(&r.witness)).expect("serializes"),
    });
    let text = format!(
        "k = {}, class rank d = {}, abelian summand dim = {}\nsplit: {}\nV central: {}, V equals the center: {}\nreduced algebra (L_θ' ⊕ C^{}):\n{}\nwitness (reduced algebra → L_θ, column j = image of e_j):\n{}",
        spec.k(),
        r.class_rank,
        r.abelian_summand_dim,
        r.is_split(),
        centrality.v_central,
        centrality.v_equals_center,
        r.abelian_summand_dim,
        r.reduced_algebra,
        matrix_text(&r.witness)
    );
    Ok(Output::report(text, json, EXIT_OK))
}

fn iso_verify(a: &Path, b: &Path, matrix: &Path) -> Result<Output, Failure> {
    let alg_a = read_algebra(a)?;
    let alg_b = read_algebra(b)?;
    let m = MatrixFile::read(matrix)?.to_matrix()?;
    let check =
        verify_isomorphism(&alg_a, &alg_b, &m).map_err(|e| Failure::BadInput(e.to_string()))?;
    let mut json = json!({"isomorphism": check.holds(), "detail": check.to_string()});
    if let IsoCheck::FailsAt { i, j, lhs, rhs } = &check {
        json["pair"] = json!([i + 1, j + 1]);
        json["lhs"] = json!(lhs.iter().map(format_scalar).collect::<Vec<_>>());
        json["rhs"] = json!(rhs.iter().map(format_scalar).collect::<Vec<_>>());
    }
    let code = if check.holds() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    };
    Ok(Output::report(format!("{check}\n"), json, code))
}

fn iso_search(a: &Path, b: &Path, budget: usize, seed: u64) -> Result<Output, Failure> {
    let alg_a = read_algebra(a)?;
    let alg_b = read_algebra(b)?;
    let outcome = search_isomorphism_with(&alg_a, &alg_b, &SearchOptions { budget, seed })
        .map_err(|e| Failure::BadInput(e.to_string()))?;
    Ok(match outcome {
        SearchOutcome::Found(m) => Output::report(
            format!("isomorphic; map (column j = image of e_j):\n{}", matrix_text(&m)),
            json!({"outcome": "found", "matrix": serde_json::to_value(MatrixFile::from_matrix(&m)).expect("serializes")}),
            EXIT_OK,
        ),
        SearchOutcome::Distinguished(field) => Output::report(
            format!("not isomorphic: {field} differs\n"),
            json!({"outcome": "distinguished", "invariant": field}),
            EXIT_CHECK_FAILED,
        ),
        SearchOutcome::Undetermined { tried } => Output::report(
            format!("undetermined: no isomorphism among {tried} candidates and no separating invariant\n"),
            json!({"outcome": "undetermined", "tried": tried}),
            EXIT_CHECK_FAILED,
        ),
    })
}

fn catalog_list() -> Output {
    let infos = list_families();
    let mut text = String::new();
    let mut rows = Vec::new();
    for info in &infos {
        let params: Vec<String> = info
            .params
            .iter()
            .map(|p| {
                format!(
                    "{}{} ∈ {}",
                    p.name,
                    if p.optional { "?" } else { "" },
                    p.domain
                )
            })
            .collect();
        let range = info.family.dim_range();
        text += &format!(
            "{:8} n {:8} dim n+{}  {}{}\n",
            info.id,
            range,
            info.dim_offset,
            info.description,
            if params.is_empty() {
                String::new()
            } else {
                format!(" [{}]", params.join(", "))
            }
        );
        rows.push(json!({
            "id": info.id,
            "min_n": info.min_n,
            "max_n": info.max_n,
            "dim_offset": info.dim_offset,
            "params": info.params.iter().map(|p| json!({
                "name": p.name, "domain": p.domain.to_string(), "optional": p.optional,
            })).collect::<Vec<_>>(),
            "joint": info.joint.as_ref().map(|j| j.iter().map(|v| v.iter().map(format_scalar).collect::<Vec<_>>()).collect::<Vec<_>>()),
            "description": info.description,
        }));
    }
    Output::report(text, Value::Array(rows), EXIT_OK)
}

fn catalog_make(
    family: &str,
    n: usize,
    params: Option<&str>,
    output: Option<&Path>,
) -> Result<Output, Failure> {
    let spec = parse_family_spec(family, n, params)?;
    let a = make(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    emit_algebra(
        AlgebraFile::from_algebra(&a).with_params(&spec.params),
        output,
    )
}
