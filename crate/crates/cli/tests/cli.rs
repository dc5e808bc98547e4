use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

use leibniz_cli::files::{AlgebraFile, BracketRecord, CocycleFile, CocycleRecord, MatrixFile};
use leibniz_cli::{run, EXIT_BAD_INPUT, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};
use leibniz_core::catalog::{make, sample_grid, Family, FamilySpec};
use leibniz_core::linalg::{scalar, Matrix};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn leibniz(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("leibniz").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn json(r: &Run) -> Value {
    serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn family_file(dir: &TempDir, name: &str, family: &str, n: &str) -> PathBuf {
    let r = leibniz(&["catalog", "make", family, "--n", n]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    write(dir, name, &r.out)
}

fn cocycle_file(
    dir: &TempDir,
    name: &str,
    dim: usize,
    entries: &[(usize, usize, usize, i64)],
) -> PathBuf {
    let k = entries.iter().map(|e| e.0).max().unwrap_or(1);
    let f = CocycleFile {
        dim,
        k,
        entries: entries
            .iter()
            .map(|&(component, i, j, c)| CocycleRecord {
                component,
                i,
                j,
                c: c.to_string(),
            })
            .collect(),
    };
    write(dir, name, &f.to_json())
}

#[test]
fn catalog_make_nf4_has_three_records() {
    let r = leibniz(&["catalog", "make", "NF", "--n", "4"]);
    assert_eq!(r.code, EXIT_OK);
    let v = json(&r);
    assert_eq!(v["dim"], 4);
    assert_eq!(v["brackets"].as_array().unwrap().len(), 3);
}

#[test]
fn cohomology_of_nf5() {
    let r = leibniz(&[
        "--format",
        "json",
        "cohomology",
        "--family",
        "NF",
        "--n",
        "5",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = json(&r);
    assert_eq!(
        (
            v["dims"]["z"].as_u64(),
            v["dims"]["b"].as_u64(),
            v["dims"]["h"].as_u64()
        ),
        (Some(5), Some(4), Some(1))
    );
    assert_eq!(v["representatives"].as_array().unwrap().len(), 1);

    let text = leibniz(&["cohomology", "--family", "NF", "--n", "5", "-k", "2"]);
    assert!(text.out.contains("= (10, 8, 2)"), "{}", text.out);
}

#[test]
fn reproduce_high_dim_extensions_split() {
    let r = leibniz(&["reproduce", "4.10", "--n", "6", "--k", "5"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    let samples: Vec<&str> = r.out.lines().filter(|l| l.contains(" sample ")).collect();
    assert_eq!(samples.len(), 200);
    assert!(samples.iter().all(|l| l.ends_with("split: true")));
    assert!(r.out.contains("overall: PASS"));
}

#[test]
fn every_reproduction_passes() {
    for id in leibniz_cli::reproduce::IDS {
        let r = leibniz(&["--format", "json", "reproduce", id, "--samples", "8"]);
        let v = json(&r);
        assert_eq!(r.code, EXIT_OK, "{id}: {}", r.out);
        assert_eq!(v["pass"], true, "{id}");
        assert!(!v["claim"].as_str().unwrap().is_empty());
        assert!(v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["pass"] == true));
    }
}

#[test]
fn reproduce_is_deterministic() {
    let a = leibniz(&["reproduce", "4.4", "--seed", "9"]);
    let b = leibniz(&["reproduce", "4.4", "--seed", "9"]);
    assert_eq!(a.out, b.out);
    assert_eq!(a.code, EXIT_OK);
}

#[test]
fn reproduce_rejects_bad_arguments() {
    assert_eq!(leibniz(&["reproduce", "9.9"]).code, EXIT_USAGE);
    assert_eq!(leibniz(&["reproduce", "4.10", "--k", "4"]).code, EXIT_USAGE);
    assert_eq!(leibniz(&["reproduce", "4.2", "--n", "3"]).code, EXIT_USAGE);
}

#[test]
fn catalog_files_round_trip() {
    let dir = TempDir::new().unwrap();
    for spec in sample_grid(6).iter().step_by(7) {
        let values: Vec<String> = spec.values().iter().map(|v| v.to_string()).collect();
        let mut args = vec!["catalog", "make", spec.family.id()];
        let n = spec.n.to_string();
        args.extend(["--n", &n]);
        let joined = values.join(",");
        if !values.is_empty() {
            args.extend(["--params", &joined]);
        }
        let r = leibniz(&args);
        assert_eq!(r.code, EXIT_OK, "{spec}: {}", r.err);
        let path = write(&dir, "a.json", &r.out);
        let back = AlgebraFile::read(&path).unwrap();
        assert_eq!(back.to_json(), r.out, "{spec}");
        assert_eq!(
            back.to_algebra().unwrap().nonzero_constants(),
            make(spec).unwrap().nonzero_constants(),
            "{spec}"
        );
    }
}

#[test]
fn catalog_params_named_and_positional() {
    let a = leibniz(&[
        "catalog",
        "make",
        "L5lambdamu",
        "--n",
        "7",
        "--params",
        "2,4",
    ]);
    let b = leibniz(&[
        "catalog",
        "make",
        "L5λμ",
        "--n",
        "7",
        "--params",
        "lambda=2,mu=4",
    ]);
    assert_eq!(a.code, EXIT_OK);
    assert_eq!(a.out, b.out);
    assert_eq!(json(&a)["params"]["mu"], "4");
    // outside the joint domain, unknown names, wrong arity, unknown family
    assert_eq!(
        leibniz(&[
            "catalog",
            "make",
            "L5lambdamu",
            "--n",
            "7",
            "--params",
            "2,1"
        ])
        .code,
        EXIT_USAGE
    );
    assert_eq!(
        leibniz(&["catalog", "make", "F3", "--n", "5", "--params", "beta=1"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        leibniz(&["catalog", "make", "M", "--n", "5", "--params", "1"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        leibniz(&["catalog", "make", "Z9", "--n", "5"]).code,
        EXIT_USAGE
    );
    assert_eq!(
        leibniz(&["catalog", "make", "L6", "--n", "6"]).code,
        EXIT_USAGE
    );
    let neg = leibniz(&[
        "catalog", "make", "F1param", "--n", "5", "--params", "-1/2,3,1",
    ]);
    assert_eq!(neg.code, EXIT_OK, "{}", neg.err);
}

#[test]
fn catalog_list_covers_all_families() {
    let r = leibniz(&["--format", "json", "catalog", "list"]);
    let v = json(&r);
    assert_eq!(v.as_array().unwrap().len(), Family::all().len());
    let text = leibniz(&["catalog", "list"]);
    assert!(text.out.lines().any(|l| l.starts_with("NF")));
}

#[test]
fn validate_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = family_file(&dir, "nf.json", "NF", "5");
    assert_eq!(leibniz(&["validate", s(&good)]).code, EXIT_OK);

    // [e1, e2] = e3 breaks the identity at (e1, e1, e1)
    let mut f = AlgebraFile::read(&good).unwrap();
    f.brackets.push(BracketRecord {
        i: 1,
        j: 2,
        k: 3,
        c: "1".into(),
    });
    let bad = write(&dir, "bad.json", &f.to_json());
    let r = leibniz(&["--format", "json", "validate", s(&bad)]);
    assert_eq!(r.code, EXIT_CHECK_FAILED);
    assert_eq!(json(&r)["leibniz"], false);
    // commands needing a Leibniz algebra reject it as bad input
    assert_eq!(leibniz(&["invariants", s(&bad)]).code, EXIT_BAD_INPUT);

    let malformed = write(&dir, "m.json", "{\"dim\": 2, \"brackets\": [");
    assert_eq!(leibniz(&["validate", s(&malformed)]).code, EXIT_BAD_INPUT);
    let dup = write(
        &dir,
        "d.json",
        r#"{"dim": 2, "brackets": [{"i":1,"j":1,"k":2,"c":"1"},{"i":1,"j":1,"k":2,"c":"3"}]}"#,
    );
    let r = leibniz(&["validate", s(&dup)]);
    assert_eq!(r.code, EXIT_BAD_INPUT);
    assert!(r.err.contains("twice"));
    let range = write(
        &dir,
        "r.json",
        r#"{"dim": 2, "brackets": [{"i":1,"j":1,"k":3,"c":"1"}]}"#,
    );
    assert_eq!(leibniz(&["validate", s(&range)]).code, EXIT_BAD_INPUT);
    let float = write(
        &dir,
        "f.json",
        r#"{"dim": 2, "brackets": [{"i":1,"j":1,"k":2,"c":"0.5"}]}"#,
    );
    assert_eq!(leibniz(&["validate", s(&float)]).code, EXIT_BAD_INPUT);
    let missing = dir.path().join("nope.json");
    assert_eq!(leibniz(&["validate", s(&missing)]).code, EXIT_BAD_INPUT);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(leibniz(&[]).code, EXIT_USAGE);
    assert_eq!(leibniz(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(leibniz(&["cohomology"]).code, EXIT_USAGE);
    assert_eq!(
        leibniz(&["--format", "xml", "catalog", "list"]).code,
        EXIT_USAGE
    );
    let help = leibniz(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.out.contains("reproduce"));
}

#[test]
fn invariants_report_fingerprint() {
    let dir = TempDir::new().unwrap();
    let f = family_file(&dir, "f1.json", "F1", "6");
    let v = json(&leibniz(&["--format", "json", "invariants", s(&f)]));
    assert_eq!(v["charseq"], serde_json::json!([5, 1]));
    assert_eq!(v["shape"], "filiform");
    assert_eq!(v["nilindex"], 6);
}

#[test]
fn extend_nf4_by_nonzero_class_gives_nf5() {
    let dir = TempDir::new().unwrap();
    let nf4 = family_file(&dir, "nf4.json", "NF", "4");
    let nf5 = family_file(&dir, "nf5.json", "NF", "5");
    let theta = cocycle_file(&dir, "t.json", 4, &[(1, 4, 1, 1)]);
    let r = leibniz(&["extend", s(&nf4), "--cocycle", s(&theta)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let ext = write(&dir, "ext.json", &r.out);
    assert_eq!(AlgebraFile::read(&ext).unwrap().to_json(), r.out);
    let found = leibniz(&["iso", "search", s(&ext), s(&nf5)]);
    assert_eq!(found.code, EXIT_OK, "{}", found.out);

    let out = dir.path().join("written.json");
    let w = leibniz(&["extend", s(&nf4), "--cocycle", s(&theta), "-o", s(&out)]);
    assert_eq!((w.code, w.out.as_str()), (EXIT_OK, ""));
    assert_eq!(fs::read_to_string(&out).unwrap(), r.out);
}

#[test]
fn extend_rejects_bad_cocycles() {
    let dir = TempDir::new().unwrap();
    let nf4 = family_file(&dir, "nf4.json", "NF", "4");
    // θ(e1, e2) alone violates the cocycle condition on NF_4
    let bad = cocycle_file(&dir, "bad.json", 4, &[(1, 1, 2, 1)]);
    assert_eq!(
        leibniz(&["extend", s(&nf4), "--cocycle", s(&bad)]).code,
        EXIT_BAD_INPUT
    );
    let wrong_dim = cocycle_file(&dir, "w.json", 3, &[(1, 3, 1, 1)]);
    assert_eq!(
        leibniz(&["extend", s(&nf4), "--cocycle", s(&wrong_dim)]).code,
        EXIT_BAD_INPUT
    );
    let two = cocycle_file(&dir, "two.json", 4, &[(1, 4, 1, 1), (2, 2, 1, 1)]);
    assert_eq!(
        leibniz(&["extend", s(&nf4), "--cocycle", s(&two), "-k", "3"]).code,
        EXIT_USAGE
    );
    let r = leibniz(&["extend", s(&nf4), "--cocycle", s(&two), "-k", "1"]);
    assert_eq!(json(&r)["dim"], 5);
}

#[test]
fn split_check_reports_split_and_witness() {
    let dir = TempDir::new().unwrap();
    let nf4 = family_file(&dir, "nf4.json", "NF", "4");
    // second component is the coboundary θ(e1, e1) = [e1, e1]^*
    let theta = cocycle_file(&dir, "t.json", 4, &[(1, 4, 1, 1), (2, 1, 1, 1)]);
    let r = leibniz(&[
        "--format",
        "json",
        "split-check",
        s(&nf4),
        "--cocycle",
        s(&theta),
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    let v = json(&r);
    assert_eq!(v["split"], true);
    assert_eq!(v["class_rank"], 1);
    assert_eq!(v["abelian_summand_dim"], 1);
    assert_eq!(v["v_central"], true);

    // the witness maps the reduced algebra onto the extension
    let reduced = write(
        &dir,
        "red.json",
        &serde_json::to_string(&v["reduced_algebra"]).unwrap(),
    );
    let witness = write(
        &dir,
        "w.json",
        &serde_json::to_string(&v["witness"]).unwrap(),
    );
    let ext = write(
        &dir,
        "ext.json",
        &leibniz(&["extend", s(&nf4), "--cocycle", s(&theta)]).out,
    );
    assert_eq!(
        leibniz(&["iso", "verify", s(&reduced), s(&ext), s(&witness)]).code,
        EXIT_OK
    );

    let text = leibniz(&["split-check", s(&nf4), "--cocycle", s(&theta)]);
    assert!(text.out.contains("split: true"));
}

#[test]
fn iso_verify_and_search() {
    let dir = TempDir::new().unwrap();
    let f1 = family_file(&dir, "f1.json", "F1", "5");
    let nf = family_file(&dir, "nf.json", "NF", "5");
    let id = write(
        &dir,
        "id.json",
        &MatrixFile::from_matrix(&Matrix::identity(5)).to_json(),
    );
    assert_eq!(
        leibniz(&["iso", "verify", s(&f1), s(&f1), s(&id)]).code,
        EXIT_OK
    );
    assert_eq!(
        leibniz(&["iso", "verify", s(&f1), s(&nf), s(&id)]).code,
        EXIT_CHECK_FAILED
    );
    let small = write(
        &dir,
        "s.json",
        &MatrixFile::from_matrix(&Matrix::identity(4)).to_json(),
    );
    assert_eq!(
        leibniz(&["iso", "verify", s(&f1), s(&f1), s(&small)]).code,
        EXIT_BAD_INPUT
    );

    // a scaled copy of F1_5 is found; NF_5 is told apart
    let mut p = Matrix::identity(5);
    p.set(0, 0, scalar(2));
    p.set(1, 1, scalar(2));
    p.set(2, 2, scalar(4));
    p.set(3, 3, scalar(8));
    p.set(4, 4, scalar(16));
    let a = make(&FamilySpec::new(Family::F1, 5))
        .unwrap()
        .change_basis(&p)
        .unwrap();
    let scaled = write(
        &dir,
        "scaled.json",
        &AlgebraFile::from_algebra(&a).to_json(),
    );
    let r = leibniz(&["--format", "json", "iso", "search", s(&scaled), s(&f1)]);
    assert_eq!(r.code, EXIT_OK, "{}", r.out);
    let m = write(
        &dir,
        "m.json",
        &serde_json::to_string(&json(&r)["matrix"]).unwrap(),
    );
    assert_eq!(
        leibniz(&["iso", "verify", s(&scaled), s(&f1), s(&m)]).code,
        EXIT_OK
    );
    let r = leibniz(&["--format", "json", "iso", "search", s(&f1), s(&nf)]);
    assert_eq!(r.code, EXIT_CHECK_FAILED);
    assert_eq!(json(&r)["outcome"], "distinguished");
}

fn record() -> impl Strategy<Value = (usize, usize, usize, i64, i64)> {
    (1usize..=4, 1usize..=4, 1usize..=4, -6i64..=6, 1i64..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_files_round_trip(records in proptest::collection::btree_map((1usize..=4, 1usize..=4, 1usize..=4), record(), 0..10)) {
        let mut f = AlgebraFile {
            dim: 4,
            name: Some("random".into()),
            params: Default::default(),
            brackets: records
                .into_iter()
                .map(|((i, j, k), (_, _, _, num, den))| BracketRecord { i, j, k, c: format!("{}/{}", num * 2, den * 2) })
                .collect(),
        };
        f.canonicalize();
        let text = f.to_json();
        let back: AlgebraFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_json(), text.clone());
        // through the algebra and back
        let again = AlgebraFile::from_algebra(&back.to_algebra().unwrap());
        prop_assert_eq!(again.to_json(), text);
    }
}
