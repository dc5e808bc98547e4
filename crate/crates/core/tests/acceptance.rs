//! Acceptance suite. Prints one PASS/FAIL line per criterion, then the
//! details, and exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::thread;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use leibniz_core::algebra::{natural_gradation, Algebra};
use leibniz_core::catalog::witnesses::{
    exact_scaling_witness, float_scaling_residual, one_dim_extension, one_dim_witnesses,
};
use leibniz_core::catalog::{listed_extensions, make, sample_grid, Family, FamilySpec};
use leibniz_core::cohomology::{BilinearForm, Cocycle, Cohomology};
use leibniz_core::extension::{central_extension, reduce_extension, ExtensionSpec};
use leibniz_core::isomorphism::{fingerprint, verify_isomorphism, Comparison, Fingerprint};
use leibniz_core::linalg::{scalar, Scalar};

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

fn outcome(pass: bool, summary: impl Into<String>, details: Vec<String>) -> Outcome {
    Outcome {
        pass,
        summary: summary.into(),
        details,
    }
}

fn nf(n: usize) -> Algebra {
    make(&FamilySpec::new(Family::NullFiliform, n)).unwrap()
}

fn base(f: Family, n: usize) -> Algebra {
    make(&FamilySpec::new(f, n)).unwrap()
}

/// Random element of `Z²(L, C)` as an integer combination of a cocycle basis.
fn random_cocycle(coh: &Cohomology, n: usize, rng: &mut ChaCha8Rng) -> BilinearForm {
    let z = coh.cocycles();
    let coeffs: Vec<Scalar> = z
        .basis()
        .iter()
        .map(|_| scalar(rng.gen_range(-3..=3)))
        .collect();
    BilinearForm::linear_combination(n, coeffs.iter().zip(z.basis()))
}

fn elapsed(start: Instant) -> String {
    format!("{:.3} s", start.elapsed().as_secs_f64())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 2..=8 {
        let coh = Cohomology::compute(&nf(n));
        for k in 1..=3 {
            let got = (
                coh.cocycles().tensor(k).len(),
                coh.coboundaries().tensor(k).len(),
                coh.representatives().tensor(k).len(),
            );
            let want = (n * k, (n - 1) * k, k);
            if got != want {
                bad.push(format!("NF_{n}, k = {k}: got {got:?}, want {want:?}"));
            }
        }
    }
    let time = start.elapsed();
    let fast = time < Duration::from_secs(1);
    let mut details = bad.clone();
    details.push(format!("runtime {}", elapsed(start)));
    outcome(
        bad.is_empty() && fast,
        "NF_n (n = 2..8, k = 1..3): (dim Z, dim B, dim H) = (nk, (n-1)k, k)",
        details,
    )
}

fn criterion_2() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for f in [Family::F1, Family::F2] {
        for n in 5..=8 {
            let coh = Cohomology::compute(&base(f, n));
            let got = (coh.dim_z(), coh.dim_b(), coh.dim_h());
            let want = (n + 2, n - 2, 4);
            pass &= got == want;
            // supports of the representatives against θ(e2,e1), θ(en,e1), θ(e1,e2), θ(e2,e2)
            let supports: BTreeSet<Vec<(usize, usize)>> = coh
                .representatives()
                .basis()
                .iter()
                .map(|t| {
                    t.support()
                        .into_iter()
                        .map(|(p, q, _)| (p + 1, q + 1))
                        .collect()
                })
                .collect();
            let listed: BTreeSet<Vec<(usize, usize)>> = [(2, 1), (n, 1), (1, 2), (2, 2)]
                .iter()
                .map(|&pq| vec![pq])
                .collect();
            let patterns = if supports == listed {
                "match the listed representatives".to_string()
            } else {
                format!("differ from the listed ones: {supports:?}")
            };
            details.push(format!(
                "{f}_{n}: (Z, B, H) = {got:?}, want {want:?}; H supports {patterns}"
            ));
        }
    }
    outcome(
        pass,
        "F_n^1, F_n^2 (n = 5..8): (dim Z, dim B, dim H) = (n+2, n-2, 4)",
        details,
    )
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut pass = true;
    let mut count = (0, 0);
    let mut details = Vec::new();
    for n in 3..=7 {
        let b = nf(n);
        let coh = Cohomology::compute(&b);
        let next = fingerprint(&nf(n + 1)).unwrap();
        let split = fingerprint(&b.with_abelian(1)).unwrap();
        let mut forms: Vec<BilinearForm> = coh.cocycles().basis().to_vec();
        forms.extend(coh.coboundaries().basis().iter().cloned());
        forms.extend((0..6).map(|_| random_cocycle(&coh, n, &mut rng)));
        for theta in forms {
            let nonzero = coh
                .class_of(&theta)
                .unwrap()
                .iter()
                .any(|c| *c != scalar(0));
            let spec =
                ExtensionSpec::new(b.clone(), Cocycle::new_unchecked(n, vec![theta])).unwrap();
            let fp = fingerprint(&central_extension(&spec).unwrap()).unwrap();
            let want = if nonzero { &next } else { &split };
            if fp.compare(want) != Comparison::Equal {
                pass = false;
                details.push(format!("NF_{n}: class nonzero = {nonzero}, got {fp}"));
            }
            if nonzero {
                count.0 += 1;
            } else {
                count.1 += 1;
            }
        }
    }
    let fast = start.elapsed() < Duration::from_secs(1);
    details.push(format!(
        "{} nonzero-class and {} zero-class extensions, runtime {}",
        count.0,
        count.1,
        elapsed(start)
    ));
    outcome(
        pass && fast,
        "extensions of NF_n (n = 3..7): nonzero class ~ NF_{n+1}, zero class ~ NF_n + C",
        details,
    )
}

/// Compares `fp` against each entry; returns the labels it matches.
fn matches(fp: &Fingerprint, list: &[(String, Fingerprint)]) -> Vec<String> {
    list.iter()
        .filter(|(_, g)| !fp.compare(g).is_distinguished())
        .map(|(l, _)| l.clone())
        .collect()
}

fn parallel_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(8);
    let chunk = items.len().div_ceil(workers).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<U>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    })
}

fn criterion_4() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    let values = [-1i64, 0, 1, 2];
    for n in [5, 6] {
        let listed: Vec<(Family, Vec<(String, Fingerprint)>)> = [Family::F1, Family::F2]
            .iter()
            .map(|&f| {
                let l = listed_extensions(f, n, 1)
                    .unwrap()
                    .into_iter()
                    .map(|c| (c.label, fingerprint(&c.algebra).unwrap()))
                    .collect();
                (f, l)
            })
            .collect();
        for (f, own) in &listed {
            // classes of the other family's list and NF_{n+1} lie outside
            let mut outside: Vec<(String, Fingerprint)> = listed
                .iter()
                .filter(|(g, _)| g != f)
                .flat_map(|(_, l)| l.iter().cloned())
                .collect();
            outside.push((format!("NF_{}", n + 1), fingerprint(&nf(n + 1)).unwrap()));
            let own_labels: BTreeSet<&String> = own.iter().map(|(l, _)| l).collect();
            outside.retain(|(l, _)| !own_labels.contains(l));
            // outside classes a listed class cannot be told apart from are ties, not failures
            let (outside, tied): (Vec<_>, Vec<_>) = outside
                .into_iter()
                .partition(|(_, g)| own.iter().all(|(_, h)| g.compare(h).is_distinguished()));
            if !tied.is_empty() {
                let labels: Vec<&String> = tied.iter().map(|(l, _)| l).collect();
                details.push(format!(
                    "{f}_{n}: outside classes tied with a listed one: {labels:?}"
                ));
            }

            let points: Vec<[i64; 4]> = (0..4)
                .map(|_| values)
                .multi_cartesian_product()
                .map(|v| [v[0], v[1], v[2], v[3]])
                .collect();
            let results = parallel_map(&points, |p| {
                let alpha = p.map(scalar);
                let ext = one_dim_extension(*f, n, &alpha).unwrap();
                let fp = fingerprint(&ext).unwrap();
                (matches(&fp, own), matches(&fp, &outside))
            });
            let mut unmatched = 0;
            let mut ambiguous = 0;
            for (p, (inside, out)) in points.iter().zip(&results) {
                if inside.is_empty() || !out.is_empty() {
                    unmatched += 1;
                    details.push(format!(
                        "{f}_{n} α = {p:?}: listed {inside:?}, outside {out:?}"
                    ));
                } else if inside.len() > 1 {
                    ambiguous += 1;
                }
            }
            pass &= unmatched == 0;
            details.push(format!(
                "{f}_{n}: {} extensions, {unmatched} without a listed match, {ambiguous} matching several listed entries",
                points.len()
            ));
            let ties: Vec<String> = own
                .iter()
                .tuple_combinations()
                .filter(|((_, a), (_, b))| !a.compare(b).is_distinguished())
                .map(|((la, _), (lb, _))| format!("{la} ~ {lb}"))
                .collect();
            details.push(format!("{f}_{n}: listed-class ties: {}", ties.join("; ")));

            let witnesses = one_dim_witnesses(*f, n).unwrap();
            let failed: Vec<String> = witnesses
                .iter()
                .filter(|w| !w.check().holds())
                .map(|w| w.name.clone())
                .collect();
            pass &= failed.is_empty();
            details.push(format!(
                "{f}_{n}: {} proof witnesses verified{}",
                witnesses.len() - failed.len(),
                if failed.is_empty() {
                    String::new()
                } else {
                    format!(", failed: {failed:?}")
                }
            ));
        }
    }
    let exact = exact_scaling_witness(5, &scalar(2)).unwrap();
    pass &= exact.check().holds();
    let residual = float_scaling_residual(5, &scalar(3)).unwrap();
    pass &= residual < 1e-9;
    details.push(format!(
        "root scaling: exact witness at A = 2 holds; non-exact float check at α3 = 3 residual {residual:.1e}"
    ));
    outcome(
        pass,
        "one-dim extensions of F_5, F_6 over {-1,0,1,2}^4 match listed classes; witnesses verify",
        details,
    )
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x4_10);
    let mut pass = true;
    let mut details = Vec::new();
    for f in [Family::F1, Family::F2] {
        let b = base(f, 6);
        let coh = Cohomology::compute(&b);
        let mut max_d = 0;
        for _ in 0..100 {
            let forms: Vec<BilinearForm> =
                (0..5).map(|_| random_cocycle(&coh, 6, &mut rng)).collect();
            let spec = ExtensionSpec::new(b.clone(), Cocycle::new_unchecked(6, forms)).unwrap();
            let r = leibniz_core::extension::reduce_with(&spec, &coh).unwrap();
            pass &= r.abelian_summand_dim >= 1 && r.class_rank <= 4;
            max_d = max_d.max(r.class_rank);
        }
        details.push(format!(
            "{f}_6: 100 cocycle 5-tuples, all split, max class rank {max_d}"
        ));
    }
    let fast = start.elapsed() < Duration::from_secs(5);
    details.push(format!("runtime {}", elapsed(start)));
    outcome(
        pass && fast,
        "five-dim extensions of F_6^1, F_6^2 split (d <= 4)",
        details,
    )
}

fn criterion_6() -> Outcome {
    let grid = sample_grid(10);
    let failures: Vec<String> = grid
        .iter()
        .filter(|s| make(s).map_or(true, |a| !a.check_leibniz().is_empty()))
        .map(|s| s.to_string())
        .collect();
    let mut corrupted = nf(5).to_builder();
    corrupted.add(0, 1, 2, scalar(1));
    let mutant_fails = !corrupted.build_raw().is_leibniz();
    let mut details = vec![format!(
        "{} catalog members (n <= 10), {} failures",
        grid.len(),
        failures.len()
    )];
    details.extend(failures.iter().cloned());
    details.push(format!("NF_5 with [e1,e2] = e3 rejected: {mutant_fails}"));
    outcome(
        failures.is_empty() && mutant_fails,
        "catalog grid passes the Leibniz identity; corrupted NF_5 fails",
        details,
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pool: Vec<Algebra> = Vec::new();
    for s in sample_grid(7) {
        if s.dim() <= 7 {
            pool.push(make(&s).unwrap());
        }
    }
    let specs: Vec<ExtensionSpec> = (0..50)
        .map(|_| {
            let b = pool[rng.gen_range(0..pool.len())].clone();
            let n = b.dim();
            let k = rng.gen_range(1..=5);
            let coh = Cohomology::compute(&b);
            let forms: Vec<BilinearForm> =
                (0..k).map(|_| random_cocycle(&coh, n, &mut rng)).collect();
            ExtensionSpec::new(b, Cocycle::new_unchecked(n, forms)).unwrap()
        })
        .collect();
    let results = parallel_map(&specs, |spec| {
        let ext = central_extension(spec).unwrap();
        let r = reduce_extension(spec).unwrap();
        let same = fingerprint(&r.reduced_algebra)
            .unwrap()
            .compare(&fingerprint(&ext).unwrap())
            == Comparison::Equal;
        let iso = verify_isomorphism(&r.reduced_algebra, &ext, &r.witness)
            .unwrap()
            .holds();
        (same, iso, r.is_split())
    });
    let mut pass = true;
    let mut details = Vec::new();
    let mut split = 0;
    for (spec, &(same, iso, is_split)) in specs.iter().zip(&results) {
        split += usize::from(is_split);
        if !(same && iso) {
            pass = false;
            details.push(format!(
                "{} k = {}: fingerprint equal {same}, witness {iso}",
                spec.base().name().unwrap_or("?"),
                spec.k()
            ));
        }
    }
    details.push(format!("50 random specs, {split} split"));
    outcome(
        pass,
        "reduce_extension + rebuild keeps the fingerprint (50 specs, n <= 7, k <= 5)",
        details,
    )
}

fn criterion_8() -> Outcome {
    let f1 = fingerprint(&base(Family::F1, 6)).unwrap();
    let mut pass = true;
    let mut details = Vec::new();
    let points = [
        vec![scalar(1), scalar(2), scalar(3), scalar(5)],
        vec![scalar(-1), scalar(0), scalar(1) / scalar(2), scalar(4)],
        vec![scalar(2), scalar(-3), scalar(7), scalar(-2) / scalar(3)],
    ];
    for p in points {
        let spec = FamilySpec::from_values(Family::F1Param, 6, &p).unwrap();
        let a = make(&spec).unwrap();
        let g = natural_gradation(&a).unwrap();
        let same = fingerprint(&g.algebra).unwrap().compare(&f1) == Comparison::Equal;
        // [L_i, L_j] ⊆ L_{i+j} in the graded algebra, and ⊆ L^{i+j} in the filtered one
        let n = a.dim();
        let deg = &g.degrees;
        let mut graded_ok = true;
        let mut filtered_ok = true;
        for (i, j, k) in (0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .map(|((i, j), k)| (i, j, k))
        {
            if *g.algebra.structure_constant(i, j, k) != scalar(0) && deg[k] != deg[i] + deg[j] {
                graded_ok = false;
            }
            if *g.filtered.structure_constant(i, j, k) != scalar(0) && deg[k] < deg[i] + deg[j] {
                filtered_ok = false;
            }
        }
        pass &= same && graded_ok && filtered_ok;
        details.push(format!(
            "{spec}: graded ~ F1_6 {same}, layers graded {graded_ok}, filtration {filtered_ok}"
        ));
    }
    outcome(
        pass,
        "natural gradation of F_6^1(α4, α5, α6, θ) is F_6^1",
        details,
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1", criterion_1),
        ("2", criterion_2),
        ("3", criterion_3),
        ("4", criterion_4),
        ("5", criterion_5),
        ("6", criterion_6),
        ("7", criterion_7),
        ("8", criterion_8),
    ];
    let mut all = true;
    let mut reports = Vec::new();
    for (id, run) in criteria {
        let start = Instant::now();
        let o = run();
        all &= o.pass;
        println!(
            "criterion {id}: {} {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.summary,
            elapsed(start)
        );
        reports.push((id, o.details));
    }
    for (id, details) in reports {
        println!("\ncriterion {id} details:");
        for d in details {
            println!("  {d}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
