use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command as Proc;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rclkit_cli::ast::Declarations;
use rclkit_cli::{parse, resolve, run_file, Command, Format, Options, Resolved};
use rclkit_core::adjunction::{validate_adjunction, Adjunction};
use rclkit_core::quotient::{build_quotient, ideal_subspace, induce_adjunction};
use rclkit_core::recollement::{
    check_recollement, closure_hypotheses, lift_subcategory_pair, quotient_by_left_subcategory, quotient_recollement,
    restrict_to_subcategory, R3Semantics, Recollement,
};
use rclkit_core::triangulated::{check_mutation_pair, verify_quotient_triangulation};
use rclkit_core::{FinLinCategory, LinearFunctor, ObjectExpr, Scalar, Subcategory, SubspaceBasis};
use serde_json::Value;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn source(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

fn load(src: &str) -> Resolved {
    resolve(&parse(src).unwrap()).unwrap()
}

fn a2(src: &str) -> Recollement {
    load(src).recollements["A2"].clone()
}

fn resolve_decls(d: &Declarations) -> Option<Resolved> {
    let mut ws = parse("").unwrap();
    ws.decls = d.clone();
    resolve(&ws).ok()
}

/// Generators sent to zero, read off the object map.
fn kernel(f: &LinearFunctor) -> Subcategory {
    let members = (0..f.source.num_generators())
        .filter(|&g| f.object_map[g].summands().iter().all(|&h| f.target.is_null(h)));
    Subcategory::new(f.source.clone(), members)
}

fn maps_into(f: &LinearFunctor, x: &Subcategory, y: &Subcategory) -> bool {
    x.members
        .iter()
        .all(|&g| f.object_map[g].summands().iter().all(|&h| y.contains_generator(h) || f.target.is_null(h)))
}

/// Replacement values for one coordinate: `c ± 1`, and `0`, `2c` when `c ≠ 0`.
fn perturbations(c: &Scalar) -> Vec<Scalar> {
    let one = Scalar::from_integer(1.into());
    let mut out = vec![c + &one, c - &one];
    if !c.is_zero() {
        out.push(Scalar::zero());
        out.push(c * Scalar::from_integer(2.into()));
    }
    out
}

fn criterion_1() -> Outcome {
    let src = source("fix_a2.rcl");
    let r = a2(&src);
    for sem in [R3Semantics::Strict, R3Semantics::IsoClosed] {
        let cert = check_recollement(&r, sem);
        ensure(cert.passed(), || format!("fixture fails under {sem:?}: {:?}", cert.first_failure()))?;
    }
    let base = parse(&src).unwrap().decls;
    let mut mutants: Vec<(String, Declarations)> = Vec::new();
    for (an, a) in &base.adjunctions {
        for (side, comps) in [("unit", &a.unit), ("counit", &a.counit)] {
            for (g, c) in comps {
                for i in 0..c.len() {
                    for v in perturbations(&c[i]) {
                        let mut d = base.clone();
                        let adj = d.adjunctions.get_mut(an).unwrap();
                        let t = if side == "unit" { &mut adj.unit } else { &mut adj.counit };
                        t.get_mut(g).unwrap()[i] = v.clone();
                        mutants.push((format!("{an} {side} {g}[{i}] = {v}"), d));
                    }
                }
            }
        }
    }
    for (fname, f) in &base.functors {
        for (e, c) in &f.maps {
            for i in 0..c.len() {
                for v in perturbations(&c[i]) {
                    let mut d = base.clone();
                    d.functors.get_mut(fname).unwrap().maps.get_mut(e).unwrap()[i] = v.clone();
                    mutants.push((format!("{fname} map {e}[{i}] = {v}"), d));
                }
            }
        }
        let homs = &base.categories[&f.source].homs;
        let targets = &base.categories[&f.target].generators;
        for (g, o) in &f.objects {
            let mut images: Vec<Vec<String>> = targets.iter().map(|t| vec![t.clone()]).collect();
            images.extend(targets.iter().map(|t| [o.clone(), vec![t.clone()]].concat()));
            images.push(vec![]);
            for image in images.into_iter().filter(|i| i != o) {
                let mut d = base.clone();
                let fd = d.functors.get_mut(fname).unwrap();
                *fd.objects.get_mut(g).unwrap() = image.clone();
                for ((a, b), basis) in homs {
                    if a == g || b == g {
                        for e in basis {
                            fd.maps.remove(e);
                        }
                    }
                }
                mutants.push((format!("{fname} object {g} = {image:?}"), d));
            }
        }
    }
    let (mut rejected, mut caught) = (0, 0);
    for (label, d) in &mutants {
        match resolve_decls(d) {
            None => rejected += 1,
            Some(res) => {
                let cert = check_recollement(&res.recollements["A2"], R3Semantics::Strict);
                ensure(!cert.passed(), || format!("mutant {label} passes"))?;
                caught += 1;
            }
        }
    }
    println!("  {} mutants: {caught} failed a check, {rejected} rejected on input", mutants.len());
    ensure(mutants.len() >= 90, || format!("only {} mutants", mutants.len()))
}

fn criterion_2_and_3(check_iff: bool) -> Outcome {
    let r = a2(&source("fix_a2.rcl"));
    let subsets = Subcategory::enumerate_all(&r.middle);
    ensure(subsets.len() == 8, || format!("{} subsets", subsets.len()))?;
    let ker = kernel(r.j_upper());
    let mut scored = 0;
    for x in &subsets {
        if !closure_hypotheses(&r, x).passed() {
            continue;
        }
        scored += 1;
        if !check_iff {
            let rr = restrict_to_subcategory(&r, x).map_err(|e| format!("{}: {e}", x.display()))?;
            let cert = check_recollement(&rr, R3Semantics::Strict);
            ensure(cert.passed(), || format!("{}: {:?}", x.display(), cert.first_failure()))?;
            continue;
        }
        let q = quotient_recollement(&r, x, R3Semantics::Strict).map_err(|e| e.to_string())?;
        let c = &q.certificate;
        let verdict = c.r1.passed() && c.r2.passed() && c.r3.failures.iter().all(|f| f.check.starts_with("verdict"));
        let predicate = x.is_subset(&ker);
        ensure(q.predicate == predicate, || format!("{}: predicate disagrees with oracle", x.display()))?;
        ensure(verdict == predicate, || format!("{}: verdict {verdict}, predicate {predicate}", x.display()))?;
        ensure(c.passed() == predicate, || format!("{}: certificate verdict", x.display()))?;
    }
    ensure(scored > 0, || "no subset satisfies the hypotheses".into())?;
    if check_iff {
        let all = Subcategory::all(r.middle.clone());
        let q = quotient_recollement(&r, &all, R3Semantics::IsoClosed).map_err(|e| e.to_string())?;
        ensure(q.certificate.passed() && !q.predicate, || "iso-closed divergence on x = all not observed".into())?;
        ensure(q.certificate.notes.iter().any(|n| n.contains("differs")), || "divergence not noted".into())?;
    }
    println!("  {scored} of 8 subsets satisfy the closure hypotheses");
    Ok(())
}

fn random_vector(rng: &mut ChaCha8Rng, c: &FinLinCategory, dim: usize) -> Vec<Scalar> {
    (0..dim).map(|_| c.field().from_int(rng.gen_range(-50..=50))).collect()
}

fn criterion_4() -> Outcome {
    let src = source("fix_a2.rcl");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut trials = 0;
    for field_line in ["field Q;", "field F_101;"] {
        let r = a2(&src.replace("field Q;", field_line));
        let mut pairs: Vec<(Adjunction, Subcategory, Subcategory)> = Vec::new();
        for adj in &r.adjunctions {
            for x in Subcategory::enumerate_all(adj.lower()) {
                for x2 in Subcategory::enumerate_all(adj.upper()) {
                    if maps_into(&adj.left, &x, &x2) && maps_into(&adj.right, &x2, &x) {
                        pairs.push((adj.clone(), x.clone(), x2));
                    }
                }
            }
        }
        for _ in 0..100 {
            let (adj, x, x2) = &pairs[rng.gen_range(0..pairs.len())];
            let (c, d) = (adj.lower(), adj.upper());
            let induced = induce_adjunction(adj, x, x2).map_err(|e| format!("{}: {e}", adj.name))?;
            let rep = validate_adjunction(&induced);
            ensure(rep.passed(), || format!("induced {} fails: {:?}", adj.name, rep.first_witness()))?;
            let q = build_quotient(x).map_err(|e| e.to_string())?;
            let a = ObjectExpr::single(rng.gen_range(0..c.num_generators()));
            let b = ObjectExpr::single(rng.gen_range(0..d.num_generators()));
            let fa = adj.left.apply_object(&a);
            let dim = d.hom_space(&fa, &b).dim;
            let f = d.morphism(&fa, &b, random_vector(&mut rng, d, dim)).map_err(|e| e.to_string())?;
            let mut rr = d.zero_morphism(&fa, &b);
            for v in ideal_subspace(d, &fa, &b, x2).basis() {
                let v = d.morphism(&fa, &b, v.clone()).map_err(|e| e.to_string())?;
                let s = d.field().from_int(rng.gen_range(-50..=50));
                rr = d.add(&rr, &d.scale(&v, &s)).map_err(|e| e.to_string())?;
            }
            let shifted = d.add(&f, &rr).map_err(|e| e.to_string())?;
            let lhs = q.project(&adj.eta(&a, &f).map_err(|e| e.to_string())?);
            let rhs = q.project(&adj.eta(&a, &shifted).map_err(|e| e.to_string())?);
            ensure(lhs == rhs, || format!("{}: transpose depends on the ideal part", adj.name))?;
            trials += 1;
        }
    }
    ensure(trials == 200, || format!("{trials} trials"))
}

fn criterion_5() -> Outcome {
    let r = a2(&source("fix_a2.rcl"));
    let (x, rr) = lift_subcategory_pair(&r, &Subcategory::all(r.left.clone()), &Subcategory::empty(r.right.clone()))
        .map_err(|e| e.to_string())?;
    ensure(x.names() == ["S2"], || format!("lifted x = {}", x.display()))?;
    let cert = check_recollement(&rr, R3Semantics::Strict);
    ensure(cert.passed(), || format!("lifted recollement: {:?}", cert.first_failure()))?;
    let lefts = Subcategory::enumerate_all(&r.left);
    ensure(lefts.len() == 2, || format!("{} left subsets", lefts.len()))?;
    for xl in &lefts {
        let q = quotient_by_left_subcategory(&r, xl, R3Semantics::Strict).map_err(|e| e.to_string())?;
        ensure(q.certificate.passed(), || format!("{}: {:?}", xl.display(), q.certificate.first_failure()))?;
    }
    Ok(())
}

/// Sums of members with each multiplicity at most 2.
fn member_sums(x: &Subcategory) -> Vec<ObjectExpr> {
    let mut out = vec![ObjectExpr::zero()];
    for &g in &x.members {
        out = out
            .iter()
            .flat_map(|o| {
                (0..=2).map(move |mult| {
                    let mut s = o.summands().to_vec();
                    s.extend(std::iter::repeat(g).take(mult));
                    ObjectExpr::new(s)
                })
            })
            .collect();
    }
    out
}

fn brute_force_ideal(c: &FinLinCategory, a: &ObjectExpr, b: &ObjectExpr, x: &Subcategory) -> SubspaceBasis {
    let mut vectors = Vec::new();
    for mid in member_sums(x) {
        for i in 0..c.hom_space(a, &mid).dim {
            for j in 0..c.hom_space(&mid, b).dim {
                let g = c.basis_morphism(a, &mid, i);
                let h = c.basis_morphism(&mid, b, j);
                vectors.push(c.compose(&h, &g).unwrap().coords);
            }
        }
    }
    SubspaceBasis::span(c.field(), c.hom_space(a, b).dim, vectors)
}

fn criterion_6() -> Outcome {
    let res = load(&source("fix_stab3.rcl"));
    let m = &res.mutations["STAB3/add(M2)"];
    ensure(m.d.names() == ["M2"], || format!("D = {}", m.d.display()))?;
    let rep = check_mutation_pair(m);
    ensure(rep.passed(), || format!("mutation pair: {:?}", rep.first_witness()))?;
    let (qt, rep) = verify_quotient_triangulation(m);
    ensure(qt.is_some() && rep.passed(), || format!("quotient triangulation: {:?}", rep.first_witness()))?;
    for t in ["TR2", "TR4"] {
        ensure(rep.notes.iter().any(|n| n.contains(t) && n.contains("not checked")), || format!("{t} not reported"))?;
    }
    let c = m.base();
    let n = c.num_generators();
    let mut objects = vec![ObjectExpr::zero()];
    for a in 0..n {
        objects.push(ObjectExpr::single(a));
        for b in a..n {
            objects.push(ObjectExpr::new(vec![a, b]));
        }
    }
    let mut pairs = 0;
    for a in &objects {
        for b in &objects {
            ensure(ideal_subspace(c, a, b, &m.d) == brute_force_ideal(c, a, b, &m.d), || format!("{a:?} → {b:?}"))?;
            pairs += 1;
        }
    }
    println!("  ideal oracle agrees on {pairs} pairs");
    Ok(())
}

fn binary(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Proc::new(env!("CARGO_BIN_EXE_rclkit")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_7() -> Outcome {
    let prod = fixture("fix_prod.rcl");
    let prod = prod.to_str().unwrap();
    let (code, out) = binary(&["tri-recollement", prod, "--d", "C1.M2", "--format", "structured"]);
    ensure(code == 0, || format!("exit {code}: {}", String::from_utf8_lossy(&out)))?;
    let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let reports = v["reports"].as_array().ok_or("no reports")?;
    let passed = |prefix: &str| {
        reports.iter().any(|r| {
            r["subject"].as_str().is_some_and(|s| s.starts_with(prefix))
                && r["passed"] == Value::Bool(true)
                && r["checks_run"].as_u64().is_some_and(|n| n > 0)
        })
    };
    for p in ["R1", "R2", "R3"] {
        ensure(passed(p), || format!("{p} not certified"))?;
    }
    for f in ["i*", "i_*", "i^!", "j_!", "j*", "j_*"] {
        ensure(passed(&format!("exact functor {f}")), || format!("exactness of {f} not certified"))?;
    }
    let (code, out) = binary(&["tri-recollement", prod, "--d", "C2.M2", "--format", "structured"]);
    ensure(code == 1, || format!("negative control exit {code}"))?;
    let v: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let msg = v["error"]["message"].as_str().unwrap_or_default();
    ensure(msg.contains("D ⊆ Ker j*") && msg.contains("C2.M2"), || format!("negative control message: {msg}"))
}

fn criterion_8() -> Outcome {
    let runs: &[(&str, &[&str])] = &[
        ("fix_a2.rcl", &["validate"]),
        ("fix_a2.rcl", &["check-recollement", "--semantics", "strict"]),
        ("fix_a2.rcl", &["check-recollement", "--semantics", "iso"]),
        ("fix_a2.rcl", &["restrict", "--x", "S2"]),
        ("fix_a2.rcl", &["quotient-recollement", "--x", "S2"]),
        ("fix_a2.rcl", &["quotient-recollement", "--x", "S1,S2,P1", "--semantics", "iso"]),
        ("fix_a2.rcl", &["lift", "--xp", "k", "--xpp", ""]),
        ("fix_a2.rcl", &["left-quotient", "--xp", "k"]),
        ("fix_stab3.rcl", &["mutation-check"]),
        ("fix_stab3.rcl", &["triangulate-quotient"]),
        ("fix_prod.rcl", &["tri-recollement", "--d", "C1.M2"]),
        ("fix_prod.rcl", &["tri-recollement", "--d", "C2.M2"]),
    ];
    let mut seen = BTreeSet::new();
    for (fx, args) in runs {
        let path = fixture(fx);
        for format in ["text", "structured"] {
            let mut full = vec![args[0], path.to_str().unwrap()];
            full.extend_from_slice(&args[1..]);
            full.extend_from_slice(&["--format", format]);
            let first = binary(&full);
            let second = binary(&full);
            ensure(first == second, || format!("{fx} {args:?} {format} differs between runs"))?;
            seen.insert(first.1);
        }
    }
    let opts = Options { x: Some("S2".into()), ..Options::default() };
    let a = run_file(Command::QuotientRecollement, &fixture("fix_a2.rcl"), &opts).render(Format::Structured);
    let b = run_file(Command::QuotientRecollement, &fixture("fix_a2.rcl"), &opts).render(Format::Structured);
    ensure(a == b, || "library certificates differ".into())?;
    println!("  {} distinct certificates, each reproduced byte for byte", seen.len());
    Ok(())
}

fn main() {
    let start = Instant::now();
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "recollement checker on the A2 fixture and its mutants", criterion_1),
        (2, "restriction to every admissible subset", || criterion_2_and_3(false)),
        (3, "strict quotient verdict matches x ⊆ Ker j*", || criterion_2_and_3(true)),
        (4, "induced transposes ignore ideal parts", criterion_4),
        (5, "lifting and left quotients", criterion_5),
        (6, "mutation pair and quotient triangulation on STAB3", criterion_6),
        (7, "tri-recollement end to end on PROD", criterion_7),
        (8, "byte-identical certificates", criterion_8),
    ];
    let mut failed = 0;
    for (n, what, f) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!("criterion {n}: pass ({what}, {:.2}s)", t.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL ({what}): {e}");
            }
        }
    }
    let total = start.elapsed().as_secs_f64();
    println!("acceptance: {} of 8 passed in {total:.2}s", 8 - failed);
    if failed > 0 || total > 60.0 {
        std::process::exit(1);
    }
}
