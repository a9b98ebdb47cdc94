//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always printed; the
//! process fails when any criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use hadamat::constructions::{
    c2_displayed, c2_solutions, c3_constraints, c3_quadratic_roots, c5_circulant, catalog, fourier,
    lookup, QuadraticRoots,
};
use hadamat::equivalence::{equiv, replay};
use hadamat::format::{format_matrix, parse_matrix};
use hadamat::mub::{check_mub_set, unbiased, Basis, PairCell};
use hadamat::report::{verify_paper, Verdict};
use hadamat::search::{pattern_solutions_c5, search, SearchTask};
use hadamat::{CycloMatrix, CycloNum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FLOAT_TOL: f64 = 1e-8;
const SEED: u64 = 0x4841_4441;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cat(name: &str) -> &'static CycloMatrix {
    &lookup(name).unwrap_or_else(|| panic!("catalog entry {name}")).matrix
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn c1_exact_hadamard() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for name in ["F_2", "F_3", "F_5", "D_1", "D_2", "D_3", "D_4"] {
        let m = cat(name);
        let v = m.is_hadamard();
        ensure(v.is_hadamard, || format!("{name} fails at {:?}", v.failing_cell))?;
        let r = m.hadamard_residual();
        ensure(r < FLOAT_TOL, || format!("{name} float residual {r:e}"))?;
        worst = worst.max(r);
    }
    for n in [2, 3, 5] {
        ensure(fourier(n).unwrap().is_hadamard().is_hadamard, || format!("fourier({n})"))?;
    }
    within(Duration::from_secs(1), start)?;
    Ok(format!("7 matrices exact, worst float residual {worst:.1e}"))
}

fn c2_inverse_orthogonal_family() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut literal_failures = 0;
    for _ in 0..20 {
        let [a, b, c, d] = [0; 4].map(|_| CycloNum::root_of_unity(60, rng.gen_range(0..60)).unwrap());
        for which in 1..=4 {
            let h = c2_solutions(&a, &b, &c, &d, which).map_err(|e| e.to_string())?;
            ensure(h.is_inverse_orthogonal() == Ok(true), || {
                format!("constraint-enforced H_{which} not inverse-orthogonal")
            })?;
        }
        let lit = c2_displayed(&a, &b, &c, &d, 1).map_err(|e| e.to_string())?;
        if lit.is_inverse_orthogonal() != Ok(true) {
            literal_failures += 1;
        }
    }
    ensure(literal_failures > 0, || "literal +bc/d corner never failed".into())?;
    let report = verify_paper();
    let claim = report.claim("S2.H1-solution").ok_or("claim S2.H1-solution missing")?;
    ensure(
        claim.verdict == Verdict::Fail
            && claim.details["literal_failures"].as_u64().unwrap_or(0) > 0
            && claim.errata.iter().any(|e| e == "E01"),
        || "literal corner not flagged in the report".into(),
    )?;
    Ok(format!("80 enforced instances exact, literal corner fails {literal_failures}/20, flagged"))
}

fn c3_quadratic() -> Outcome {
    let one = CycloNum::one(3);
    let QuadraticRoots::Roots(r1, r2) = c3_quadratic_roots(&one, &one).map_err(|e| e.to_string())?
    else {
        return Err("discriminant not representable".into());
    };
    let got: BTreeSet<String> = [&r1, &r2].iter().map(|r| r.to_string()).collect();
    let want: BTreeSet<String> = [1, 2]
        .iter()
        .map(|&k| CycloNum::root_of_unity(3, k).unwrap().to_string())
        .collect();
    ensure(got == want, || format!("roots {got:?}, expected {want:?}"))?;
    for r in [&r1, &r2] {
        let (e1, e2) = c3_constraints(r, &one, &one).map_err(|e| e.to_string())?;
        ensure(e1.is_zero() && e2.is_zero(), || format!("residuals nonzero at {r}"))?;
    }
    Ok("roots {z3, z3^2}, both residuals zero".into())
}

fn c4_pattern_c5() -> Outcome {
    let start = Instant::now();
    let roots = pattern_solutions_c5();
    ensure(roots.len() == 4, || format!("{} roots", roots.len()))?;
    for a in &roots {
        ensure(a.is_unimodular(), || format!("{a} not unimodular"))?;
        ensure(c5_circulant(a).is_hadamard().is_hadamard, || format!("circulant at {a} fails"))?;
    }
    let task = SearchTask::new(5, 5, true).map_err(|e| e.to_string())?;
    let result = search(&task).map_err(|e| e.to_string())?;
    ensure(result.rows.contains(&vec![0, 1, 4, 4, 1]), || "row (1,z5,z5^4,z5^4,z5) missing".into())?;
    within(Duration::from_secs(10), start)?;
    Ok(format!("4 roots, all Hadamard; search found {} rows incl. (0 1 4 4 1)", result.rows.len()))
}

fn c5_mub() -> Outcome {
    let start = Instant::now();
    let a11 = Basis::new("A_11", cat("A_11")).map_err(|e| e.to_string())?;
    let a12 = Basis::new("A_12", cat("A_12")).map_err(|e| e.to_string())?;
    ensure(unbiased(&a11, &a12).map_err(|e| e.to_string())?.unbiased, || "A_11, A_12 biased".into())?;

    // Oracle: A_11 = conj(A_12) and A_12 = J + tI with t = w - 1, so
    // A_11* A_12 = A_12² = (3 + 2t)J + t²I: off-diagonal 1 + 2w, diagonal 2 + w².
    let w = Complex64::from_polar(1.0, TAU / 3.0);
    let t = w - 1.0;
    let off = 3.0 + 2.0 * t;
    let diag = off + t * t;
    ensure(
        (off.norm_sqr() - 3.0).abs() < FLOAT_TOL && (diag.norm_sqr() - 3.0).abs() < FLOAT_TOL,
        || "oracle moduli".into(),
    )?;
    let raw = cat("A_11").conj_transpose().matmul(cat("A_12")).map_err(|e| e.to_string())?;
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j { diag } else { off };
            let got = raw.get(i, j).to_complex();
            ensure((got - want).norm() < FLOAT_TOL, || format!("entry ({i},{j}) {got} vs {want}"))?;
            ensure(raw.get(i, j).norm_sq() == CycloNum::from_integer(60, 3), || {
                format!("exact |entry ({i},{j})|^2 != 3")
            })?;
        }
    }

    let id = CycloMatrix::identity(5, 1);
    let members = [
        ("I", &id),
        ("D_1", cat("D_1")),
        ("D_2", cat("D_2")),
        ("D_3", cat("D_3")),
        ("D_4", cat("D_4")),
    ];
    let r = check_mub_set(&members).map_err(|e| e.to_string())?;
    let mut cells = 0;
    for i in 0..5 {
        for j in i + 1..5 {
            ensure(!matches!(r.pairwise[i][j], PairCell::Error(_) | PairCell::Vacuous), || {
                format!("cell ({i},{j}) is {:?}", r.pairwise[i][j])
            })?;
            cells += 1;
        }
    }
    within(Duration::from_secs(5), start)?;
    Ok(format!("A_11/A_12 unbiased, oracle agrees; {{I,D_1..D_4}} table {cells} pairs, mub = {}", r.verdict))
}

fn c6_equivalence() -> Outcome {
    let f3 = fourier(3).unwrap();
    let mut equivalent3 = 0;
    let mut total3 = 0;
    for m in catalog().iter().filter(|m| m.matrix.dim() == 3 && m.matrix.is_hadamard().is_hadamard) {
        let v = equiv(&m.matrix, &f3).map_err(|e| e.to_string())?;
        ensure(v.pairs_examined <= 36, || format!("{}: {} pairs", m.name, v.pairs_examined))?;
        match &v.witness {
            Some(w) => {
                ensure(replay(w, &m.matrix, &f3), || format!("{} witness fails replay", m.name))?;
                equivalent3 += 1;
            }
            None => ensure(v.pairs_examined == 36, || format!("{} not exhaustive", m.name))?,
        }
        total3 += 1;
    }

    let start = Instant::now();
    let f5 = fourier(5).unwrap();
    let mut verdicts = Vec::new();
    for k in 1..=4 {
        let name = format!("D_{k}");
        let v = equiv(cat(&name), &f5).map_err(|e| e.to_string())?;
        ensure(v.pairs_examined == 14400, || format!("{name}: {} pairs", v.pairs_examined))?;
        if let Some(w) = &v.witness {
            ensure(replay(w, cat(&name), &f5), || format!("{name} witness fails replay"))?;
        }
        verdicts.push((name, v.equivalent));
    }
    within(Duration::from_secs(60), start)?;

    let report = verify_paper();
    for (name, eq) in &verdicts {
        let id = format!("S6.F5-equivalence.{name}");
        let c = report.claim(&id).ok_or_else(|| format!("{id} missing"))?;
        ensure(c.details["equivalence"]["equivalent"] == *eq, || format!("{id} disagrees"))?;
    }
    ensure(report.claim("S6.F5-equivalence").is_some(), || "headline claim missing".into())?;
    let d: Vec<String> = verdicts.iter().map(|(n, e)| format!("{n}={e}")).collect();
    Ok(format!(
        "{equivalent3}/{total3} 3x3 Hadamards equivalent to F_3; vs F_5 over 14400 pairs: {}",
        d.join(" ")
    ))
}

fn brute_force(n: usize, order: u32, fix_first: bool) -> BTreeSet<Vec<u32>> {
    let free = if fix_first { n - 1 } else { n };
    let mut out = BTreeSet::new();
    for code in 0..(order as usize).pow(free as u32) {
        let mut row = vec![0u32; n];
        let mut c = code;
        for k in (n - free..n).rev() {
            row[k] = (c % order as usize) as u32;
            c /= order as usize;
        }
        let z: Vec<Complex64> = row
            .iter()
            .map(|&e| Complex64::from_polar(1.0, TAU * e as f64 / order as f64))
            .collect();
        let h = |i: usize, j: usize| z[(j + n - i) % n];
        let ok = (0..n).all(|i| {
            (0..n).all(|k| {
                let g: Complex64 = (0..n).map(|j| h(i, j) * h(k, j).conj()).sum();
                let want = if i == k { n as f64 } else { 0.0 };
                (g - want).norm() < FLOAT_TOL
            })
        });
        if ok {
            out.insert(row);
        }
    }
    out
}

fn c7_search_oracle() -> Outcome {
    let mut sizes = Vec::new();
    for (n, order) in [(3, 3), (2, 4)] {
        for fix_first in [true, false] {
            let task = SearchTask::new(n, order, fix_first).map_err(|e| e.to_string())?;
            let exact: BTreeSet<Vec<u32>> =
                search(&task).map_err(|e| e.to_string())?.rows.into_iter().collect();
            let oracle = brute_force(n, order, fix_first);
            ensure(exact == oracle, || format!("({n},{order},{fix_first}): {exact:?} vs {oracle:?}"))?;
            sizes.push(format!("({n},{order},{}):{}", if fix_first { "fixed" } else { "free" }, exact.len()));
        }
    }
    Ok(format!("identical solution sets {}", sizes.join(" ")))
}

fn scratch_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hadamat-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run_cli(args: &[&str], dir: &Path) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hadamat"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run hadamat");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn c8_infrastructure() -> Outcome {
    for m in catalog() {
        let text = format_matrix(&m.matrix);
        let back = parse_matrix(&text).map_err(|e| format!("{}: {e}", m.name))?;
        ensure(back == m.matrix && format_matrix(&back) == text, || format!("{} round trip", m.name))?;
    }

    let dir = scratch_dir();
    let (c1, r1) = run_cli(&["verify-paper"], &dir);
    let (c2, r2) = run_cli(&["verify-paper"], &dir);
    ensure(c1 == 0 && c2 == 0 && !r1.is_empty() && r1 == r2, || "verify-paper not byte-identical".into())?;

    for (name, file) in [("F5", "F5.mat"), ("F3", "F3.mat")] {
        let (code, text) = run_cli(&["gen", name], &dir);
        ensure(code == 0, || format!("gen {name} exit {code}"))?;
        std::fs::write(dir.join(file), text).unwrap();
    }
    std::fs::write(dir.join("J3.mat"), "hadamat-matrix v1\norder 1\ndim 3\nscale 0\n1 1 1\n1 1 1\n1 1 1\n").unwrap();
    std::fs::write(dir.join("bad.mat"), "hadamat-matrix v1\norder 3\ndim 2\nscale 0\n1 1\n1\n").unwrap();
    let cases: [(&[&str], i32); 9] = [
        (&["check", "hadamard", "F5.mat"], 0),
        (&["check", "hadamard", "F5.mat", "--assert"], 0),
        (&["check", "hadamard", "J3.mat"], 0),
        (&["check", "hadamard", "J3.mat", "--assert"], 1),
        (&["equiv", "F3.mat", "F5.mat"], 2),
        (&["check", "hadamard", "bad.mat"], 2),
        (&["gen", "NoSuchMatrix"], 2),
        (&["frobnicate"], 2),
        (&["search", "--n", "3", "--order", "3", "--json"], 0),
    ];
    for (args, want) in cases {
        let (code, _) = run_cli(args, &dir);
        ensure(code == want, || format!("{args:?} exited {code}, expected {want}"))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} catalog files round-trip, report byte-identical, 9 exit-code cases", catalog().len()))
}

fn random_value(rng: &mut ChaCha8Rng, order: u32) -> CycloNum {
    let mut x = CycloNum::zero(order);
    for k in 0..order as i64 {
        let c = CycloNum::from_integer(order, rng.gen_range(-5..=5));
        x = x + &(&c * &CycloNum::root_of_unity(order, k).unwrap());
    }
    let q = CycloNum::from_integer(order, rng.gen_range(1..=4));
    &x * &q.inverse().unwrap()
}

fn c9_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let orders = [1u32, 3, 4, 5, 12, 15, 60];
    for case in 0..1000 {
        let m = orders[rng.gen_range(0..orders.len())];
        let (a, b, c) = (random_value(&mut rng, m), random_value(&mut rng, m), random_value(&mut rng, m));
        let ok = &a + &b == &b + &a
            && &a * &b == &b * &a
            && &(&a + &b) + &c == &a + &(&b + &c)
            && &(&a * &b) * &c == &a * &(&b * &c)
            && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
            && (&a + &(-&a)).is_zero()
            && &a * &CycloNum::one(m) == a
            && a.conj().conj() == a
            && (&a * &b).conj() == &a.conj() * &b.conj();
        ensure(ok, || format!("case {case} at order {m}: {a}, {b}, {c}"))?;
    }

    let mut dephased = 0;
    for m in catalog() {
        if let Ok(d) = m.matrix.dephase() {
            ensure(d.is_dephased() && d.dephase().as_ref() == Ok(&d), || format!("{} dephase", m.name))?;
            dephased += 1;
        }
    }

    let mats: Vec<&CycloMatrix> = catalog()
        .iter()
        .map(|m| &m.matrix)
        .filter(|m| m.dim() == 3 && m.is_hadamard().is_hadamard)
        .collect();
    let rel: Vec<Vec<bool>> = mats
        .iter()
        .map(|a| mats.iter().map(|b| equiv(a, b).map(|v| v.equivalent).unwrap_or(false)).collect())
        .collect();
    let k = mats.len();
    for i in 0..k {
        ensure(rel[i][i], || format!("not reflexive at {i}"))?;
        for j in 0..k {
            ensure(rel[i][j] == rel[j][i], || format!("not symmetric at ({i},{j})"))?;
            for l in 0..k {
                ensure(!(rel[i][j] && rel[j][l]) || rel[i][l], || format!("not transitive at ({i},{j},{l})"))?;
            }
        }
    }
    Ok(format!("1000 random triples, {dephased} dephase-idempotent, {k}x{k} relation is an equivalence"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("exact Hadamard verification", c1_exact_hadamard),
        ("2x2 inverse-orthogonal family", c2_inverse_orthogonal_family),
        ("C3 quadratic roots", c3_quadratic),
        ("C5 pattern solutions", c4_pattern_c5),
        ("MUB adjudication", c5_mub),
        ("equivalence adjudication", c6_equivalence),
        ("search oracle equivalence", c7_search_oracle),
        ("infrastructure", c8_infrastructure),
        ("property suites", c9_properties),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("PASS criterion {}: {title}: {detail} [{took:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why} [{took:.2?}]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
