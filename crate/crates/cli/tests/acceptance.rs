//! Acceptance criteria 1-10. Runs without the libtest harness so that
//! every criterion prints exactly one PASS or FAIL line.
//!
//! A criterion listed in `KNOWN_CONFLICTS` still prints FAIL, but does not
//! fail the run as long as it fails for the recorded reason: the criterion
//! checks the evidence that the published value is wrong and reports any
//! other failure as unexpected.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use kantor_cli::{execute, Cli};
use kantor_core::admissibility::{all_sp_pairs, ctj_sp_gradings, enumerate_ka, enumerate_sp, params};
use kantor_core::chevalley::{
    ctj_fkts_check, extract_pair, grade, omega_lemma_checks, ChevalleyAlgebra, CheckMode, Omega, RootOrder, PLUS,
};
use kantor_core::linalg::Q;
use kantor_core::matrix_pairs::{
    build_jordan, tau_from_trace, table1_rows, theta_constant, verify_excluded, verify_row, JordanKind, TauClosedForm,
};
use kantor_core::weyl_image::{weyl_image_by, Route};
use kantor_core::{DiagramType, Family, NodeSet, PairParameters, RootHom, RootSystem, WeylElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20261015;

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(1);
const LIMIT_6: Duration = Duration::from_secs(120);
const LIMIT_7: Duration = Duration::from_secs(600);
const LIMIT_8: Duration = Duration::from_secs(120);
const LIMIT_9: Duration = Duration::from_secs(300);
/// Random cases per type for E7 and E8 in criterion 6.
const RANDOM_CASES: usize = 500;

/// Criteria whose published value is contradicted by the construction it
/// comes from; see the decisions notes.
const KNOWN_CONFLICTS: &[usize] = &[5];

/// Prefix of a failure that matches the recorded conflict exactly.
const CONFLICT: &str = "known conflict: ";

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn cli(args: &[&str]) -> kantor_cli::Outcome {
    let cli = Cli::try_parse_from(std::iter::once("kantor").chain(args.iter().copied())).expect("valid arguments");
    execute(&cli).expect("command succeeds")
}

fn ty(s: &str) -> DiagramType {
    s.parse().unwrap()
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("took {took:.2?}, limit {limit:?}"));
    }
    Ok(())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn json_rows(out: &str) -> Vec<serde_json::Value> {
    serde_json::from_str::<serde_json::Value>(out).unwrap().as_array().unwrap().clone()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = cli(&["classify", "E6", "--format", "json"]);
    within(LIMIT_1, start)?;
    let mut got: Vec<(u64, u64)> =
        json_rows(&out.stdout).iter().map(|r| (r["params"]["d"].as_u64().unwrap(), r["params"]["e"].as_u64().unwrap())).collect();
    got.sort();
    let want = vec![(16, 0), (16, 8), (20, 1), (20, 5)];
    ensure(out.code == 0 && got == want, || format!("orbits {got:?}"))?;
    Ok(format!("4 orbits {want:?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let out = cli(&["classify", "E6", "--sp", "--nontrivial-only", "--format", "json"]);
    within(LIMIT_2, start)?;
    let mut got: Vec<String> = json_rows(&out.stdout).iter().map(|r| r["label"].as_str().unwrap().to_string()).collect();
    got.sort();
    let mut want: Vec<String> = ["(16,0,8)", "(20,1,10)", "(20,5,10)", "(20,5,8)", "(20,5,12)", "(16,8,8a)", "(16,8,8b)"]
        .iter()
        .map(|s| format!("E6{s}"))
        .collect();
    want.sort();
    ensure(got == want, || format!("labels {got:?}"))?;
    Ok("7 nontrivial orbits".into())
}

/// Label of `u * rep` through the CLI, for the representative labelled `from`.
fn image_label(reps: &BTreeMap<String, (String, String)>, from: &str, u: &str) -> String {
    let (s, t) = &reps[from];
    let out = cli(&["weyl-image", "E6", "--S", s, "--T", t, "--u", u]);
    out.stdout.lines().nth(1).unwrap().rsplit(' ').next().unwrap().to_string()
}

fn criterion_3() -> Outcome {
    let out = cli(&["classify", "E6", "--sp", "--nontrivial-only", "--format", "json"]);
    let join = |v: &serde_json::Value| v.as_array().unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let reps: BTreeMap<String, (String, String)> = json_rows(&out.stdout)
        .iter()
        .map(|r| (r["label"].as_str().unwrap().trim_start_matches("E6").to_string(), (join(&r["S"]), join(&r["T"]))))
        .collect();
    let cases = [
        ("s1", "(16,0,8)", "(16,8,8a)"),
        ("s1", "(16,8,8a)", "(16,0,8)"),
        ("s1", "(20,1,10)", "(20,5,10)"),
        ("s1", "(20,5,10)", "(20,1,10)"),
        ("s2", "(20,5,8)", "(20,5,12)"),
        ("s2", "(20,5,12)", "(20,5,8)"),
        ("s1", "(20,5,8)", "(20,5,8)"),
        ("s1", "(20,5,12)", "(20,5,12)"),
        ("s1", "(16,8,8b)", "(16,8,8b)"),
    ];
    for (u, from, to) in cases {
        let got = image_label(&reps, from, u);
        ensure(got == format!("E6{to}"), || format!("{u} * E6{from} = {got}, expected E6{to}"))?;
    }
    Ok(format!("{} reflection and shift relations", cases.len()))
}

fn criterion_4() -> Outcome {
    let mut cases: Vec<(DiagramType, usize)> = Vec::new();
    for n in 2..=8 {
        cases.push((DiagramType::new(Family::A, n).unwrap(), n.div_ceil(2)));
        cases.push((DiagramType::new(Family::B, n).unwrap(), 1));
    }
    for n in 3..=8 {
        cases.push((DiagramType::new(Family::C, n).unwrap(), 1));
    }
    for n in 5..=8 {
        cases.push((DiagramType::new(Family::D, n).unwrap(), 2));
    }
    for (t, k) in [("D4", 1), ("E6", 1), ("E7", 1), ("G2", 0), ("F4", 0), ("E8", 0)] {
        cases.push((ty(t), k));
    }
    for &(t, want) in &cases {
        let got = ctj_sp_gradings(&RootSystem::new(t)).map_err(|e| format!("{t}: {e}"))?.len();
        ensure(got == want, || format!("{t}: {got} gradings, expected {want}"))?;
    }
    Ok(format!("{} types", cases.len()))
}

fn criterion_5() -> Outcome {
    let rs = RootSystem::new(ty("E6"));
    let theta = theta_constant(&rs, 0).map_err(|e| e.to_string())?;
    let five_quarters = Q::new(5, 4);
    ensure(theta.value == five_quarters, || format!("theta = {}", theta.value))?;
    ensure(theta.cartan_entry == -1 && theta.inverse_entry == Q::new(3, 4), || format!("{theta:?}"))?;
    let j = build_jordan(JordanKind::II(5)).map_err(|e| e.to_string())?;
    let tau = tau_from_trace(&j, theta.value).map_err(|e| e.to_string())?;
    let printed = TauClosedForm::HalfTraceXA.matrix(&j);
    let negated: Vec<Vec<Q>> = printed.iter().map(|r| r.iter().map(|v| -v).collect()).collect();
    if tau.m[PLUS] == printed {
        return Ok("theta = 5/4, tau = 1/2 tr(xa) entry by entry".into());
    }
    // evidence for the recorded conflict: the trace formula gives exactly
    // the opposite sign
    ensure(tau.m[PLUS] == negated, || "tau differs from the printed form by more than a sign".into())?;
    Err(format!("{CONFLICT}theta = 5/4 holds; the trace formula gives tau = -1/2 tr(xa) = 1/2 tr(x a^t), the printed 1/2 tr(xa) has the opposite sign"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let routes = [Route::Table, Route::General, Route::Oracle];
    let agree = |rs: &RootSystem, u: WeylElement, s: NodeSet, t: NodeSet| -> Result<(), String> {
        let images: Vec<_> = routes.iter().map(|&r| weyl_image_by(rs, r, u, s, t).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        ensure(images.windows(2).all(|w| w[0] == w[1]), || format!("{} {u} * ({s}, {t}): {images:?}", rs.ty))
    };
    let mut count = 0;
    for t in DiagramType::all_reduced(1, 6) {
        let rs = RootSystem::new(t);
        for (s, tt) in all_sp_pairs(&rs).map_err(|e| e.to_string())? {
            for u in WeylElement::ALL {
                agree(&rs, u, s, tt)?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in ["E7", "E8"] {
        let rs = RootSystem::new(ty(t));
        let pairs = all_sp_pairs(&rs).map_err(|e| e.to_string())?;
        for _ in 0..RANDOM_CASES {
            let (s, tt) = pairs[rng.gen_range(0..pairs.len())];
            agree(&rs, WeylElement::ALL[rng.gen_range(0..8)], s, tt)?;
            count += 1;
        }
    }
    within(LIMIT_6, start)?;
    Ok(format!("{count} cases in {:.1?}", start.elapsed()))
}

/// Extracted pair of `rho` checked against root counting. Returns whether
/// the identity check was exhaustive.
fn chevalley_case(alg: &ChevalleyAlgebra, rho: &RootHom, want: PairParameters, what: &str) -> Result<bool, String> {
    let g = grade(alg, rho).map_err(|e| format!("{what}: {e}"))?;
    let p = extract_pair(&g).map_err(|e| format!("{what}: {e}"))?;
    let report = p.check_kantor_identities(CheckMode::Auto { seed: SEED });
    ensure(report.passed(), || format!("{what}: {:?}", report.violation))?;
    let got = p.params().map_err(|e| format!("{what}: {e}"))?;
    ensure(got == want, || format!("{what}: Chevalley {got:?}, root count {want:?}"))?;
    Ok(report.exhaustive)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let (mut cases, mut exhaustive) = (0, 0);
    for t in DiagramType::all_reduced(1, 6) {
        let rs = RootSystem::new(t);
        let n = rs.rank();
        // the reversed extraspecial order gives different signs; rerun the
        // smaller types with it
        let orders: &[RootOrder] = if n <= 4 { &[RootOrder::Lex, RootOrder::Reversed] } else { &[RootOrder::Lex] };
        for &order in orders {
            let alg = ChevalleyAlgebra::new(&rs, order).map_err(|e| e.to_string())?;
            for e in enumerate_ka(&rs).map_err(|e| e.to_string())? {
                let s = e.rep.s;
                exhaustive += chevalley_case(&alg, &RootHom::chi(s, n), params(&rs, s, None), &e.label)? as usize;
                cases += 1;
            }
            for e in enumerate_sp(&rs, false).map_err(|e| e.to_string())? {
                let (s, tt) = (e.rep.s, e.rep.t.unwrap());
                exhaustive += chevalley_case(&alg, &RootHom::chi_pair(s, tt, n), params(&rs, s, Some(tt)), &e.label)? as usize;
                cases += 1;
            }
        }
    }
    within(LIMIT_7, start)?;
    Ok(format!("{cases} representatives ({exhaustive} exhaustive) in {:.1?}", start.elapsed()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut parts = 0;
    for t in ["B2", "C3", "A3", "D4", "E6"] {
        let rs = RootSystem::new(ty(t));
        let alg = ChevalleyAlgebra::new(&rs, RootOrder::Lex).map_err(|e| e.to_string())?;
        let om = Omega::build(&alg).map_err(|e| format!("{t}: {e}"))?;
        let rep = omega_lemma_checks(&om).map_err(|e| format!("{t}: {e}"))?;
        for want in ["(iii)", "(iv)", "(v)", "(vi)", "(vii)", "(viii)"] {
            ensure(rep.parts.iter().any(|(name, _)| name.split_whitespace().next() == Some(want)), || format!("{t}: part {want} not checked"))?;
        }
        parts += rep.parts.len();
        let f = ctj_fkts_check(&om, SEED).map_err(|e| format!("{t}: {e}"))?;
        ensure(f.passed(), || format!("{t}: {f:?}"))?;
    }
    within(LIMIT_8, start)?;
    Ok(format!("5 models, {parts} lemma parts, skew forms non-degenerate"))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let rows = table1_rows();
    for row in &rows {
        let r = verify_row(row, SEED).map_err(|e| format!("{}: {e}", row.ty))?;
        if row.ty == ty("E7") {
            ensure(!r.identities.exhaustive, || "E7 identities should be sampled".into())?;
        }
        ensure(r.passed(), || format!("{}: {r:?}", row.ty))?;
    }
    for (n, t) in [(3, 2), (5, 3)] {
        let r = verify_excluded(n, t, SEED).map_err(|e| format!("A{n}: {e}"))?;
        ensure(r.passed(), || format!("A{n} t = {t}: {r:?}"))?;
    }
    within(LIMIT_9, start)?;
    Ok(format!("{} rows and 2 excluded cases", rows.len()))
}

fn criterion_10() -> Outcome {
    let out = cli(&["verify", "--suite", "all", "--seed", &SEED.to_string()]);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let failed: Vec<String> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| format!("{} {}: {}", c["type"], c["name"], c["detail"]))
        .collect();
    ensure(out.code == 0 && failed.is_empty(), || failed.join("; "))?;
    let names: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    for want in ["antisymmetry and Jacobi", "five-grading", "value lemma", "support lemma", "positivize", "dihedral"] {
        ensure(names.iter().any(|n| n.contains(want)), || format!("no `{want}` check"))?;
    }
    Ok(format!("{} checks", report["total"]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "E6 Kantor classification", criterion_1),
        (2, "E6 SP classification", criterion_2),
        (3, "E6 Weyl images", criterion_3),
        (4, "close-to-Jordan grading counts", criterion_4),
        (5, "E6 theta and tau", criterion_5),
        (6, "three Weyl-image routes agree", criterion_6),
        (7, "Chevalley oracle", criterion_7),
        (8, "omega and skew form", criterion_8),
        (9, "reflection table", criterion_9),
        (10, "verify --suite all", criterion_10),
    ];
    // `cargo test -- <filter>` passes a filter; only numbers are understood
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (k, name, run) in criteria {
        if !only.is_empty() && !only.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("PASS criterion {k:>2}: {name}: {detail} [{took:.2?}]"),
            Err(why) => {
                let known = KNOWN_CONFLICTS.contains(&k) && why.starts_with(CONFLICT);
                println!("FAIL criterion {k:>2}: {name}: {why} [{took:.2?}]");
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected > 0 {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
