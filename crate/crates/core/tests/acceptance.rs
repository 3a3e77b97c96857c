//! Acceptance criteria. Each test writes one `AC<n>: PASS|FAIL` line to stderr.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::SeedableRng;

use hopfcheck::catalog;
use hopfcheck::check::Check;
use hopfcheck::double::DoublePackage;
use hopfcheck::format;
use hopfcheck::hopf::HopfAlgebra;
use hopfcheck::report::{CheckReport, SCHEMA};
use hopfcheck::suites::{self, Options, Suite};
use hopfcheck::Scalar;

const SMALL: [&str; 4] = ["trivial", "group:Z/2", "group:Z/3", "sweedler"];

/// Written past the test harness capture so the line shows up in plain `cargo test`.
fn report_line(ac: u32, problems: &[String], start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    let mut problems = problems.to_vec();
    if elapsed > limit {
        problems.push(format!("took {elapsed:?}, limit {limit:?}"));
    }
    let line = if problems.is_empty() {
        format!("AC{ac}: PASS ({} ms)\n", elapsed.as_millis())
    } else {
        format!("AC{ac}: FAIL: {}\n", problems.join("; "))
    };
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(problems.is_empty(), "{line}");
}

fn suite_problems(suite: Suite, names: &[&str], required: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    for name in names {
        let a = catalog::build(name).unwrap();
        match suites::run(suite, &a, Options::default()) {
            Ok(r) => out.extend(report_problems(&r, required)),
            Err(e) => out.push(format!("{} on {name}: {e}", suite.name())),
        }
    }
    out
}

fn report_problems(r: &CheckReport, required: &[&str]) -> Vec<String> {
    let mut out: Vec<String> =
        r.failed().map(|c| format!("{} on {}: {} {}", r.suite, r.algebra, c.name, c.witness.as_deref().unwrap_or(""))).collect();
    for name in required {
        if !r.checks.iter().any(|c| c.name == *name) {
            out.push(format!("{} on {}: no `{name}` check", r.suite, r.algebra));
        }
    }
    out
}

fn with_taft3() -> Vec<&'static str> {
    SMALL.iter().copied().chain(["taft:3"]).collect()
}

#[test]
fn ac1_hopf_axioms() {
    let start = Instant::now();
    let p = suite_problems(Suite::Hopf, catalog::NAMES, &["antipode_left", "dual_hopf", "dual_dual", "op_op"]);
    report_line(1, &p, start, Duration::from_secs(5));
}

#[test]
fn ac2_pairing() {
    let start = Instant::now();
    let p = suite_problems(Suite::Pairing, &with_taft3(), &["pairing_bidual"]);
    report_line(2, &p, start, Duration::from_secs(5));
}

#[test]
fn ac3_double() {
    let start = Instant::now();
    let required = ["double_associativity", "double_unit", "double_coalgebra", "r_delta", "ybe", "r_inverse", "u_conjugation"];
    let p = suite_problems(Suite::Double, &with_taft3(), &required);
    report_line(3, &p, start, Duration::from_secs(15 * 60));
}

#[test]
fn ac4_tdual() {
    let start = Instant::now();
    let mut p = Vec::new();
    for name in SMALL {
        let pkg = DoublePackage::new(&catalog::build(name).unwrap()).unwrap();
        let checks = pkg.check_tdual().unwrap();
        p.extend(checks.iter().filter(|c| !c.passed).map(|c| format!("{name}: {}", c.name)));
        for want in ["tdual_comult", "tdual_antipode"] {
            if !checks.iter().any(|c| c.name == want) {
                p.push(format!("{name}: no `{want}` check"));
            }
        }
    }
    report_line(4, &p, start, Duration::from_secs(60));
}

#[test]
fn ac5_heisenberg() {
    let start = Instant::now();
    let required = [
        "heisenberg_associative",
        "rho_left_bijective",
        "iota_bijective",
        "iota_hom",
        "rho_right_is_rho_left_iota",
        "commutant_a",
        "commutant_dual",
    ];
    let p = suite_problems(Suite::Iota, &with_taft3(), &required);
    report_line(5, &p, start, Duration::from_secs(120));
}

#[test]
fn ac6_moment_maps() {
    let start = Instant::now();
    let required = ["mu_l_hom", "mu_r_abstract_hom", "mu_r_explicit_hom", "moment_maps_commute", "mu_r_explicit_oracle", "pullback"];
    let p = suite_problems(Suite::Moment, &SMALL, &required);
    report_line(6, &p, start, Duration::from_secs(5 * 60));
}

#[test]
fn ac7_reduction() {
    let start = Instant::now();
    let required = ["reduction_dimension", "product_well_defined", "reduction_associative", "phi_hom", "phi_bijective", "mu_r_matches_explicit"];
    let p = suite_problems(Suite::Reduction, &["group:Z/2", "sweedler"], &required);
    report_line(7, &p, start, Duration::from_secs(10 * 60));
}

#[test]
fn ac8_rtt() {
    let start = Instant::now();
    let required = [
        "heis_rel_theta",
        "heis_rel_omega",
        "heis_rel_mixed",
        "reflection_l",
        "theta_omega_inverse",
        "rtt_final",
        "reflection_lhat",
        "lhat_prime_reflection",
        "frt_discrepancy",
    ];
    let p = suite_problems(Suite::Rtt, &SMALL, &required);
    report_line(8, &p, start, Duration::from_secs(10 * 60));
}

/// Adds one to the structure constant at a dense position; positions run over
/// unit, counit, mult, comult and antipode in that order.
fn mutate(h: &mut HopfAlgebra, mut pos: usize) -> String {
    let n = h.dim();
    let one = Scalar::from_int(1);
    if pos < n {
        h.alg.unit[pos].add_assign_ref(&one);
        return format!("unit[{pos}]");
    }
    pos -= n;
    if pos < n {
        h.counit[pos].add_assign_ref(&one);
        return format!("counit[{pos}]");
    }
    pos -= n;
    if pos < n * n * n {
        let (ij, k) = (pos / n, pos % n);
        let terms = &mut h.alg.mult[ij];
        match terms.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, c)) => c.add_assign_ref(&one),
            None => terms.push((k, one)),
        }
        return format!("mult[{}, {}, {k}]", ij / n, ij % n);
    }
    pos -= n * n * n;
    if pos < n * n * n {
        let (i, j, k) = (pos / (n * n), pos / n % n, pos % n);
        let terms = &mut h.comult[i];
        match terms.iter_mut().find(|(jj, kk, _)| (*jj, *kk) == (j, k)) {
            Some((_, _, c)) => c.add_assign_ref(&one),
            None => terms.push((j, k, one)),
        }
        return format!("comult[{i}, {j}, {k}]");
    }
    pos -= n * n * n;
    let (i, j) = (pos / n, pos % n);
    let mut c = h.antipode.get(i, j).clone();
    c.add_assign_ref(&one);
    h.antipode.set(i, j, c);
    h.antipode_inv = h.antipode.inverse().ok();
    format!("antipode[{i}, {j}]")
}

fn detected(h: &HopfAlgebra) -> Option<Check> {
    [Suite::Hopf, Suite::Double, Suite::Iota].into_iter().find_map(|s| {
        suites::run(s, h, Options::default()).ok().and_then(|r| r.failed().find(|c| c.witness.is_some()).cloned())
    })
}

#[test]
fn ac9_mutation_sensitivity() {
    let start = Instant::now();
    let base = catalog::sweedler();
    let n = base.dim();
    let positions = 2 * n + 2 * n * n * n + n * n;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut p = Vec::new();
    for pos in sample(&mut rng, positions, 10) {
        let mut h = base.clone();
        let what = mutate(&mut h, pos);
        if detected(&h).is_none() {
            p.push(format!("{what} + 1 went undetected"));
        }
    }
    report_line(9, &p, start, Duration::from_secs(5 * 60));
}

fn hopfcheck(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hopfcheck")).args(args).output().expect("binary runs")
}

#[test]
fn ac10_cli_contract() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let mut p = Vec::new();

    for name in catalog::NAMES {
        let out = hopfcheck(&["catalog", "emit", name]);
        let first = String::from_utf8(out.stdout).unwrap();
        let again = format::emit(&format::load_str(&first).unwrap());
        if again != first {
            p.push(format!("{name}: emit/load/emit differs"));
        }
    }

    let bad_antipode = dir.path().join("bad.json");
    let mut file = format::to_file_hopf(&catalog::sweedler());
    file.antipode.as_mut().unwrap()[0].2 = "2".into();
    std::fs::write(&bad_antipode, serde_json::to_string(&file).unwrap()).unwrap();
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"name\": 3}").unwrap();
    let bad_path = bad_antipode.to_str().unwrap();
    let cases: [(&[&str], i32); 6] = [
        (&["check", "all", "catalog:trivial"], 0),
        (&["check", "double", "catalog:sweedler", "--report", "json"], 0),
        (&["validate", bad_path], 1),
        (&["validate", garbage.to_str().unwrap()], 2),
        (&["check", "hopf", "catalog:nope"], 2),
        (&["check", "nope", "catalog:trivial"], 2),
    ];
    for (args, want) in cases {
        let out = hopfcheck(args);
        if out.status.code() != Some(want) {
            p.push(format!("`{}` exited {:?}, expected {want}", args.join(" "), out.status.code()));
        }
    }
    if !String::from_utf8_lossy(&hopfcheck(&["validate", bad_path]).stdout).contains("FAIL  antipode") {
        p.push("corrupted antipode reported without an antipode witness".into());
    }

    let schema: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for args in [&["check", "double", "catalog:sweedler"][..], &["validate", bad_path], &["check", "rtt", "catalog:group:Z/2"]] {
        let out = hopfcheck(&[args, &["--report", "json"]].concat());
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        let errors: Vec<String> = validator.iter_errors(&report).map(|e| e.to_string()).collect();
        if !errors.is_empty() {
            p.push(format!("`{}` report breaks the schema: {}", args.join(" "), errors.join(", ")));
        }
    }
    report_line(10, &p, start, Duration::from_secs(10));
}
